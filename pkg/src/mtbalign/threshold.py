"""Histograms, medians, and MTB / exclusion bitmap construction.

The median threshold bitmap (MTB) marks pixels strictly above the image
median; because any exposure change is monotonic in luminance, the MTB
is invariant across exposures and is the comparison currency for
alignment. The exclusion bitmap marks pixels far enough from the median
to be reliable: a set bit means the pixel participates in error tests.
Note the reliability polarity: bits near the median are cleared so that
ANDing removes the noisy median-crossing pixels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitmap import PACKED, Bitmap
from .image import validate_gray
from .instrumentation import MTB_PYRAMID_BUILDS, counters

DEFAULT_NOISE_TOLERANCE = 4


def histogram(img: np.ndarray) -> np.ndarray:
    """256-bin histogram of an 8-bit image; bins sum to the pixel count."""
    validate_gray(img)
    return np.bincount(img.ravel(), minlength=256).astype(np.int64)


def median_from_histogram(hist: np.ndarray) -> int:
    """Lower median: the smallest value whose cumulative count reaches
    ceil(total / 2)."""
    total = int(hist.sum())
    if total < 1:
        raise ValueError("cannot take the median of an empty histogram")
    target = (total + 1) // 2
    cum = np.cumsum(hist)
    return int(np.searchsorted(cum, target, side="left"))


def make_mtb(img: np.ndarray, median: int, layout: str = PACKED) -> Bitmap:
    """Median threshold bitmap: 1 where pixel > median, else 0."""
    validate_gray(img)
    return Bitmap.from_bool(img > median, layout)


def make_exclusion(img: np.ndarray, median: int, tol: int = DEFAULT_NOISE_TOLERANCE,
                   layout: str = PACKED) -> Bitmap:
    """Reliability mask: 1 where |pixel - median| > tol, else 0.

    Computed in widened integers so values near 0 or 255 cannot wrap.
    """
    validate_gray(img)
    delta = np.abs(img.astype(np.int16) - int(median))
    return Bitmap.from_bool(delta > tol, layout)


@dataclass(frozen=True)
class MtbPair:
    """MTB and exclusion bitmap of one image at one pyramid level."""

    mtb: Bitmap
    exclusion: Bitmap
    median: int
    noise_tolerance: int


def make_mtb_pair(img: np.ndarray, tol: int = DEFAULT_NOISE_TOLERANCE,
                  layout: str = PACKED) -> MtbPair:
    med = median_from_histogram(histogram(img))
    return MtbPair(
        mtb=make_mtb(img, med, layout),
        exclusion=make_exclusion(img, med, tol, layout),
        median=med,
        noise_tolerance=tol,
    )


def build_mtb_pyramid(levels: list[np.ndarray], tol: int = DEFAULT_NOISE_TOLERANCE,
                      layout: str = PACKED) -> list[MtbPair]:
    """One MtbPair per pyramid level, each from that level's own median.

    Medians are recomputed per level because downsampling shifts the
    intensity distribution.
    """
    counters.bump(MTB_PYRAMID_BUILDS)
    return [make_mtb_pair(level, tol, layout) for level in levels]
