"""Multi-level grayscale pyramids built by repeated 2x box downsampling."""

from __future__ import annotations

import numpy as np

from .image import validate_gray
from .instrumentation import PYRAMID_BUILDS, counters

DEFAULT_LEVELS = 6

# Below this size per side the median statistics are too noisy to vote on
# a shift bit, so pyramid construction stops rather than failing.
MIN_LEVEL_SIZE = 16


def downsample_half(img: np.ndarray) -> np.ndarray:
    """Halve both dimensions by averaging aligned 2x2 blocks.

    Linear interpolation at exact 2x decimation with half-pixel-centered
    sampling reduces to this box average. The sum is rounded half-up
    ((s + 2) >> 2) for cross-platform determinism; a trailing odd row or
    column is dropped.
    """
    validate_gray(img)
    h, w = img.shape
    if h < 2 or w < 2:
        raise ValueError(f"cannot downsample a {w}x{h} image; need at least 2x2")
    h2, w2 = h // 2, w // 2
    a = img[: h2 * 2, : w2 * 2].astype(np.uint16)
    s = a[0::2, 0::2] + a[0::2, 1::2] + a[1::2, 0::2] + a[1::2, 1::2]
    return ((s + 2) >> 2).astype(np.uint8)


def max_levels(width: int, height: int) -> int:
    """Largest level count keeping every level at least 16x16."""
    n = 0
    while width >= MIN_LEVEL_SIZE and height >= MIN_LEVEL_SIZE:
        n += 1
        width //= 2
        height //= 2
    return n


def build_pyramid(img: np.ndarray, requested_levels: int = DEFAULT_LEVELS) -> list[np.ndarray]:
    """Build a halving pyramid; level 0 is the input array unmodified.

    The level count is min(requested_levels, levels keeping every level
    at least 16x16).
    """
    validate_gray(img)
    if requested_levels < 1:
        raise ValueError("requested_levels must be at least 1")
    h, w = img.shape
    if w < MIN_LEVEL_SIZE or h < MIN_LEVEL_SIZE:
        raise ValueError(f"image must be at least 16x16 to build a pyramid, got {w}x{h}")
    counters.bump(PYRAMID_BUILDS)
    n = min(requested_levels, max_levels(w, h))
    levels = [img]
    for _ in range(n - 1):
        levels.append(downsample_half(levels[-1]))
    return levels
