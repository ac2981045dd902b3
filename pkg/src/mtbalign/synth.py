"""Synthetic misaligned exposure stacks with known ground truth.

Each generated image is the base photograph displaced by a known amount
and passed through a monotonic gain/gamma tone curve simulating an
exposure change. The manifest records, for every image, the offset the
aligner is expected to report: the correction that maps the image back
onto image 0. Internally the image content is therefore displaced by
the negated cumulative offset.
"""

from __future__ import annotations

import numpy as np

from .image import ShiftOffset, shift_rgb, validate_rgb

MIN_OVERLAP = 0.75

GAIN_RANGE = (0.5, 2.0)
GAMMA_RANGE = (0.7, 1.4)

MIN_BASE_SIZE = 64


def tone_lut(gain: float, gamma: float) -> np.ndarray:
    """256-entry exposure curve: clamp(round(255 * (gain * v/255)^(1/gamma)))."""
    v = np.arange(256, dtype=np.float64) / 255.0
    out = np.round(255.0 * np.power(gain * v, 1.0 / gamma))
    return np.clip(out, 0, 255).astype(np.uint8)


def apply_tone(img: np.ndarray, gain: float, gamma: float) -> np.ndarray:
    return np.take(tone_lut(gain, gamma), img)


def _check_overlap(offset: ShiftOffset, width: int, height: int) -> None:
    remaining = (width - abs(offset.dx)) * (height - abs(offset.dy))
    if abs(offset.dx) >= width or abs(offset.dy) >= height or remaining < MIN_OVERLAP * width * height:
        raise ValueError(
            f"offset ({offset.dx}, {offset.dy}) leaves less than "
            f"{MIN_OVERLAP:.0%} overlap on a {width}x{height} base"
        )


def generate_stack(base: np.ndarray, count: int,
                   pairwise: list[ShiftOffset] | None = None,
                   seed: int = 0, max_shift: int = 16,
                   gains: list[float] | None = None,
                   gammas: list[float] | None = None) -> tuple[list[np.ndarray], dict]:
    """Build a misaligned stack of `count` exposures from one base image.

    When pairwise offsets are not given, they are drawn uniformly from
    [-max_shift, max_shift] per axis using the seed, which also drives
    the per-image gain and gamma draws. Returns the images and a
    manifest dict whose pairwise/cumulative entries are the offsets an
    aligner should recover.
    """
    validate_rgb(base)
    h, w = base.shape[:2]
    if w < MIN_BASE_SIZE or h < MIN_BASE_SIZE:
        raise ValueError(f"base image must be at least {MIN_BASE_SIZE}x{MIN_BASE_SIZE}, got {w}x{h}")
    if count < 2:
        raise ValueError("count must be at least 2")

    rng = np.random.default_rng(seed)
    if pairwise is None:
        pairwise = [
            ShiftOffset(int(rng.integers(-max_shift, max_shift + 1)),
                        int(rng.integers(-max_shift, max_shift + 1)))
            for _ in range(count - 1)
        ]
    else:
        pairwise = [ShiftOffset(int(o[0]), int(o[1])) for o in pairwise]
        if len(pairwise) != count - 1:
            raise ValueError(f"expected {count - 1} pairwise offsets, got {len(pairwise)}")
    if gains is None:
        gains = [float(rng.uniform(*GAIN_RANGE)) for _ in range(count)]
    if gammas is None:
        gammas = [float(rng.uniform(*GAMMA_RANGE)) for _ in range(count)]
    if len(gains) != count or len(gammas) != count:
        raise ValueError("gains and gammas must have one entry per image")

    cumulative = [ShiftOffset(0, 0)]
    for off in pairwise:
        cumulative.append(cumulative[-1] + off)
    for cum in cumulative:
        _check_overlap(cum, w, h)

    images = []
    for i in range(count):
        displaced = shift_rgb(base, -cumulative[i]) if i else base
        images.append(apply_tone(displaced, gains[i], gammas[i]))

    manifest = {
        "count": count,
        "seed": seed,
        "max_shift": max_shift,
        "pairwise": [[o.dx, o.dy] for o in pairwise],
        "cumulative": [[o.dx, o.dy] for o in cumulative],
        "gains": gains,
        "gammas": gammas,
    }
    return images, manifest
