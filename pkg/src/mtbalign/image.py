"""Raster types and whole-image integer shifting.

Images are numpy arrays of dtype uint8: RGB rasters have shape (height,
width, 3) with interleaved channels, grayscale rasters have shape
(height, width). A ShiftOffset of (dx, dy) moves content right by dx and
down by dy; vacated pixels take the fill value.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# Integer BT.601-style weights; they sum to 256 so white maps to 255 and
# the conversion is exact on every platform.
GRAY_WEIGHT_R = 54
GRAY_WEIGHT_G = 183
GRAY_WEIGHT_B = 19


class ShiftOffset(NamedTuple):
    """Signed whole-pixel translation: positive dx right, positive dy down."""

    dx: int
    dy: int

    def __neg__(self) -> "ShiftOffset":
        return ShiftOffset(-self.dx, -self.dy)

    def __add__(self, other) -> "ShiftOffset":
        return ShiftOffset(self.dx + other[0], self.dy + other[1])

    def scaled(self, factor: int) -> "ShiftOffset":
        return ShiftOffset(self.dx * factor, self.dy * factor)


def validate_rgb(img: np.ndarray) -> np.ndarray:
    if not isinstance(img, np.ndarray) or img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) RGB array, got shape {getattr(img, 'shape', None)}")
    if img.dtype != np.uint8:
        raise ValueError(f"expected uint8 RGB samples, got {img.dtype}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError("image dimensions must be at least 1x1")
    return img


def validate_gray(img: np.ndarray) -> np.ndarray:
    if not isinstance(img, np.ndarray) or img.ndim != 2:
        raise ValueError(f"expected (H, W) grayscale array, got shape {getattr(img, 'shape', None)}")
    if img.dtype != np.uint8:
        raise ValueError(f"expected uint8 luminance samples, got {img.dtype}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError("image dimensions must be at least 1x1")
    return img


def to_grayscale(img: np.ndarray) -> np.ndarray:
    """Convert an RGB raster to 8-bit luminance.

    Each output pixel is (54*R + 183*G + 19*B) / 256 with truncation. The
    weighted sum never exceeds 65280, so uint16 arithmetic is exact.
    """
    validate_rgb(img)
    acc = img[:, :, 0].astype(np.uint16) * GRAY_WEIGHT_R
    acc += img[:, :, 1].astype(np.uint16) * GRAY_WEIGHT_G
    acc += img[:, :, 2].astype(np.uint16) * GRAY_WEIGHT_B
    return (acc >> 8).astype(np.uint8)


def _overlap_slices(width: int, height: int, dx: int, dy: int):
    """Destination and source slices for a (dx, dy) shift, or None if empty."""
    x0, x1 = max(dx, 0), width + min(dx, 0)
    y0, y1 = max(dy, 0), height + min(dy, 0)
    if x1 <= x0 or y1 <= y0:
        return None
    dst = (slice(y0, y1), slice(x0, x1))
    src = (slice(y0 - dy, y1 - dy), slice(x0 - dx, x1 - dx))
    return dst, src


def shift_rgb(img: np.ndarray, offset: ShiftOffset, fill=(0, 0, 0)) -> np.ndarray:
    """Translate an RGB raster by a whole-pixel offset, filling vacated pixels."""
    validate_rgb(img)
    h, w = img.shape[:2]
    dx, dy = int(offset[0]), int(offset[1])
    out = np.empty_like(img)
    out[:, :] = np.asarray(fill, dtype=np.uint8)
    slices = _overlap_slices(w, h, dx, dy)
    if slices is not None:
        dst, src = slices
        out[dst] = img[src]
    return out


def shift_gray(img: np.ndarray, offset: ShiftOffset, fill: int = 0) -> np.ndarray:
    """Translate a grayscale raster by a whole-pixel offset."""
    validate_gray(img)
    h, w = img.shape
    dx, dy = int(offset[0]), int(offset[1])
    out = np.full((h, w), fill, dtype=np.uint8)
    slices = _overlap_slices(w, h, dx, dy)
    if slices is not None:
        dst, src = slices
        out[dst] = img[src]
    return out
