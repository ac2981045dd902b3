"""Binary rasters with two physical layouts and the fused error kernel.

The byte-map layout stores one uint8 cell per pixel (0 or 255), trading
memory for conversion-free access; the word-packed layout stores one bit
per pixel inside uint64 words (LSB-first, rows zero-padded to a whole
word count), enabling word-wide logic and population counts. Both
layouts are logically interchangeable and every operation returns
identical results on identical logical content.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .image import ShiftOffset
from .instrumentation import SHIFTED_ERROR_EVALS, counters

BYTEMAP = "bytemap"
PACKED = "packed"
LAYOUTS = (BYTEMAP, PACKED)

_WORD_BITS = 64


def _check_layout(layout: str) -> str:
    if layout not in LAYOUTS:
        raise ValueError(f"unknown bitmap layout {layout!r}; expected one of {LAYOUTS}")
    return layout


def _pack_rows(mask: np.ndarray) -> np.ndarray:
    """Pack a boolean (H, W) mask into LSB-first uint64 row words."""
    h, w = mask.shape
    nwords = (w + _WORD_BITS - 1) // _WORD_BITS
    rowbytes = np.packbits(mask, axis=1, bitorder="little")
    buf = np.zeros((h, nwords * 8), dtype=np.uint8)
    buf[:, : rowbytes.shape[1]] = rowbytes
    # Little-endian hosts only: byte k of a word holds bits 8k..8k+7.
    return buf.view(np.uint64)


def _unpack_rows(words: np.ndarray, width: int) -> np.ndarray:
    bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :width].astype(bool)


class Bitmap:
    """Immutable binary raster; construct via from_bool."""

    __slots__ = ("width", "height", "layout", "buf")

    def __init__(self, width: int, height: int, layout: str, buf: np.ndarray):
        self.width = width
        self.height = height
        self.layout = layout
        self.buf = buf

    @classmethod
    def from_bool(cls, mask: np.ndarray, layout: str = PACKED) -> "Bitmap":
        """Build a bitmap from per-pixel truth values (any nonzero is true)."""
        _check_layout(layout)
        if mask.ndim != 2:
            raise ValueError(f"expected a (H, W) mask, got shape {mask.shape}")
        mask = mask.astype(bool)
        h, w = mask.shape
        if layout == BYTEMAP:
            buf = np.where(mask, np.uint8(255), np.uint8(0))
        else:
            buf = _pack_rows(mask)
        buf.setflags(write=False)
        return cls(w, h, layout, buf)

    def get(self, x: int, y: int) -> bool:
        """Logical pixel value; coordinates must be in bounds."""
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel ({x}, {y}) outside {self.width}x{self.height} bitmap")
        if self.layout == BYTEMAP:
            return bool(self.buf[y, x])
        word = self.buf[y, x >> 6]
        return bool((word >> np.uint64(x & 63)) & np.uint64(1))

    def count_ones(self) -> int:
        """Number of set pixels; packed padding bits are never counted."""
        if self.layout == BYTEMAP:
            return kernels.active().count_ones_bytemap(self.buf)
        return kernels.active().count_ones_packed(self.buf)

    def to_bool(self) -> np.ndarray:
        """Logical content as a boolean (H, W) array."""
        if self.layout == BYTEMAP:
            return self.buf != 0
        return _unpack_rows(self.buf, self.width)

    def same_shape(self, other: "Bitmap") -> bool:
        return self.width == other.width and self.height == other.height

    def __repr__(self):
        return f"Bitmap({self.width}x{self.height}, {self.layout})"


def shifted_error(mtb_a: Bitmap, eb_a: Bitmap, mtb_b: Bitmap, eb_b: Bitmap,
                  offset: ShiftOffset) -> int:
    """Alignment error of b against a for one candidate offset.

    Counts pixels where mtb_a disagrees with mtb_b translated by offset,
    keeping only pixels marked reliable in both exclusion maps. Reads of
    the translated image that fall outside its bounds contribute nothing,
    so only the overlap region is scored. Equivalent to
    shift-then-XOR-then-AND-then-count, fused into one pass.
    """
    maps = (mtb_a, eb_a, mtb_b, eb_b)
    for m in maps[1:]:
        if not mtb_a.same_shape(m):
            raise ValueError("all four bitmaps must share dimensions")
        if m.layout != mtb_a.layout:
            raise ValueError("all four bitmaps must share the same layout")
    counters.bump(SHIFTED_ERROR_EVALS)
    dx, dy = int(offset[0]), int(offset[1])
    impl = kernels.active()
    if mtb_a.layout == BYTEMAP:
        return impl.shifted_error_bytemap(mtb_a.buf, eb_a.buf, mtb_b.buf, eb_b.buf, dx, dy)
    return impl.shifted_error_packed(mtb_a.buf, eb_a.buf, mtb_b.buf, eb_b.buf, dx, dy)
