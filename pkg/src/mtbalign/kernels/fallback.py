"""Vectorized numpy implementations of the alignment-error kernels.

These mirror the compiled kernels in _native.pyx exactly; either engine
must produce identical counts for identical inputs. Byte-map buffers are
uint8 arrays holding 0 or 255 per pixel; packed buffers are uint64 arrays
with one bit per pixel, LSB-first within each word, rows padded with zero
bits to a whole number of words.
"""

from __future__ import annotations

import numpy as np


def count_ones_bytemap(cells: np.ndarray) -> int:
    return int(np.count_nonzero(cells))


def count_ones_packed(words: np.ndarray) -> int:
    # Padding bits are zero by construction, so every set bit is a pixel.
    return int(np.bitwise_count(words).sum())


def _shift_rows_packed(rows: np.ndarray, dx: int) -> np.ndarray:
    """Shift every packed row by dx bit positions, filling with zero bits.

    Positive dx moves content toward higher pixel indices, which is a left
    shift of the LSB-first words with carries across word boundaries.
    """
    nwords = rows.shape[1]
    out = np.zeros_like(rows)
    if dx >= 0:
        q, r = divmod(dx, 64)
        if q >= nwords:
            return out
        if r == 0:
            out[:, q:] = rows[:, : nwords - q]
        else:
            out[:, q:] = rows[:, : nwords - q] << np.uint64(r)
            out[:, q + 1 :] |= rows[:, : nwords - q - 1] >> np.uint64(64 - r)
    else:
        q, r = divmod(-dx, 64)
        if q >= nwords:
            return out
        if r == 0:
            out[:, : nwords - q] = rows[:, q:]
        else:
            out[:, : nwords - q] = rows[:, q:] >> np.uint64(r)
            out[:, : nwords - q - 1] |= rows[:, q + 1 :] << np.uint64(64 - r)
    return out


def shifted_error_bytemap(a, ea, b, eb, dx: int, dy: int) -> int:
    """Count pixels where a and shift(b, offset) disagree, masked by both
    exclusion maps; out-of-bounds reads of the shifted image are excluded."""
    h, w = a.shape
    x0, x1 = max(dx, 0), w + min(dx, 0)
    y0, y1 = max(dy, 0), h + min(dy, 0)
    if x1 <= x0 or y1 <= y0:
        return 0
    diff = a[y0:y1, x0:x1] ^ b[y0 - dy : y1 - dy, x0 - dx : x1 - dx]
    diff &= ea[y0:y1, x0:x1]
    diff &= eb[y0 - dy : y1 - dy, x0 - dx : x1 - dx]
    return int(np.count_nonzero(diff))


def shifted_error_packed(a, ea, b, eb, dx: int, dy: int) -> int:
    """Packed-layout twin of shifted_error_bytemap.

    Vacated bits shifted into eb are zero, and the padding bits of ea are
    zero, so a single fused mask-and-popcount over the row overlap scores
    exactly the in-bounds pixels.
    """
    h = a.shape[0]
    y0, y1 = max(dy, 0), h + min(dy, 0)
    if y1 <= y0:
        return 0
    bs = _shift_rows_packed(b[y0 - dy : y1 - dy], dx)
    ebs = _shift_rows_packed(eb[y0 - dy : y1 - dy], dx)
    diff = (a[y0:y1] ^ bs) & ea[y0:y1] & ebs
    return int(np.bitwise_count(diff).sum())
