"""Shift-offset search: per-level 9-candidate tests, coarse-to-fine
descent, and the exhaustive oracle.

The returned offset is the correction for the target image: translating
the target by it minimizes masked MTB disagreement against the
reference. Each pyramid level contributes one bit of the offset, so an
L-level search covers magnitudes up to 2^L - 1 in 9*L error tests (54
for the default 6 levels).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitmap import shifted_error
from .image import ShiftOffset
from .instrumentation import FIND_OFFSET_CALLS, counters
from .threshold import MtbPair

# Row-major scan of the (ddy, ddx) refinement neighborhood; the scan
# position doubles as the last tie-break key, making flat error surfaces
# (for example constant images) resolve deterministically to the base.
NEIGHBORHOOD = tuple((ddy, ddx) for ddy in (-1, 0, 1) for ddx in (-1, 0, 1))


@dataclass(frozen=True)
class LevelTrace:
    """Search record for one pyramid level (offsets at that level's scale)."""

    level: int
    candidates: list[tuple[ShiftOffset, int]]
    chosen: ShiftOffset
    accumulated: ShiftOffset


@dataclass(frozen=True)
class AlignmentResult:
    """Final level-0 offset plus the per-level candidate traces (deepest first)."""

    offset: ShiftOffset
    traces: list[LevelTrace]
    total_tests: int


def _check_pair_shapes(ref: MtbPair, tgt: MtbPair) -> None:
    if not ref.mtb.same_shape(tgt.mtb):
        raise ValueError(
            f"reference and target bitmaps differ in size: "
            f"{ref.mtb.width}x{ref.mtb.height} vs {tgt.mtb.width}x{tgt.mtb.height}"
        )


def search_level(ref: MtbPair, tgt: MtbPair, base: ShiftOffset) -> tuple[ShiftOffset, list[tuple[ShiftOffset, int]]]:
    """Test the 9 offsets base + {-1,0,1}^2 and pick the lowest error.

    Ties prefer the smaller refinement |ddx|+|ddy| from the base, then
    the earlier candidate in row-major (ddy, ddx) order.
    """
    _check_pair_shapes(ref, tgt)
    candidates: list[tuple[ShiftOffset, int]] = []
    best = None
    best_key = None
    for index, (ddy, ddx) in enumerate(NEIGHBORHOOD):
        offset = ShiftOffset(base.dx + ddx, base.dy + ddy)
        err = shifted_error(ref.mtb, ref.exclusion, tgt.mtb, tgt.exclusion, offset)
        candidates.append((offset, err))
        key = (err, abs(ddx) + abs(ddy), index)
        if best_key is None or key < best_key:
            best_key = key
            best = offset
    return best, candidates


def find_offset(ref_pairs: list[MtbPair], tgt_pairs: list[MtbPair]) -> AlignmentResult:
    """Coarse-to-fine descent over matching MTB pyramids (index 0 = full
    resolution), doubling the accumulated offset at each finer level."""
    if len(ref_pairs) != len(tgt_pairs):
        raise ValueError("pyramids must have the same level count")
    if not ref_pairs:
        raise ValueError("pyramids must have at least one level")
    for r, t in zip(ref_pairs, tgt_pairs):
        _check_pair_shapes(r, t)
    counters.bump(FIND_OFFSET_CALLS)

    accumulated = ShiftOffset(0, 0)
    traces: list[LevelTrace] = []
    tests = 0
    for level in reversed(range(len(ref_pairs))):
        base = accumulated.scaled(2)
        chosen, candidates = search_level(ref_pairs[level], tgt_pairs[level], base)
        tests += len(candidates)
        accumulated = chosen
        traces.append(LevelTrace(level=level, candidates=candidates,
                                 chosen=chosen, accumulated=accumulated))
    return AlignmentResult(offset=accumulated, traces=traces, total_tests=tests)


def brute_force_offset(ref: MtbPair, tgt: MtbPair, max_radius: int) -> tuple[ShiftOffset, int]:
    """Exhaustive (2r+1)^2 search, the verification oracle for find_offset.

    Uses the same tie-break rule as the level search with deviations
    measured from (0, 0).
    """
    _check_pair_shapes(ref, tgt)
    if max_radius < 0:
        raise ValueError("max_radius must be nonnegative")
    best = None
    best_key = None
    index = 0
    for dy in range(-max_radius, max_radius + 1):
        for dx in range(-max_radius, max_radius + 1):
            offset = ShiftOffset(dx, dy)
            err = shifted_error(ref.mtb, ref.exclusion, tgt.mtb, tgt.exclusion, offset)
            key = (err, abs(dx) + abs(dy), index)
            if best_key is None or key < best_key:
                best_key = key
                best = (offset, err)
            index += 1
    return best
