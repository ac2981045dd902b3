"""End-to-end stack alignment with per-stage timing.

Images are aligned in a chain: each image is registered against its
predecessor and the pairwise offsets are summed so every output is
re-based onto image 0. Per-image preprocessing (grayscale, pyramid,
thresholding) runs once per image, concurrently across images; the
cheap pairwise searches run sequentially in chain order.
"""

from __future__ import annotations

import os
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bitmap import PACKED
from .image import ShiftOffset, shift_rgb, to_grayscale, validate_rgb
from .pyramid import DEFAULT_LEVELS, MIN_LEVEL_SIZE, build_pyramid
from .search import AlignmentResult, find_offset
from .threshold import DEFAULT_NOISE_TOLERANCE, build_mtb_pyramid

STAGES = ("grayscale", "pyramid", "threshold", "search", "shift")


@dataclass(frozen=True)
class StackAlignment:
    """Offsets and timings for one aligned stack."""

    image_count: int
    pairwise: list[AlignmentResult]
    cumulative: list[ShiftOffset]
    timings: dict[str, float]


@dataclass(frozen=True)
class StageStats:
    mean_ms: float
    stddev_ms: float


@dataclass(frozen=True)
class TimingReport:
    repetitions: int
    stages: dict[str, StageStats]
    total: StageStats


def align_stack(images: list[np.ndarray], levels: int = DEFAULT_LEVELS,
                tol: int = DEFAULT_NOISE_TOLERANCE, layout: str = PACKED,
                workers: int | None = None) -> tuple[list[np.ndarray], StackAlignment]:
    """Align a bracketed stack onto its first image.

    Returns the aligned images (image 0 is passed through untouched) and
    the StackAlignment record. Results are identical for any worker
    count.
    """
    if len(images) < 2:
        raise ValueError(f"need at least 2 images to align, got {len(images)}")
    for img in images:
        validate_rgb(img)
    h, w = images[0].shape[:2]
    for i, img in enumerate(images[1:], start=1):
        if img.shape[:2] != (h, w):
            raise ValueError(
                f"image {i} is {img.shape[1]}x{img.shape[0]}, expected {w}x{h}"
            )
    if w < MIN_LEVEL_SIZE or h < MIN_LEVEL_SIZE:
        raise ValueError(f"images must be at least 16x16, got {w}x{h}")

    timings: dict[str, float] = {}
    # Pool setup is charged to the grayscale stage so the stage times sum
    # to the wall time of the call.
    t0 = time.perf_counter()
    pool = ThreadPoolExecutor(max_workers=workers if workers else (os.cpu_count() or 1))
    try:
        grays = list(pool.map(to_grayscale, images))
        t1 = time.perf_counter()
        pyramids = list(pool.map(lambda g: build_pyramid(g, levels), grays))
        t2 = time.perf_counter()
        mtb_pyramids = list(pool.map(lambda p: build_mtb_pyramid(p, tol, layout), pyramids))
        t3 = time.perf_counter()

        pairwise = [
            find_offset(mtb_pyramids[i], mtb_pyramids[i + 1])
            for i in range(len(images) - 1)
        ]
        cumulative = [ShiftOffset(0, 0)]
        for result in pairwise:
            cumulative.append(cumulative[-1] + result.offset)
        t4 = time.perf_counter()

        aligned = [images[0]]
        aligned.extend(
            pool.map(lambda args: shift_rgb(args[0], args[1]),
                     zip(images[1:], cumulative[1:]))
        )
        # Join the workers inside the shift window so every moment of the
        # call is attributed to some stage.
        pool.shutdown()
        t5 = time.perf_counter()
    finally:
        pool.shutdown(wait=False)

    timings["grayscale"] = (t1 - t0) * 1000.0
    timings["pyramid"] = (t2 - t1) * 1000.0
    timings["threshold"] = (t3 - t2) * 1000.0
    timings["search"] = (t4 - t3) * 1000.0
    timings["shift"] = (t5 - t4) * 1000.0

    record = StackAlignment(
        image_count=len(images),
        pairwise=pairwise,
        cumulative=cumulative,
        timings=timings,
    )
    return aligned, record


def measure_alignment(images: list[np.ndarray], repetitions: int = 10,
                      levels: int = DEFAULT_LEVELS, tol: int = DEFAULT_NOISE_TOLERANCE,
                      layout: str = PACKED, workers: int | None = None) -> TimingReport:
    """Repeatedly align in-memory images and report per-stage statistics.

    Disk I/O is deliberately outside the measured region; each repetition
    times one full align_stack call.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    stage_samples: dict[str, list[float]] = {name: [] for name in STAGES}
    totals: list[float] = []
    for _ in range(repetitions):
        start = time.perf_counter()
        _, record = align_stack(images, levels=levels, tol=tol, layout=layout, workers=workers)
        totals.append((time.perf_counter() - start) * 1000.0)
        for name in STAGES:
            stage_samples[name].append(record.timings[name])

    def stats(samples: list[float]) -> StageStats:
        mean = statistics.fmean(samples)
        stddev = statistics.stdev(samples) if len(samples) > 1 else 0.0
        return StageStats(mean_ms=mean, stddev_ms=stddev)

    return TimingReport(
        repetitions=repetitions,
        stages={name: stats(stage_samples[name]) for name in STAGES},
        total=stats(totals),
    )
