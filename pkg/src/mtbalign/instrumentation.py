"""Global operation counters used to verify work-reuse guarantees in tests."""

from __future__ import annotations

import threading
from collections import Counter


class Counters:
    """Thread-safe named counters; increments may come from worker threads."""

    def __init__(self):
        self._lock = threading.Lock()
        self._counts = Counter()

    def bump(self, name: str, amount: int = 1) -> None:
        with self._lock:
            self._counts[name] += amount

    def get(self, name: str) -> int:
        with self._lock:
            return self._counts[name]

    def snapshot(self) -> dict:
        with self._lock:
            return dict(self._counts)

    def reset(self) -> None:
        with self._lock:
            self._counts.clear()


counters = Counters()

SHIFTED_ERROR_EVALS = "shifted_error_evals"
PYRAMID_BUILDS = "pyramid_builds"
MTB_PYRAMID_BUILDS = "mtb_pyramid_builds"
FIND_OFFSET_CALLS = "find_offset_calls"
