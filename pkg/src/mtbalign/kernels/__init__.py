"""Kernel engine selection.

Two interchangeable engines provide the hot alignment-error kernels: a
Cython extension (built at install time) and a pure numpy fallback. The
active engine is chosen at import from the MTBALIGN_ENGINE environment
variable ("auto", "native" or "python", default "auto") and can be
switched at runtime with use().
"""

from __future__ import annotations

import os

from . import fallback

ENGINES = ("auto", "native", "python")

try:
    from . import _native
except ImportError:
    _native = None


def _resolve(name: str):
    if name == "python":
        return fallback, "python"
    if name == "native":
        if _native is None:
            raise RuntimeError(
                "native kernel engine requested but the compiled extension is "
                "not available; reinstall the package or use the python engine"
            )
        return _native, "native"
    if name == "auto":
        if _native is not None:
            return _native, "native"
        return fallback, "python"
    raise ValueError(f"unknown kernel engine {name!r}; expected one of {ENGINES}")


_active, _active_name = _resolve(os.environ.get("MTBALIGN_ENGINE", "auto").strip().lower() or "auto")


def use(name: str) -> str:
    """Select the active kernel engine; returns the resolved engine name."""
    global _active, _active_name
    _active, _active_name = _resolve(name)
    return _active_name


def active():
    """The module providing the currently selected kernels."""
    return _active


def engine_name() -> str:
    return _active_name


def native_available() -> bool:
    return _native is not None
