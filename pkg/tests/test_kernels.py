import numpy as np
import pytest

from mtbalign import kernels
from mtbalign.bitmap import Bitmap
from mtbalign.kernels import fallback


def _packed(rng, w, h):
    return Bitmap.from_bool(rng.rand(h, w) < 0.5, "packed").buf


def _cells(rng, w, h):
    return Bitmap.from_bool(rng.rand(h, w) < 0.5, "bytemap").buf


class TestEngineSelection:
    def test_known_engines(self):
        assert kernels.use("python") == "python"
        assert kernels.engine_name() == "python"
        assert kernels.use("auto") in ("native", "python")

    def test_unknown_engine_rejected(self):
        with pytest.raises(ValueError):
            kernels.use("gpu")

    def test_native_request_without_extension(self):
        if kernels.native_available():
            assert kernels.use("native") == "native"
        else:
            with pytest.raises(RuntimeError):
                kernels.use("native")

    def test_environment_variable_selects_engine(self):
        import os
        import subprocess
        import sys

        env = dict(os.environ, MTBALIGN_ENGINE="python")
        out = subprocess.run(
            [sys.executable, "-c",
             "from mtbalign.kernels import engine_name; print(engine_name())"],
            capture_output=True, text=True, env=env)
        assert out.returncode == 0
        assert out.stdout.strip() == "python"


@pytest.mark.skipif(not kernels.native_available(), reason="compiled kernels not built")
class TestNativeMatchesFallback:
    def test_count_ones(self):
        rng = np.random.RandomState(30)
        from mtbalign.kernels import _native
        for _ in range(20):
            w, h = int(rng.randint(1, 200)), int(rng.randint(1, 30))
            words = _packed(rng, w, h)
            cells = _cells(rng, w, h)
            assert _native.count_ones_packed(words) == fallback.count_ones_packed(words)
            assert _native.count_ones_bytemap(cells) == fallback.count_ones_bytemap(cells)

    def test_shifted_error_parity(self):
        rng = np.random.RandomState(31)
        from mtbalign.kernels import _native
        for _ in range(60):
            w, h = int(rng.randint(1, 150)), int(rng.randint(1, 25))
            args = [(rng.rand(h, w) < rng.rand()) for _ in range(4)]
            dx = int(rng.randint(-w - 70, w + 71))
            dy = int(rng.randint(-h - 3, h + 4))
            packed = [Bitmap.from_bool(m, "packed").buf for m in args]
            cells = [Bitmap.from_bool(m, "bytemap").buf for m in args]
            assert (_native.shifted_error_packed(*packed, dx, dy)
                    == fallback.shifted_error_packed(*packed, dx, dy))
            assert (_native.shifted_error_bytemap(*cells, dx, dy)
                    == fallback.shifted_error_bytemap(*cells, dx, dy))

    def test_word_boundary_shifts(self):
        rng = np.random.RandomState(32)
        from mtbalign.kernels import _native
        masks = [(rng.rand(9, 200) < 0.5) for _ in range(4)]
        packed = [Bitmap.from_bool(m, "packed").buf for m in masks]
        for dx in (-200, -129, -128, -127, -65, -64, -63, -1, 0, 1, 63, 64, 65, 127, 128, 129, 200):
            assert (_native.shifted_error_packed(*packed, dx, 0)
                    == fallback.shifted_error_packed(*packed, dx, 0)), dx
