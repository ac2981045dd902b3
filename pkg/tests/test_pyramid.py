import numpy as np
import pytest
from numpy.testing import assert_array_equal

from mtbalign import build_pyramid, downsample_half

from conftest import oracle_downsample


class TestDownsample:
    def test_constant_image_stays_constant(self):
        img = np.full((10, 8), 77, dtype=np.uint8)
        out = downsample_half(img)
        assert out.shape == (5, 4)
        assert_array_equal(out, np.full((5, 4), 77, np.uint8))

    def test_two_by_two_block_rounds_half_up(self):
        # round((0 + 0 + 255 + 255) / 4) = round(127.5) = 128
        img = np.array([[0, 0], [255, 255]], dtype=np.uint8)
        out = downsample_half(img)
        assert out.shape == (1, 1)
        assert out[0, 0] == 128
        assert oracle_downsample(img)[0, 0] == 128

    def test_dimension_halving(self):
        img = np.zeros((480, 640), dtype=np.uint8)
        assert downsample_half(img).shape == (240, 320)

    def test_odd_dimensions_drop_trailing(self):
        rng = np.random.RandomState(40)
        img = rng.randint(0, 256, size=(7, 9), dtype=np.uint8)
        out = downsample_half(img)
        assert out.shape == (3, 4)
        assert_array_equal(out, oracle_downsample(img))

    def test_matches_scalar_oracle(self):
        rng = np.random.RandomState(41)
        img = rng.randint(0, 256, size=(12, 18), dtype=np.uint8)
        assert_array_equal(downsample_half(img), oracle_downsample(img))

    def test_mean_preserved_within_one_gray_level(self):
        rng = np.random.RandomState(42)
        for _ in range(10):
            img = rng.randint(0, 256, size=(32, 48), dtype=np.uint8)
            out = downsample_half(img)
            assert abs(float(out.mean()) - float(img.mean())) <= 1.0

    def test_too_small_raises(self):
        with pytest.raises(ValueError):
            downsample_half(np.zeros((1, 5), dtype=np.uint8))


class TestBuildPyramid:
    def test_level_zero_is_input(self):
        rng = np.random.RandomState(43)
        img = rng.randint(0, 256, size=(64, 64), dtype=np.uint8)
        levels = build_pyramid(img, 3)
        assert levels[0] is img

    def test_requested_one_gives_identity(self):
        img = np.zeros((20, 20), dtype=np.uint8)
        levels = build_pyramid(img, 1)
        assert len(levels) == 1
        assert_array_equal(levels[0], img)

    def test_2560x1440_supports_six_levels(self):
        img = np.zeros((1440, 2560), dtype=np.uint8)
        levels = build_pyramid(img, 6)
        assert len(levels) == 6
        assert levels[-1].shape == (45, 80)

    def test_64x64_clamps_to_three_levels(self):
        img = np.zeros((64, 64), dtype=np.uint8)
        levels = build_pyramid(img, 6)
        assert len(levels) == 3
        assert levels[-1].shape == (16, 16)

    def test_monotone_strictly_smaller(self):
        rng = np.random.RandomState(44)
        img = rng.randint(0, 256, size=(130, 90), dtype=np.uint8)
        levels = build_pyramid(img, 4)
        for prev, cur in zip(levels, levels[1:]):
            assert cur.shape[0] < prev.shape[0]
            assert cur.shape[1] < prev.shape[1]
            assert cur.shape == (prev.shape[0] // 2, prev.shape[1] // 2)

    def test_deterministic(self):
        rng = np.random.RandomState(45)
        img = rng.randint(0, 256, size=(77, 53), dtype=np.uint8)
        a = build_pyramid(img, 3)
        b = build_pyramid(img.copy(), 3)
        for la, lb in zip(a, b):
            assert_array_equal(la, lb)

    def test_too_small_input_raises(self):
        with pytest.raises(ValueError):
            build_pyramid(np.zeros((15, 40), dtype=np.uint8), 2)

    def test_bad_level_count_raises(self):
        with pytest.raises(ValueError):
            build_pyramid(np.zeros((32, 32), dtype=np.uint8), 0)
