"""Shared fixtures and independent scalar oracles.

The oracles here deliberately use plain Python loops and sorting so they
share no code path with the library; tests freeze expected values
computed by them.
"""

import numpy as np
import pytest

from mtbalign import to_grayscale


def oracle_shifted_error(mtb_a, ea, mtb_b, eb, dx, dy):
    """Scalar shift-then-XOR-then-AND-then-count on boolean arrays."""
    h, w = mtb_a.shape
    count = 0
    for y in range(h):
        for x in range(w):
            sx, sy = x - dx, y - dy
            if 0 <= sx < w and 0 <= sy < h:
                if bool(mtb_a[y, x]) != bool(mtb_b[sy, sx]) and ea[y, x] and eb[sy, sx]:
                    count += 1
    return count


def oracle_count_ones(mask):
    total = 0
    for row in mask:
        for v in row:
            total += bool(v)
    return total


def oracle_median(values):
    """Lower median: value at index ceil(n/2) - 1 of the sorted samples."""
    ordered = sorted(values)
    return ordered[(len(ordered) + 1) // 2 - 1]


def oracle_grayscale_pixel(r, g, b):
    return (54 * r + 183 * g + 19 * b) // 256


def oracle_downsample(img):
    h, w = img.shape
    out = np.empty((h // 2, w // 2), dtype=np.uint8)
    for y in range(h // 2):
        for x in range(w // 2):
            s = (int(img[2 * y, 2 * x]) + int(img[2 * y, 2 * x + 1])
                 + int(img[2 * y + 1, 2 * x]) + int(img[2 * y + 1, 2 * x + 1]))
            out[y, x] = (s + 2) // 4
    return out


def bilinear_upscale(small, h, w):
    sh, sw = small.shape
    ys = np.linspace(0, sh - 1, h)
    xs = np.linspace(0, sw - 1, w)
    y0 = np.floor(ys).astype(int)
    x0 = np.floor(xs).astype(int)
    y1 = np.minimum(y0 + 1, sh - 1)
    x1 = np.minimum(x0 + 1, sw - 1)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    a = small[np.ix_(y0, x0)]
    b = small[np.ix_(y0, x1)]
    c = small[np.ix_(y1, x0)]
    d = small[np.ix_(y1, x1)]
    return a * (1 - fy) * (1 - fx) + b * (1 - fy) * fx + c * fy * (1 - fx) + d * fy * fx


def smooth_gray(rng, w, h, cells=8, detail=12.0):
    """Random image with coarse structure plus fine detail, like a photo."""
    coarse = bilinear_upscale(rng.uniform(0, 255, size=(cells, cells)), h, w)
    out = coarse + rng.normal(0, detail, size=(h, w))
    return np.clip(np.round(out), 0, 255).astype(np.uint8)


def random_monotone_curve(rng, occupied):
    """Tone curve strictly increasing on the occupied values, monotone
    elsewhere; models an arbitrary exposure change."""
    occupied = np.flatnonzero(occupied)
    targets = np.sort(rng.choice(256, size=occupied.size, replace=False))
    curve = np.zeros(256, dtype=np.uint8)
    prev_v, prev_t = 0, targets[0]
    for v, t in zip(occupied, targets):
        curve[prev_v:v + 1] = np.linspace(prev_t, t, v - prev_v + 1).astype(np.uint8)
        curve[v] = t
        prev_v, prev_t = v, t
    curve[prev_v:] = prev_t
    return curve


def normalize_median_luminance(img, target=110):
    """Rescale an RGB photo so its median luminance sits mid-range,
    keeping headroom for simulated exposure gains up to 2x."""
    med = float(np.median(to_grayscale(img)))
    scale = target / max(med, 1.0)
    return np.clip(np.round(img.astype(np.float64) * scale), 0, 255).astype(np.uint8)


@pytest.fixture(scope="session")
def photo_pool():
    """Scene photographs (512x512 RGB) with healthy contrast and midtone medians."""
    data = pytest.importorskip("skimage.data")
    sources = [
        data.astronaut(),
        np.stack([data.camera()] * 3, axis=-1),
        data.immunohistochemistry(),
    ]
    return [normalize_median_luminance(src) for src in sources]


def _default_engine():
    from mtbalign import kernels

    return kernels.engine_name()


_SESSION_ENGINE = _default_engine()


@pytest.fixture(autouse=True)
def _reset_engine_and_counters():
    from mtbalign import kernels
    from mtbalign.instrumentation import counters

    kernels.use(_SESSION_ENGINE)
    counters.reset()
    yield
    kernels.use(_SESSION_ENGINE)
