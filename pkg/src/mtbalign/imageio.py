"""Image decoding and encoding: binary PPM (P6) and 8-bit PNG.

PPM is parsed and written directly so round-trips are bit-exact and
trivially verifiable; PNG goes through Pillow and is restricted to 8-bit
RGB/RGBA input (alpha is dropped).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .image import validate_rgb


class ImageFormatError(ValueError):
    """Unsupported or malformed image data."""


def _ppm_tokens(data: bytes, count: int, path: Path) -> tuple[list[int], int]:
    """Read whitespace-separated header integers, skipping # comments.

    Returns the values and the index just past the single whitespace byte
    that terminates the header.
    """
    values: list[int] = []
    pos = 2  # past the magic
    while len(values) < count:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos] == ord("#"):
            eol = data.find(b"\n", pos)
            pos = len(data) if eol < 0 else eol + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        token = data[start:pos]
        if not token.isdigit():
            raise ImageFormatError(f"{path}: malformed PPM header token {token!r}")
        values.append(int(token))
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise ImageFormatError(f"{path}: PPM header not terminated by whitespace")
    return values, pos + 1


def _decode_ppm(data: bytes, path: Path) -> np.ndarray:
    (width, height, maxval), start = _ppm_tokens(data, 3, path)
    if maxval != 255:
        raise ImageFormatError(
            f"{path}: unsupported PPM maxval {maxval}; only 8-bit (255) is supported"
        )
    if width < 1 or height < 1:
        raise ImageFormatError(f"{path}: invalid PPM dimensions {width}x{height}")
    expected = width * height * 3
    raster = data[start : start + expected]
    if len(raster) < expected:
        raise ImageFormatError(
            f"{path}: truncated PPM data, expected {expected} bytes, got {len(raster)}"
        )
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width, 3).copy()


def _decode_png(path: Path) -> np.ndarray:
    try:
        with Image.open(path) as img:
            if img.mode not in ("RGB", "RGBA"):
                raise ImageFormatError(
                    f"{path}: unsupported PNG mode {img.mode!r}; only 8-bit RGB/RGBA is supported"
                )
            arr = np.asarray(img, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise ImageFormatError(f"{path}: not a decodable PNG file") from exc
    except OSError as exc:
        # Pillow reports truncated or corrupt streams as plain OSError.
        raise ImageFormatError(f"{path}: corrupt PNG data ({exc})") from exc
    return np.ascontiguousarray(arr[:, :, :3])


def decode_image(path) -> np.ndarray:
    """Decode a PPM (binary P6, maxval 255) or PNG (8-bit RGB/RGBA) file."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"input image not found: {path}")
    data = path.read_bytes()
    if data[:2] == b"P6":
        return _decode_ppm(data, path)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        return _decode_png(path)
    if data[:2] in (b"P1", b"P2", b"P3", b"P4", b"P5"):
        raise ImageFormatError(f"{path}: unsupported PNM variant; only binary P6 is supported")
    raise ImageFormatError(f"{path}: unrecognized image format")


def encode_image(img: np.ndarray, path) -> None:
    """Write an RGB raster; the file extension selects the format."""
    validate_rgb(img)
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".ppm":
        header = f"P6\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
        try:
            path.write_bytes(header + img.tobytes())
        except OSError as exc:
            raise OSError(f"failed to write {path}: {exc}") from exc
    elif suffix == ".png":
        try:
            Image.fromarray(img, mode="RGB").save(path, format="PNG")
        except OSError as exc:
            raise OSError(f"failed to write {path}: {exc}") from exc
    else:
        raise ImageFormatError(
            f"{path}: unsupported output extension {suffix!r}; use .ppm or .png"
        )
