"""Translational registration of bracketed exposure stacks using
median-threshold-bitmap pyramids."""

__version__ = "0.1.0"

from .bitmap import BYTEMAP, LAYOUTS, PACKED, Bitmap, shifted_error
from .image import ShiftOffset, shift_gray, shift_rgb, to_grayscale
from .imageio import ImageFormatError, decode_image, encode_image
from .pipeline import StackAlignment, align_stack, measure_alignment
from .pyramid import build_pyramid, downsample_half
from .search import AlignmentResult, LevelTrace, brute_force_offset, find_offset, search_level
from .synth import generate_stack
from .threshold import (
    MtbPair,
    build_mtb_pyramid,
    histogram,
    make_exclusion,
    make_mtb,
    make_mtb_pair,
    median_from_histogram,
)

__all__ = [
    "AlignmentResult",
    "BYTEMAP",
    "Bitmap",
    "ImageFormatError",
    "LAYOUTS",
    "LevelTrace",
    "MtbPair",
    "PACKED",
    "ShiftOffset",
    "StackAlignment",
    "align_stack",
    "brute_force_offset",
    "build_mtb_pyramid",
    "build_pyramid",
    "decode_image",
    "downsample_half",
    "encode_image",
    "find_offset",
    "generate_stack",
    "histogram",
    "make_exclusion",
    "make_mtb",
    "make_mtb_pair",
    "measure_alignment",
    "median_from_histogram",
    "search_level",
    "shift_gray",
    "shift_rgb",
    "shifted_error",
    "to_grayscale",
]
