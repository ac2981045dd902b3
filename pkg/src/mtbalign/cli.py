"""Command-line front end: align, generate, bench.

Offset convention, also used in reports: positive dx moves content
right, positive dy moves it down, and the printed offset for each image
is the translation applied to it to match the first image. Exclusion
masking marks a pixel reliable (bit set) when it is more than the noise
tolerance away from the median; this is the usable inversion of the
usual "within +/- 4 of the median" phrasing, so that ANDing the masks
removes the noisy near-median pixels.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from pathlib import Path

from . import __version__, kernels
from .bitmap import BYTEMAP, PACKED
from .image import ShiftOffset
from .imageio import ImageFormatError, decode_image, encode_image
from .pipeline import STAGES, align_stack, measure_alignment
from .synth import generate_stack

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INTERNAL = 3

MAX_INPUTS = 64
LEVEL_RANGE = (1, 10)
TOL_RANGE = (0, 127)

LAYOUT_FLAGS = {"bytemap": BYTEMAP, "packed": PACKED}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["images", "config", "pairwise", "cumulative", "timings_ms"],
    "properties": {
        "images": {"type": "array", "items": {"type": "string"}, "minItems": 2},
        "config": {
            "type": "object",
            "required": ["levels", "noise_tolerance", "layout", "workers", "engine"],
            "properties": {
                "levels": {"type": "integer"},
                "noise_tolerance": {"type": "integer"},
                "layout": {"enum": ["bytemap", "packed"]},
                "workers": {"type": "integer"},
                "engine": {"enum": ["native", "python"]},
            },
        },
        "pairwise": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["dx", "dy", "traces"],
                "properties": {
                    "dx": {"type": "integer"},
                    "dy": {"type": "integer"},
                    "traces": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["level", "candidates", "chosen"],
                            "properties": {
                                "level": {"type": "integer"},
                                "candidates": {
                                    "type": "array",
                                    "minItems": 9,
                                    "maxItems": 9,
                                    "items": {
                                        "type": "array",
                                        "minItems": 3,
                                        "maxItems": 3,
                                        "items": {"type": "integer"},
                                    },
                                },
                                "chosen": {
                                    "type": "array",
                                    "minItems": 2,
                                    "maxItems": 2,
                                    "items": {"type": "integer"},
                                },
                            },
                        },
                    },
                },
            },
        },
        "cumulative": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": "integer"},
            },
        },
        "timings_ms": {
            "type": "object",
            "required": ["grayscale", "pyramid", "threshold", "search", "shift", "total"],
            "additionalProperties": {"type": "number"},
        },
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Usage errors exit with code 1; argparse's default would be 2, which
    # is reserved for I/O failures here.
    def error(self, message):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mtbalign",
        description="Translationally align a bracketed exposure stack using "
                    "median-threshold-bitmap pyramids.",
        epilog="Offsets are printed as 'dx dy': positive dx moves content right, "
               "positive dy moves it down, applied to each image to match the first.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--levels", type=_positive_int, default=6,
                        help="pyramid level count (default 6)")
    common.add_argument("--tol", type=int, default=4,
                        help="noise tolerance around the median (default 4)")
    common.add_argument("--layout", choices=sorted(LAYOUT_FLAGS), default="packed",
                        help="bitmap memory layout (default packed)")
    common.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1,
                        help="worker thread count (default: logical CPUs)")
    common.add_argument("--engine", choices=kernels.ENGINES, default="auto",
                        help="kernel engine (default auto: compiled if available)")

    p_align = sub.add_parser("align", parents=[common],
                             help="align images onto the first one")
    p_align.add_argument("inputs", nargs="+", metavar="FILE")
    p_align.add_argument("-o", "--output-dir", required=True)
    p_align.add_argument("--report", metavar="PATH",
                         help="write a JSON report with per-level search traces")
    p_align.set_defaults(func=cmd_align)

    p_gen = sub.add_parser("generate",
                           help="generate a synthetic misaligned exposure stack")
    p_gen.add_argument("--base", required=True, help="source photograph (PPM or PNG)")
    p_gen.add_argument("--count", type=_positive_int, required=True)
    group = p_gen.add_mutually_exclusive_group()
    group.add_argument("--seed", type=int, default=0,
                       help="seed for random offsets and exposure parameters")
    group.add_argument("--shifts", metavar="DX,DY;...",
                       help="explicit pairwise offsets to be recovered")
    p_gen.add_argument("--max-shift", type=int, default=16,
                       help="per-axis bound for random offsets (default 16)")
    p_gen.add_argument("-o", "--output-dir", required=True)
    p_gen.set_defaults(func=cmd_generate)

    p_bench = sub.add_parser("bench", parents=[common],
                             help="time alignment while sweeping the image count")
    p_bench.add_argument("inputs", nargs="+", metavar="FILE")
    p_bench.add_argument("--reps", type=_positive_int, default=10,
                         help="repetitions per sweep point (default 10)")
    p_bench.add_argument("--format", choices=("csv", "json"), default="csv")
    p_bench.add_argument("--out", metavar="PATH", help="write the table here instead of stdout")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def _validate_common(args, input_count: int) -> None:
    if not (2 <= input_count <= MAX_INPUTS):
        raise UsageError(f"expected between 2 and {MAX_INPUTS} input images, got {input_count}")
    if not (LEVEL_RANGE[0] <= args.levels <= LEVEL_RANGE[1]):
        raise UsageError(f"--levels must be in [{LEVEL_RANGE[0]}, {LEVEL_RANGE[1]}]")
    if not (TOL_RANGE[0] <= args.tol <= TOL_RANGE[1]):
        raise UsageError(f"--tol must be in [{TOL_RANGE[0]}, {TOL_RANGE[1]}]")


def build_report(inputs: list[str], args, record, engine: str, total_ms: float) -> dict:
    pairwise = []
    for result in record.pairwise:
        traces = []
        for trace in result.traces:
            traces.append({
                "level": trace.level,
                "candidates": [[off.dx, off.dy, err] for off, err in trace.candidates],
                "chosen": [trace.chosen.dx, trace.chosen.dy],
            })
        pairwise.append({"dx": result.offset.dx, "dy": result.offset.dy, "traces": traces})
    timings = {name: record.timings[name] for name in STAGES}
    timings["total"] = total_ms
    return {
        "images": list(inputs),
        "config": {
            "levels": args.levels,
            "noise_tolerance": args.tol,
            "layout": args.layout,
            "workers": args.workers,
            "engine": engine,
        },
        "pairwise": pairwise,
        "cumulative": [[off.dx, off.dy] for off in record.cumulative],
        "timings_ms": timings,
    }


def _select_engine(name: str) -> str:
    try:
        return kernels.use(name)
    except RuntimeError as exc:
        raise UsageError(str(exc)) from exc


def cmd_align(args) -> int:
    _validate_common(args, len(args.inputs))
    engine = _select_engine(args.engine)
    images = [decode_image(p) for p in args.inputs]

    start = time.perf_counter()
    aligned, record = align_stack(images, levels=args.levels, tol=args.tol,
                                  layout=LAYOUT_FLAGS[args.layout], workers=args.workers)
    total_ms = (time.perf_counter() - start) * 1000.0

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    try:
        for src, img in zip(args.inputs, aligned):
            src = Path(src)
            dest = out_dir / f"{src.stem}_aligned{src.suffix.lower()}"
            encode_image(img, dest)
            written.append(dest)
        if args.report:
            report = build_report(args.inputs, args, record, engine, total_ms)
            report_path = Path(args.report)
            report_path.write_text(json.dumps(report, indent=2) + "\n")
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise

    for off in record.cumulative:
        print(f"{off.dx} {off.dy}")
    return EXIT_OK


def _parse_shifts(text: str, count: int) -> list[ShiftOffset]:
    offsets = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        pieces = part.split(",")
        if len(pieces) != 2:
            raise UsageError(f"bad --shifts entry {part!r}; expected 'dx,dy'")
        try:
            offsets.append(ShiftOffset(int(pieces[0]), int(pieces[1])))
        except ValueError:
            raise UsageError(f"bad --shifts entry {part!r}; expected integers") from None
    if len(offsets) != count - 1:
        raise UsageError(f"--shifts needs {count - 1} entries for --count {count}, got {len(offsets)}")
    return offsets


def cmd_generate(args) -> int:
    if args.count < 2:
        raise UsageError("--count must be at least 2")
    base_path = Path(args.base)
    base = decode_image(base_path)
    shifts = _parse_shifts(args.shifts, args.count) if args.shifts else None
    try:
        images, manifest = generate_stack(base, args.count, pairwise=shifts,
                                          seed=args.seed, max_shift=args.max_shift)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    suffix = base_path.suffix.lower() if base_path.suffix.lower() in (".ppm", ".png") else ".ppm"
    files = []
    for i, img in enumerate(images):
        dest = out_dir / f"{base_path.stem}_{i:02d}{suffix}"
        encode_image(img, dest)
        files.append(str(dest))
    manifest["base"] = str(base_path)
    manifest["files"] = files
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    print(manifest_path)
    return EXIT_OK


def bench_rows(images, counts, repetitions, levels, tol, layout, workers) -> list[dict]:
    # One untimed alignment first so lazy allocations and thread-pool
    # spin-up do not inflate the first sweep point.
    align_stack(images[:2], levels=levels, tol=tol, layout=layout, workers=workers)
    rows = []
    for count in counts:
        report = measure_alignment(images[:count], repetitions=repetitions,
                                   levels=levels, tol=tol, layout=layout, workers=workers)
        row = {
            "count": count,
            "repetitions": repetitions,
            "total_mean_ms": round(report.total.mean_ms, 3),
            "total_stddev_ms": round(report.total.stddev_ms, 3),
        }
        for name in STAGES:
            row[f"{name}_mean_ms"] = round(report.stages[name].mean_ms, 3)
        rows.append(row)
    return rows


def cmd_bench(args) -> int:
    _validate_common(args, len(args.inputs))
    engine = _select_engine(args.engine)
    images = [decode_image(p) for p in args.inputs]
    counts = list(range(2, len(images) + 1))
    rows = bench_rows(images, counts, args.reps, args.levels, args.tol,
                      LAYOUT_FLAGS[args.layout], args.workers)

    if args.format == "json":
        payload = {
            "repetitions": args.reps,
            "layout": args.layout,
            "engine": engine,
            "workers": args.workers,
            "rows": rows,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()

    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, ImageFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # internal invariant violation
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
