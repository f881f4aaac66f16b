"""Command-line interface: index, classify, and bench subcommands."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .classifier import classify
from .config import load_config
from .costs import (DEFAULT_PROBABILITIES, DEFAULT_TOPIC_RATIO,
                    MatchProbabilities, closed_form_matches, fit_quadratic,
                    simulate_workload)
from .errors import (DecodeError, DimensionError, InvalidProbabilities,
                     LecturesegError, OrderError, ParseError)
from .index import build_index, write_index
from .ingest import load_frame, load_manifest

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lectureseg",
        description="Segment instructional-video key frames into a "
                    "browsable topic index.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="run the full pipeline and write "
                                           "the JSON topic index")
    p_index.add_argument("--manifest", required=True)
    p_index.add_argument("--config", default=None)
    p_index.add_argument("--out", required=True)
    p_index.add_argument("--thumbs", default=None,
                         help="directory for downscaled frame thumbnails")
    p_index.add_argument("--dump-trace", default=None, metavar="DIR",
                         help="write every filter stage as a 1-bit image")
    p_index.add_argument("--title", default=None)

    p_classify = sub.add_parser("classify", help="print per-frame media "
                                                 "types as TSV")
    p_classify.add_argument("--manifest", required=True)
    p_classify.add_argument("--config", default=None)

    p_bench = sub.add_parser("bench", help="simulate the matching workload "
                                           "and fit its cost curve")
    p_bench.add_argument("--frames", type=int, default=200)
    p_bench.add_argument("--p-exact", type=float,
                         default=DEFAULT_PROBABILITIES.p_exact)
    p_bench.add_argument("--p-prev", type=float,
                         default=DEFAULT_PROBABILITIES.p_previous)
    p_bench.add_argument("--p-new", type=float,
                         default=DEFAULT_PROBABILITIES.p_new_topic)
    p_bench.add_argument("--topic-ratio", type=float,
                         default=DEFAULT_TOPIC_RATIO)
    p_bench.add_argument("--trials", type=int, default=100)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--json", default=None, metavar="FILE",
                         help="write the cost report as JSON")
    p_bench.add_argument("--plot", default=None, metavar="FILE",
                         help="render the regression figure to a file")
    return parser


def _cmd_index(args) -> int:
    idx = build_index(args.manifest, args.config, thumbs_dir=args.thumbs,
                      trace_dir=args.dump_trace, title=args.title)
    write_index(idx, args.out)
    print(f"wrote {args.out}: {len(idx['frames'])} frames, "
          f"{len(idx['topics'])} topics")
    return EXIT_OK


def _cmd_classify(args) -> int:
    cfg = load_config(args.config)
    for entry in load_manifest(args.manifest):
        try:
            raster = load_frame(entry)
            media = classify(raster, entry.external_label, cfg).value
        except (DecodeError, DimensionError):
            media = "error"
        print(f"{entry.frame_id}\t{media}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    p = MatchProbabilities(args.p_exact, args.p_prev, args.p_new)
    reports = [simulate_workload(args.frames, p, args.seed + t)
               for t in range(args.trials)]
    mean_cumulative = np.mean([r.cumulative for r in reports], axis=0)
    points = list(zip(range(1, args.frames + 1), mean_cumulative.tolist()))
    a, b, residual = fit_quadratic(points)

    sample_fs = sorted({max(1, args.frames * k // 10) for k in range(1, 11)})
    print(f"{'f':>6}  {'observed':>12}  {'closed_form':>12}")
    for f in sample_fs:
        observed = mean_cumulative[f - 1]
        expected = closed_form_matches(f, p, args.topic_ratio)
        print(f"{f:>6}  {observed:>12.1f}  {expected:>12.1f}")
    print(f"fit: M(f) = {a:.4f} f + {b:.6f} f^2  (rms residual {residual:.2f})")

    if args.json:
        report = {
            "frames": args.frames,
            "trials": args.trials,
            "probabilities": {"p_exact": p.p_exact, "p_previous": p.p_previous,
                              "p_new_topic": p.p_new_topic},
            "topic_ratio": args.topic_ratio,
            "mean_cumulative": mean_cumulative.tolist(),
            "fitted_a": a,
            "fitted_b": b,
            "residual_rms": residual,
        }
        with open(args.json, "w", encoding="utf-8") as handle:
            json.dump(report, handle, sort_keys=True, indent=2)
            handle.write("\n")
    if args.plot:
        from .report import render_cost_figure
        render_cost_figure(points, a, b, p, args.topic_ratio, args.plot)
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"index": _cmd_index, "classify": _cmd_classify,
                "bench": _cmd_bench}
    try:
        return handlers[args.command](args)
    except (ParseError, OrderError, InvalidProbabilities, FileNotFoundError,
            NotADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LecturesegError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
