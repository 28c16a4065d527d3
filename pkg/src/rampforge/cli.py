"""Command-line interface.

Commands: train, stats, seed, diverge, transform, export, report, serve.
Exit codes: 0 success, 1 usage error, 2 data/model error. All floating output
uses 4 decimal places; randomness is controlled by --seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .colorspace import parse_hex, srgb_to_lab
from .corpus import corpus_stats, parse_corpus
from .curve import AffineEdit
from .errors import RampforgeError
from .generator import (
    apply_user_edit,
    format_css_gradient,
    format_hex_lines,
    format_lab_csv,
    sample_in_gamut,
    seed_diverging,
    seed_sequential,
)
from .modelbook import TrainingConfig, load_modelbook, save_modelbook, train
from .session import RampState

USAGE_EXIT = 1
DATA_EXIT = 2

_FORMATTERS = {
    "hex": format_hex_lines,
    "lab": format_lab_csv,
    "css": format_css_gradient,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we use 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _hex_argument(text: str) -> str:
    try:
        parse_hex(text)
    except RampforgeError as err:
        raise argparse.ArgumentTypeError(str(err)) from None
    return text


def _build_parser() -> _Parser:
    parser = _Parser(prog="rampforge",
                     description="design-mined color ramp models: train, seed, edit")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("train", help="train a model book from a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--models", required=True, help="output model book path")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=15)
    p.add_argument("--sweeps", type=int, default=500, help="Gibbs sweeps per w")
    p.add_argument("--report-dir", help="also write diagnostics and figures here")

    p = sub.add_parser("stats", help="summarize a corpus")
    p.add_argument("--corpus", required=True)

    p = sub.add_parser("seed", help="seed a sequential ramp from one color")
    p.add_argument("--models", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--color", required=True, type=_hex_argument,
                   help="seed color '#RRGGBB'")
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--format", choices=sorted(_FORMATTERS), default="hex")
    p.add_argument("--gamut", choices=["strict", "clip"], default="strict")
    p.add_argument("--state-out", help="write a replayable state file")

    p = sub.add_parser("diverge", help="seed a diverging ramp from one color")
    p.add_argument("--models", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--color", required=True, type=_hex_argument)
    p.add_argument("--rotate", type=float, default=0.0, help="arm rotation (degrees)")
    p.add_argument("--angle", type=float, help="override the join angle (degrees)")
    p.add_argument("--clamp-rotation", action="store_true",
                   help="clamp out-of-range arm rotation instead of failing")
    p.add_argument("--n", type=int, default=17)
    p.add_argument("--format", choices=sorted(_FORMATTERS), default="hex")
    p.add_argument("--gamut", choices=["strict", "clip"], default="strict")
    p.add_argument("--state-out")

    p = sub.add_parser("transform", help="apply one more edit to a saved ramp state")
    p.add_argument("--models", required=True)
    p.add_argument("--state", required=True, help="state file from seed/diverge/transform")
    p.add_argument("--translate-l", type=float, default=0.0)
    p.add_argument("--translate-a", type=float, default=0.0)
    p.add_argument("--translate-b", type=float, default=0.0)
    p.add_argument("--rotate", type=float, default=0.0)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--reflect", action="store_true")
    p.add_argument("--format", choices=sorted(_FORMATTERS), default="hex")
    p.add_argument("--state-out", help="where to write the updated state")

    p = sub.add_parser("export", help="render a saved ramp state")
    p.add_argument("--models", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--format", choices=sorted(_FORMATTERS), default="hex")
    p.add_argument("--n", type=int, help="resample to this many colors")

    p = sub.add_parser("report", help="render model book figures and summaries")
    p.add_argument("--models", required=True)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("serve", help="serve the HTTP API (and UI if built)")
    p.add_argument("--models", required=True)
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--gamut", choices=["strict", "clip"], default="clip")
    p.add_argument("--static-dir", help="directory of built UI assets")
    return parser


def _ramp_output(ramp, n: int, fmt: str) -> str:
    colors = ramp.colors if n == len(ramp.colors) else sample_in_gamut(ramp, n)
    return _FORMATTERS[fmt](colors)


def _write_state(state: RampState, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state.to_dict(), fh, indent=1)
        fh.write("\n")


def _read_state(path) -> RampState:
    try:
        with open(path, encoding="utf-8") as fh:
            return RampState.from_dict(json.load(fh))
    except OSError as err:
        raise RampforgeError(f"cannot read state file {path}: {err}") from None
    except json.JSONDecodeError as err:
        raise RampforgeError(f"state file {path} is not valid JSON: {err}") from None


def _cmd_train(args) -> int:
    corpus = parse_corpus(args.corpus)
    config = TrainingConfig(rng_seed=args.seed, k_range=(args.k_min, args.k_max),
                            gibbs_sweeps=args.sweeps, jobs=args.jobs)
    result = train(corpus, config)
    save_modelbook(result.book, args.models)
    kmeans_models = sum(1 for m in result.book.models if m.method == "kmeans")
    elastic_models = len(result.book.models) - kmeans_models
    print(f"trained {len(result.book.models)} models "
          f"(kmeans={kmeans_models}, elastic={elastic_models}) "
          f"from {len(corpus.ramps)} ramps")
    print(f"kmeans: subset={result.kmeans.best_subset} k={result.kmeans.best_k} "
          f"tightness={result.kmeans.best.mean_tightness:.4f}")
    print(f"elastic: w={result.elastic.best_w:.1f} k={result.elastic.best.k} "
          f"tightness={result.elastic.best.mean_tightness:.4f}")
    print(f"diverging angle: {result.book.diverging_angle_degrees:.4f}")
    if args.report_dir:
        from .report import write_report
        written = write_report(args.report_dir, result.book, result)
        print(f"report: {args.report_dir} ({', '.join(written)})")
    return 0


def _cmd_stats(args) -> int:
    stats = corpus_stats(parse_corpus(args.corpus))
    print(f"total: {stats.total}")
    print(f"sequential: {stats.by_kind.get('sequential', 0)}")
    print(f"diverging: {stats.by_kind.get('diverging', 0)}")
    sources = " ".join(f"{k}={v}" for k, v in sorted(stats.by_source.items()))
    print(f"sources: {sources}" if sources else "sources:")
    print(f"colors: min={stats.min_colors} max={stats.max_colors}")
    histogram = " ".join(f"{k}:{v}" for k, v in stats.length_histogram.items())
    print(f"histogram: {histogram}" if histogram else "histogram:")
    return 0


def _cmd_seed(args) -> int:
    book = load_modelbook(args.models)
    seed = srgb_to_lab(parse_hex(args.color))
    ramp = seed_sequential(book.model(args.model), seed, gamut_mode=args.gamut)
    if ramp.gamut_status != "clean":
        print(f"note: gamut status {ramp.gamut_status}", file=sys.stderr)
    sys.stdout.write(_ramp_output(ramp, args.n, args.format))
    if args.state_out:
        _write_state(RampState(model_id=args.model, seed_hex=args.color.upper(),
                               kind="sequential", n=args.n, gamut_mode=args.gamut),
                     args.state_out)
    return 0


def _cmd_diverge(args) -> int:
    book = load_modelbook(args.models)
    seed = srgb_to_lab(parse_hex(args.color))
    angle = args.angle if args.angle is not None else book.diverging_angle_degrees
    ramp = seed_diverging(
        book.model(args.model), seed,
        arm_rotation_degrees=args.rotate,
        join_angle_degrees=angle,
        rotation_limit_degrees=book.diverging_rotation_limit_degrees,
        clamp_rotation=args.clamp_rotation,
        gamut_mode=args.gamut,
    )
    if ramp.gamut_status != "clean":
        print(f"note: gamut status {ramp.gamut_status}", file=sys.stderr)
    sys.stdout.write(_ramp_output(ramp, args.n, args.format))
    if args.state_out:
        _write_state(RampState(model_id=args.model, seed_hex=args.color.upper(),
                               kind="diverging", n=args.n, arm_rotation=args.rotate,
                               gamut_mode=args.gamut),
                     args.state_out)
    return 0


def _cmd_transform(args) -> int:
    book = load_modelbook(args.models)
    state = _read_state(args.state)
    ramp = state.build(book)
    edit = AffineEdit(
        translate_l=args.translate_l,
        translate_a=args.translate_a,
        translate_b=args.translate_b,
        rotate_ab_degrees=args.rotate,
        scale=args.scale,
        reflect=args.reflect,
    )
    edited = apply_user_edit(ramp, edit)
    if edited.gamut_status == "reverted":
        print("note: edit leaves the gamut; reverted to the last valid ramp",
              file=sys.stderr)
    else:
        state = state.with_edit(edit)
    sys.stdout.write(_ramp_output(edited, state.n, args.format))
    if args.state_out:
        _write_state(state, args.state_out)
    return 0


def _cmd_export(args) -> int:
    book = load_modelbook(args.models)
    state = _read_state(args.state)
    ramp = state.build(book)
    n = args.n if args.n is not None else state.n
    sys.stdout.write(_ramp_output(ramp, n, args.format))
    return 0


def _cmd_report(args) -> int:
    from .report import write_report

    book = load_modelbook(args.models)
    written = write_report(args.out, book)
    print(f"report: {args.out} ({', '.join(written)})")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    book = load_modelbook(args.models)
    app = create_app(book, gamut_mode=args.gamut, static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


_COMMANDS = {
    "train": _cmd_train,
    "stats": _cmd_stats,
    "seed": _cmd_seed,
    "diverge": _cmd_diverge,
    "transform": _cmd_transform,
    "export": _cmd_export,
    "report": _cmd_report,
    "serve": _cmd_serve,
}


def dispatch(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return USAGE_EXIT
    try:
        return _COMMANDS[args.command](args)
    except RampforgeError as err:
        print(f"rampforge {args.command}: error: {err}", file=sys.stderr)
        return DATA_EXIT


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
