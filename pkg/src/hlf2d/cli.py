"""Command-line interface.

Exit codes: 0 success, 2 validation error, 3 oracle disagreement,
4 resource cap exceeded.  Errors are emitted as one JSON object on stderr.
The instance argument is either a ``grid:N:bits`` shorthand or a path to a
JSON instance document; it may be given positionally or via --instance.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .bench import records_csv, run_bench, save_bench_figure
from .bits import BitVector
from .cla import run_cla
from .errors import HlfError, InvariantError, ResourceCapError, ValidationError
from .instance import HlfInstance, build_grid_instance, load_instance, serialize
from .plotting import grid_image_from_words, image_to_pbm, render_distribution_grid, save_figure
from .stream import (
    digest_solutions,
    enumerate_solutions,
    solution_words,
    write_binary,
    write_text,
)
from .timing import TimingParams, fpga_time_model, r0_bound, runtime_ratio
from .verify import verify_instance

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DISAGREEMENT = 3
EXIT_CAP = 4


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through the JSON error channel."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ValidationError(message)


def _add_instance_arg(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("instance_pos", nargs="?", metavar="INSTANCE",
                     help="grid:N:bits shorthand or instance file path")
    sub.add_argument("--instance", dest="instance_flag", metavar="INSTANCE",
                     help="alternative to the positional instance argument")


def _resolve_instance(args: argparse.Namespace) -> HlfInstance:
    refs = [r for r in (args.instance_pos, args.instance_flag) if r]
    if len(refs) != 1:
        raise ValidationError("give exactly one instance (positional or --instance)")
    return load_instance(refs[0])


def _open_out(path: str | None, binary: bool = False):
    if path is None or path == "-":
        return (sys.stdout.buffer if binary else sys.stdout), False
    return open(path, "wb" if binary else "w"), True


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hlf2d", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("gen", help="write an instance document")
    p.add_argument("instance_pos", nargs="?", metavar="INSTANCE", help="grid:N:bits shorthand")
    p.add_argument("--side", type=int, help="grid side for --random-b")
    p.add_argument("--random-b", action="store_true", help="draw the diagonal string at random")
    p.add_argument("--seed", type=int, default=None, help="seed for --random-b")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("solve", help="print the stage-1 summary as JSON")
    _add_instance_arg(p)
    p.set_defaults(func=cmd_solve)

    p = subs.add_parser("enumerate", help="stream all solutions")
    _add_instance_arg(p)
    p.add_argument("--mode", choices=("text", "binary", "checksum", "count-only"),
                   default="text")
    p.add_argument("--count-only", action="store_true",
                   help="shorthand for --mode count-only")
    p.add_argument("--chunks", type=int, default=1, help="worker fan-out for checksum/count")
    p.add_argument("--cap", type=int, default=None, help="override the enumeration rank cap")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_enumerate)

    p = subs.add_parser("verify", help="run the oracle cross-checks")
    _add_instance_arg(p)
    p.add_argument("--tol", type=float, default=1e-9, help="amplitude threshold and tolerance")
    p.add_argument("--cap", type=int, default=None, help="override the enumeration rank cap")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("plot", help="render the solution distribution grid")
    _add_instance_arg(p)
    p.add_argument("--out", required=True, help="portable bitmap output path")
    p.add_argument("--format", choices=("p1", "p4"), default="p1")
    p.add_argument("--fig", default=None,
                   help="matplotlib figure path (default: --out with .png; 'none' to skip)")
    p.add_argument("--cap", type=int, default=None, help="override the enumeration rank cap")
    p.set_defaults(func=cmd_plot)

    p = subs.add_parser("bench", help="time checksum enumeration")
    _add_instance_arg(p)
    p.add_argument("--chunks", default="1", help="comma-separated chunk counts, e.g. 1,2,8")
    p.add_argument("--repeat", type=int, default=1, help="best-of repeat count")
    p.add_argument("--cap", type=int, default=None, help="override the enumeration rank cap")
    p.add_argument("--out", default=None, help="CSV output path (default stdout)")
    p.add_argument("--fig", default=None,
                   help="figure path (default: --out with .png when --out is a file; 'none' to skip)")
    p.set_defaults(func=cmd_bench)

    p = subs.add_parser("ratio", help="evaluate the analytic timing models")
    p.add_argument("--n", type=int, required=True, help="problem size")
    p.add_argument("--r", type=int, default=None, help="binary rank")
    p.add_argument("--c1", type=float, default=1.0)
    p.add_argument("--c2", type=float, default=1.0)
    p.add_argument("--c3", type=float, default=1.0)
    p.add_argument("--d", type=int, default=1, help="circuit depth")
    p.add_argument("--dt", type=float, default=None, help="pipeline clock period in seconds")
    p.add_argument("--tau", type=float, default=0.0, help="pipeline delay in cycles")
    p.set_defaults(func=cmd_ratio)

    return parser


def cmd_gen(args: argparse.Namespace) -> int:
    if args.instance_pos:
        inst = load_instance(args.instance_pos)
    elif args.side is not None and args.random_b:
        rng = random.Random(args.seed)
        bits = rng.getrandbits(args.side * args.side)
        inst = build_grid_instance(args.side, BitVector(args.side * args.side, bits))
    else:
        raise ValidationError("gen needs a grid:N:bits shorthand or --side with --random-b")
    out, close = _open_out(args.out)
    try:
        out.write(serialize(inst) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    inst = _resolve_instance(args)
    print(run_cla(inst).to_json())
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    inst = _resolve_instance(args)
    cla = run_cla(inst)
    mode = "count-only" if args.count_only else args.mode
    if args.chunks < 1:
        raise ValidationError(f"--chunks must be >= 1, got {args.chunks}")
    if mode == "text":
        out, close = _open_out(args.out)
        try:
            write_text(inst, cla, out, max_rank=args.cap)
        finally:
            if close:
                out.close()
    elif mode == "binary":
        out, close = _open_out(args.out, binary=True)
        try:
            write_binary(inst, cla, out, max_rank=args.cap)
        finally:
            if close:
                out.close()
    else:
        digest = digest_solutions(inst, cla, chunks=args.chunks, max_rank=args.cap)
        if mode == "count-only":
            print(digest.count)
        else:
            print(json.dumps({"count": digest.count, "xor": f"{digest.xor_bits:x}",
                              "mix": f"{digest.mixed:016x}"}))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _resolve_instance(args)
    report = verify_instance(inst, tol=args.tol, max_rank=args.cap)
    print(report.to_json())
    return EXIT_OK if report.agrees else EXIT_DISAGREEMENT


def cmd_plot(args: argparse.Namespace) -> int:
    inst = _resolve_instance(args)
    cla = run_cla(inst)
    if inst.n <= 64:
        words = solution_words(inst, cla, max_rank=args.cap)
        image = grid_image_from_words(words, inst.n)
    else:
        solutions = (z for _, z in enumerate_solutions(inst, cla, max_rank=args.cap))
        image = render_distribution_grid(solutions, inst.n)
    with open(args.out, "wb") as fh:
        fh.write(image_to_pbm(image, binary=args.format == "p4"))
    fig_path = args.fig
    if fig_path is None:
        fig_path = str(Path(args.out).with_suffix(".png"))
    if fig_path != "none":
        save_figure(image, fig_path, title=inst.label())
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    inst = _resolve_instance(args)
    try:
        chunk_counts = [int(tok) for tok in args.chunks.split(",") if tok.strip()]
    except ValueError:
        raise ValidationError(f"--chunks must be comma-separated integers, got {args.chunks!r}") from None
    if not chunk_counts or min(chunk_counts) < 1:
        raise ValidationError(f"--chunks values must be >= 1, got {args.chunks!r}")
    records = run_bench(inst, chunk_counts=chunk_counts, repeat=args.repeat, max_rank=args.cap)
    out, close = _open_out(args.out)
    try:
        out.write(records_csv(records))
    finally:
        if close:
            out.close()
    fig_path = args.fig
    if fig_path is None and args.out not in (None, "-"):
        fig_path = str(Path(args.out).with_suffix(".png"))
    if fig_path and fig_path != "none":
        save_bench_figure(records, fig_path)
    return EXIT_OK


def cmd_ratio(args: argparse.Namespace) -> int:
    result: dict[str, object] = {"n": args.n, "r0": r0_bound(args.n)}
    if args.r is not None:
        params = TimingParams(c1=args.c1, c2=args.c2, c3=args.c3, n=args.n, r=args.r, d=args.d)
        result["ratio"] = runtime_ratio(params)
        if args.dt is not None:
            result["fpga_seconds"] = fpga_time_model(args.dt, args.tau, args.r)
    elif args.dt is not None:
        raise ValidationError("--dt needs --r to evaluate the pipeline time")
    print(json.dumps(result))
    return EXIT_OK


def _fail(kind: str, exc: Exception, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ValidationError as exc:
        return _fail("validation", exc, EXIT_VALIDATION)
    except ResourceCapError as exc:
        return _fail("resource-cap", exc, EXIT_CAP)
    except InvariantError as exc:
        return _fail("invariant", exc, EXIT_VALIDATION)
    except HlfError as exc:
        return _fail("error", exc, EXIT_VALIDATION)


if __name__ == "__main__":
    sys.exit(main())
