"""Command-line entry point.

Exit codes:
    analyze          0 frame, 2 not a frame, 1 input error
    generate         0 ok, 1 invalid or infeasible request
    verify-theorems  0 no violations, 1 violations found or bad flags
"""
from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .errors import ShapeError
from .frames import DEFAULT_TOL, diagnose
from .generate import InfeasibleError, generate_frame
from .report import ReportEnvelope, render_structured, render_text
from .specfile import SpecError, dumps, frame_to_json, load
from .theorems import verify

TOL_ENV = "HCFRAMES_TOL"


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise SpecError(f"{TOL_ENV}={raw!r} is not a number") from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _block_list(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad block list {text!r}") from None
    if not dims or any(n < 1 for n in dims):
        raise argparse.ArgumentTypeError(f"block dimensions must be positive, got {text!r}")
    return dims


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    try:
        spec = load(args.path)
        tol = args.tol if args.tol is not None else spec.tolerances.get("tol", _default_tol())
        F = spec.build(args.quadrature_nodes)
    except (OSError, SpecError, ShapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    t1 = time.perf_counter()
    diag = diagnose(F, tol)
    t2 = time.perf_counter()
    env = ReportEnvelope(
        spec_digest=spec.digest,
        tool_version=__version__,
        tolerances={"tol": tol},
        diagnostics=diag,
        timings={"build_ms": 1e3 * (t1 - t0), "diagnose_ms": 1e3 * (t2 - t1)},
    )
    if args.format == "structured":
        sys.stdout.write(render_structured(env).decode() + "\n")
    else:
        sys.stdout.write(render_text(env))
    return 0 if diag.flags.frame else 2


def cmd_generate(args) -> int:
    if args.atoms < 1 or args.rank < 1:
        print("error: --atoms and --rank must be positive", file=sys.stderr)
        return 1
    if args.seed < 0:
        print("error: --seed must be non-negative", file=sys.stderr)
        return 1
    try:
        F = generate_frame(args.seed, args.atoms, args.rank, args.blocks, riesz=args.riesz)
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(dumps(frame_to_json(F)))
    return 0


def cmd_verify_theorems(args) -> int:
    if args.cases < 0:
        print("error: --cases must be non-negative", file=sys.stderr)
        return 1
    tol = args.tol if args.tol is not None else _default_tol()
    summary = verify(args.cases, args.seed, tol, dump_dir=args.dump_dir)
    for idx in sorted(summary.violations):
        for problem in summary.violations[idx]:
            print(f"case {idx}: {problem}")
    for path in summary.dumped:
        print(f"dumped {path}")
    n_bad = len(summary.violations)
    print(f"{args.cases} cases, seed {args.seed}: {n_bad} with violations")
    return 0 if summary.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcframes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="diagnose the frame described by a spec file")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--quadrature-nodes", type=_positive_int, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="print a seeded random atomic frame spec")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--blocks", type=_block_list, default=(1,))
    p.add_argument("--riesz", action="store_true", help="only emit Riesz bases (lambda_min(V) >= 1e-3)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify-theorems", help="check the structural results on generated frames")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--dump-dir", default="violations")
    p.set_defaults(func=cmd_verify_theorems)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
