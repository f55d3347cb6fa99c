"""Command-line entry point: ``ptdirac {spectrum,wavefunction,table1,validate}``.

Every command writes to ``--out`` or standard output with ``\\n`` line
endings. Output depends only on the flags, so repeated runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__
from .checks import run_all
from .errors import DomainError, NoBoundState, NumericalFailure
from .model import ModelParams, QuantumNumbers
from .oracle import OracleConfig
from .reference import table1_text
from .report import build_report
from .spectrum import solve_level, spectrum_grid
from .wavefunction import GridSpec, sample

SPECTRUM_COLUMNS = ("dim", "n", "alpha", "energy", "eps", "delta", "status")


def format_number(x) -> str:
    """Shortest round-trip decimal; scientific below 1e-3 and from 1e16 up."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return repr(x)
    if x == 0.0 or 1e-3 <= abs(x) < 1e16:
        return np.format_float_positional(x, unique=True, trim="-")
    return np.format_float_scientific(x, unique=True, trim="-")


def dump_json(obj) -> str:
    # json's float repr is itself shortest round-trip, so load/dump is a fixed point
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def dump_csv(columns, rows, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(columns))
    lines.extend(",".join(format_number(row[c]) if not isinstance(row[c], str) else row[c]
                          for c in columns) for row in rows)
    return "\n".join(lines) + "\n"


@contextmanager
def _sink(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_physics(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mu", type=float, default=1.0, help="rest mass (default 1)")
    p.add_argument("--v0", type=float, default=1.0, help="vector well depth (default 1)")
    p.add_argument("--s0", type=float, default=1.0, help="scalar well depth (default 1)")
    p.add_argument("--c1", type=float, default=1.0, help="spin-symmetry constant (default 1)")


def _params(args, alpha: float) -> ModelParams:
    return ModelParams(mu=args.mu, v0=args.v0, s0=args.s0, alpha=alpha, c1=args.c1)


def cmd_spectrum(args) -> int:
    dims = args.dim or [3]
    alphas = args.alpha or [1e-4]
    base = _params(args, alphas[0])
    rows = []
    for cell in spectrum_grid(base, dims, range(1, args.n_max + 1), alphas):
        sp = cell.point
        rows.append({
            "dim": cell.dim,
            "n": cell.n,
            "alpha": cell.alpha,
            "energy": sp.energy if sp else None,
            "eps": sp.eps if sp else None,
            "delta": sp.delta if sp else None,
            "status": "ok" if sp else "absent",
        })
    text = dump_json(rows) if args.format == "json" else dump_csv(SPECTRUM_COLUMNS, rows)
    with _sink(args.out) as fh:
        fh.write(text)
    return 0


def cmd_wavefunction(args) -> int:
    p = _params(args, args.alpha)
    q = QuantumNumbers(args.nr, args.ell, args.dim)
    try:
        sp = solve_level(p, q)
    except NoBoundState as exc:
        print(f"ptdirac: {exc}", file=sys.stderr)
        return 1
    rf = sample(sp, GridSpec(r_max=args.rmax, count=args.samples, spacing=args.spacing))
    rows = [{"r": r, "F": f, "G": g} for r, f, g in zip(rf.grid.tolist(), rf.upper.tolist(), rf.lower.tolist())]
    if args.format == "json":
        text = dump_json([dict(row, norm=rf.norm_method) for row in rows])
    else:
        comments = [
            f"norm={rf.norm_method}",
            f"dim={q.dim} n_r={q.n_r} ell={q.ell} energy={format_number(sp.energy)} eps={format_number(sp.eps)}",
        ]
        text = dump_csv(("r", "F", "G"), rows, comments)
    with _sink(args.out) as fh:
        fh.write(text)
    return 0


def cmd_table1(args) -> int:
    if args.dump:
        text = table1_text()
    else:
        text = dump_json(build_report(with_oracle=args.oracle == "on", cfg=OracleConfig()))
    with _sink(args.out) as fh:
        fh.write(text)
    return 0


def cmd_validate(args) -> int:
    ok = True
    for result in run_all(fast=args.fast, seed=args.seed):
        print(result.line(), flush=True)
        ok = ok and result.passed
    print("all checks passed" if ok else "some checks FAILED")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptdirac",
        description="Bound states of the spin-symmetric D-dimensional Dirac equation "
                    "in a modified Poschl-Teller well.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="energies on a (dim, n, alpha) grid")
    sp.add_argument("--dim", type=int, action="append", help="spatial dimension (repeatable; default 3)")
    sp.add_argument("--n-max", type=_positive_int, default=5, help="principal numbers 1..N (default 5)")
    sp.add_argument("--alpha", type=float, action="append", help="range parameter (repeatable; default 1e-4)")
    _add_physics(sp)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", help="output file (default standard output)")
    sp.set_defaults(func=cmd_spectrum)

    wf = sub.add_parser("wavefunction", help="normalized radial components F and G")
    wf.add_argument("--dim", type=int, default=3)
    wf.add_argument("--nr", type=int, default=0, help="radial quantum number")
    wf.add_argument("--ell", type=int, default=0, help="orbital quantum number")
    wf.add_argument("--alpha", type=float, default=1e-4)
    _add_physics(wf)
    wf.add_argument("--samples", type=_positive_int, default=1000)
    wf.add_argument("--rmax", type=float, default=None, help="outer radius (default 30/(eps alpha))")
    wf.add_argument("--spacing", choices=("log", "linear"), default="log",
                    help="log: r=0 plus geometric then uniform spacing; linear: uniform")
    wf.add_argument("--format", choices=("csv", "json"), default="csv")
    wf.add_argument("--out")
    wf.set_defaults(func=cmd_wavefunction)

    t1 = sub.add_parser("table1", help="comparison report against the published table")
    t1.add_argument("--out")
    t1.add_argument("--oracle", choices=("on", "off"), default="off",
                    help="add finite-difference oracle energies per cell")
    t1.add_argument("--dump", action="store_true", help="write the embedded table1.csv instead")
    t1.set_defaults(func=cmd_table1)

    va = sub.add_parser("validate", help="run the invariant suite")
    va.add_argument("--fast", action="store_true", help="skip the oracle cross-validation")
    va.add_argument("--seed", type=int, default=0, help="seed for randomized sampling (default 0)")
    va.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, NumericalFailure) as exc:
        print(f"ptdirac: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ptdirac: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
