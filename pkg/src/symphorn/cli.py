"""Command-line interface: ``symphorn {eigs,inequalities,check,sample,witness}``.

Every command prints one JSON document on stdout; diagnostics go to stderr.
Exit codes: 0 success (inside/boundary, found, no violations), 1 negative
outcome (outside, not found, violations), 2 invalid input.
"""

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cone import (
    BOUNDARY,
    INSIDE,
    INVALID,
    OUTSIDE,
    check_delta_sp,
    check_friedland,
    check_horn_classical,
    check_horn_sp,
)
from .horn import (
    DEFAULT_MAX_N,
    SCHEMA_VERSION,
    horn_inequalities,
    inequalities_from_json,
    inequalities_to_json,
)
from .linalg import parse_matrix
from .williamson import QuadForm, symplectic_eigenvalues
from .witness import FOUND, find_hermitian_witness, find_symplectic_witness, monte_carlo_forward

CACHE_ENV = "SYMPHORN_CACHE_DIR"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2

VERDICT_EXIT = {INSIDE: EXIT_OK, BOUNDARY: EXIT_OK, OUTSIDE: EXIT_NEGATIVE, INVALID: EXIT_INVALID}

CHECKERS = {
    "sp": check_horn_sp,
    "classical": check_horn_classical,
    "friedland": check_friedland,
    "delta": check_delta_sp,
}


class UsageError(Exception):
    pass


def _emit(doc):
    sys.stdout.write(json.dumps(doc) + "\n")


def _err(msg):
    sys.stderr.write(f"symphorn: {msg}\n")


def _parse_spectrum(arg):
    text = arg
    if arg.startswith("@"):
        try:
            text = Path(arg[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {arg[1:]}: {exc.strerror}") from None
    tokens = [t for t in text.replace("\n", ",").replace(" ", ",").split(",") if t]
    if not tokens:
        raise UsageError(f"empty spectrum {arg!r}")
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise UsageError(f"cannot parse spectrum {arg!r}") from None


def _cache_dir():
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "symphorn"


def cached_inequalities(n, minimal=True, allow_large=False):
    """Inequality list, read from or written to the on-disk cache."""
    path = _cache_dir() / f"horn-n{n}-{'minimal' if minimal else 'full'}-v{SCHEMA_VERSION}.json"
    try:
        cached_n, cached_minimal, ineqs = inequalities_from_json(path.read_text())
        if cached_n == n and cached_minimal == minimal:
            return ineqs
    except (OSError, ValueError, KeyError):
        pass
    ineqs = horn_inequalities(n, minimal=minimal, allow_large=allow_large)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(inequalities_to_json(n, minimal, ineqs))
        tmp.replace(path)
    except OSError as exc:
        _err(f"inequality cache not written: {exc}")
    return ineqs


def cmd_eigs(args):
    try:
        text = Path(args.matrix).read_text()
        q = QuadForm(parse_matrix(text))
        spectrum = symplectic_eigenvalues(q, tol=args.pair_tol)
    except (OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    _emit(list(spectrum))
    return EXIT_OK


def cmd_inequalities(args):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.n > DEFAULT_MAX_N and not args.override_large_n:
        raise UsageError(f"--n {args.n} exceeds {DEFAULT_MAX_N}; pass --override-large-n")
    ineqs = horn_inequalities(args.n, minimal=args.minimal, allow_large=args.override_large_n)
    text = inequalities_to_json(args.n, args.minimal, ineqs)
    if args.out:
        Path(args.out).write_text(text)
        _emit({"n": args.n, "minimal": args.minimal, "count": len(ineqs), "out": args.out})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _triple(args):
    x, y, z = (_parse_spectrum(a) for a in (args.x, args.y, args.z))
    if not len(x) == len(y) == len(z):
        raise UsageError(f"spectra have different lengths {len(x)}, {len(y)}, {len(z)}")
    if args.n is not None and args.n != len(x):
        raise UsageError(f"--n {args.n} does not match spectrum length {len(x)}")
    if len(x) > DEFAULT_MAX_N and not args.override_large_n:
        raise UsageError(f"n={len(x)} exceeds {DEFAULT_MAX_N}; pass --override-large-n")
    return x, y, z


def cmd_check(args):
    x, y, z = _triple(args)
    ineqs = cached_inequalities(len(x), minimal=True, allow_large=args.override_large_n)
    report = CHECKERS[args.cone](x, y, z, ineqs, tol=args.tol)
    _emit(report.to_dict())
    return VERDICT_EXIT[report.verdict]


def cmd_sample(args):
    if args.n < 1 or args.trials < 1:
        raise UsageError("--n and --trials must be >= 1")
    ineqs = cached_inequalities(args.n, minimal=True, allow_large=args.override_large_n)
    summary = monte_carlo_forward(args.n, args.trials, args.seed, ineqs, tol=args.tol)
    _emit(summary.to_dict())
    return EXIT_OK if summary.violations == 0 else EXIT_NEGATIVE


def cmd_witness(args):
    x, y, z = _triple(args)
    ineqs = cached_inequalities(len(x), minimal=True, allow_large=args.override_large_n)
    options = dict(budget=args.budget, restarts=args.restarts, seed=args.seed)
    if args.mode == "symplectic":
        oracle = check_horn_sp(x, y, z, ineqs)
        if oracle.verdict == INVALID:
            _err(f"invalid symplectic spectra: {oracle.reason}")
            return EXIT_INVALID
        result = find_symplectic_witness(x, y, z, tol=args.tol or 1e-6, **options)
    else:
        oracle = check_friedland(x, y, z, ineqs)
        if oracle.verdict == INVALID:
            _err(f"invalid spectra: {oracle.reason}")
            return EXIT_INVALID
        result = find_hermitian_witness(x, y, z, tol=args.tol or 1e-9, **options)
    doc = result.to_dict()
    doc["mode"] = args.mode
    doc["oracle_verdict"] = oracle.verdict
    _emit(doc)
    return EXIT_OK if result.status == FOUND else EXIT_NEGATIVE


def build_parser():
    parser = argparse.ArgumentParser(prog="symphorn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigs", help="symplectic eigenvalues of a matrix file")
    p.add_argument("matrix", help="matrix text file (dimension line, then rows)")
    p.add_argument("--pair-tol", type=float, default=1e-6,
                   help="relative gap allowed between doubled eigenvalues")
    p.set_defaults(func=cmd_eigs)

    p = sub.add_parser("inequalities", help="write the Horn inequality system as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--minimal", action="store_true",
                   help="keep only triples with Littlewood-Richardson coefficient 1")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--override-large-n", action="store_true")
    p.set_defaults(func=cmd_inequalities)

    def add_triple(p):
        p.add_argument("x", help="comma-separated spectrum or @file")
        p.add_argument("y")
        p.add_argument("z")
        p.add_argument("--n", type=int, help="expected length of each spectrum")
        p.add_argument("--override-large-n", action="store_true")

    p = sub.add_parser("check", help="membership report for a spectrum triple")
    add_triple(p)
    p.add_argument("--cone", choices=sorted(CHECKERS), default="sp")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sample", help="forward Monte Carlo check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--override-large-n", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("witness", help="search for a realizing witness")
    add_triple(p)
    p.add_argument("--mode", choices=["symplectic", "hermitian"], default="symplectic")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None,
                   help="success tolerance (default 1e-6 symplectic, 1e-9 hermitian)")
    p.add_argument("--budget", type=int, default=5000, help="solver iterations per restart")
    p.add_argument("--restarts", type=int, default=20)
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "tol", None) is not None and args.tol <= 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INVALID


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
