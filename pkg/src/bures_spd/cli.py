"""Command-line front end: ``bures-spd {dist,geodesic,exp,log,curvature,check}``.

Matrix files are either a JSON object ``{"n": 2, "data": [[1, 0], [0, 1]]}``
or plain CSV with one row per line. Structured output is one JSON object
per line on stdout; diagnostics go to stderr.

Exit codes: 0 ok, 1 check failure, 2 usage or parse error, 3 matrix not
SPD, 4 parameter beyond the maximal geodesic extension.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import checks
from . import curvature as cv
from . import geodesy as gd
from . import metric as mt
from .errors import DimensionError, DomainError, NotSPDError
from .matcore import as_spd, eig_sym

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_NOT_SPD, EXIT_BOUNDARY = 0, 1, 2, 3, 4
ASYMMETRY_TOL = 1e-9


class CLIError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def read_matrix(path):
    """Load a square matrix from a JSON or CSV file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CLIError(f"{path}: {exc.strerror}", EXIT_USAGE) from exc
    try:
        if text.lstrip().startswith("{"):
            obj = json.loads(text)
            M = np.array(obj["data"], dtype=float)
            if "n" in obj and M.shape != (obj["n"], obj["n"]):
                raise ValueError(f"declared n={obj['n']} but data has shape {M.shape}")
        else:
            rows = [r for r in text.splitlines() if r.strip()]
            M = np.array([[float(v) for v in r.split(",")] for r in rows], dtype=float)
    except (ValueError, KeyError, TypeError) as exc:
        raise CLIError(f"{path}: cannot parse matrix ({exc})", EXIT_USAGE) from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.size == 0:
        raise CLIError(f"{path}: matrix is not square (shape {M.shape})", EXIT_USAGE)
    if not np.all(np.isfinite(M)):
        raise CLIError(f"{path}: non-finite entries", EXIT_USAGE)
    return M


def _asymmetry(M):
    scale = np.linalg.norm(M)
    return 0.0 if scale == 0 else np.linalg.norm(M - M.T) / scale


def load_spd(path):
    M = read_matrix(path)
    if _asymmetry(M) > ASYMMETRY_TOL:
        raise CLIError(f"{path}: matrix is not symmetric", EXIT_NOT_SPD)
    try:
        return as_spd(M)
    except NotSPDError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_NOT_SPD) from exc


def load_tangent(path):
    M = read_matrix(path)
    if _asymmetry(M) > ASYMMETRY_TOL:
        raise CLIError(f"{path}: tangent matrix is not symmetric", EXIT_USAGE)
    return 0.5 * (M + M.T)


def _same_dim(*mats):
    if len({m.shape for m in mats}) != 1:
        shapes = " vs ".join(f"{m.shape[0]}x{m.shape[1]}" for m in mats)
        raise CLIError(f"dimension mismatch: {shapes}", EXIT_USAGE)


def _matrix_record(M):
    M = np.asarray(M, dtype=float)
    return {"n": int(M.shape[0]), "data": M.tolist()}


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def cmd_dist(args, out):
    A, B = load_spd(args.a), load_spd(args.b)
    _same_dim(A, B)
    out.write(f"{mt.distance(A, B):.12f}\n")


def cmd_geodesic(args, out):
    if args.samples < 2:
        raise CLIError("--samples must be at least 2", EXIT_USAGE)
    A, B = load_spd(args.a), load_spd(args.b)
    _same_dim(A, B)
    N = args.samples
    for i in range(N):
        t = i / (N - 1)
        G = gd.geodesic_point(A, B, t)
        _emit(
            {
                "t": t,
                "matrix": G.tolist(),
                "eigenvalues": eig_sym(G).eigenvalues.tolist(),
                "radius": gd.radius(G),
            },
            out,
        )


def cmd_exp(args, out):
    A, X = load_spd(args.a), load_tangent(args.x)
    _same_dim(A, X)
    if args.t < 0:
        raise CLIError("--t must be non-negative", EXIT_USAGE)
    eps = gd.max_extension(A, X)
    if args.t >= eps:
        raise CLIError(
            f"t={args.t!r} is beyond the maximal extension eps_max={eps!r}",
            EXIT_BOUNDARY,
        )
    try:
        E = gd.exp_map(A, args.t * X)
    except DomainError as exc:
        raise CLIError(f"{exc}", EXIT_BOUNDARY) from exc
    _emit(_matrix_record(E), out)


def cmd_log(args, out):
    A, B = load_spd(args.a), load_spd(args.b)
    _same_dim(A, B)
    _emit(_matrix_record(gd.log_map(A, B)), out)


def cmd_curvature(args, out):
    A = load_spd(args.a)
    _emit(cv.curvature_report(A).to_dict(), out)


def _tolerance():
    raw = os.environ.get("BURES_TOL")
    if raw is None:
        return checks.ALGEBRAIC_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise CLIError(f"BURES_TOL={raw!r} is not a number", EXIT_USAGE) from exc
    if not tol > 0:
        raise CLIError("BURES_TOL must be positive", EXIT_USAGE)
    return tol


def cmd_check(args, out):
    if args.n < 2:
        raise CLIError("--n must be at least 2", EXIT_USAGE)
    if args.trials < 1:
        raise CLIError("--trials must be at least 1", EXIT_USAGE)
    tol = _tolerance()
    suites = checks.run_all(args.n, args.trials, args.seed, tol)
    out.write(f"check n={args.n} trials={args.trials} seed={args.seed} tol={tol!r}\n")
    failed = []
    for suite in suites:
        for line in suite.lines():
            out.write(line + "\n")
        failed += [(suite.name, c) for c in suite.checks.values() if not c.passed]
    if failed:
        for name, c in failed:
            out.write(f"FAILED {name}: {c.name} (seed {c.failing_seed})\n")
        return EXIT_CHECK
    out.write("all checks passed\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bures-spd",
        description="Bures-Wasserstein geometry of symmetric positive-definite matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="Wasserstein distance between two SPD matrices")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("geodesic", help="sample the geodesic between two SPD matrices")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--samples", type=int, default=11)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("exp", help="exponential map exp_A(t X)")
    p.add_argument("a")
    p.add_argument("x")
    p.add_argument("--t", type=float, default=1.0)
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("log", help="logarithm map log_A(B)")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_log)

    p = sub.add_parser("curvature", help="curvature report at an SPD matrix")
    p.add_argument("a")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("check", help="run the seeded invariant suites")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code = args.func(args, out)
    except CLIError as exc:
        err.write(f"bures-spd {args.command}: {exc}\n")
        return exc.code
    except DimensionError as exc:
        err.write(f"bures-spd {args.command}: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK if code is None else code


def main_entry():
    """Console-script entry point."""
    sys.exit(main())
