"""Acceptance criteria, one test per criterion.

Each test records a ``CRITERION k PASS|FAIL`` line; the lines are printed in
the pytest terminal summary and when this file is run as a script.
"""

import json
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from bures_spd import checks
from bures_spd import curvature as cv
from bures_spd import geodesy as gd
from bures_spd import metric as mt
from bures_spd.errors import DomainError

RESULTS = {}
I2 = np.eye(2)


def record(k, title, ok, detail):
    line = f"CRITERION {k:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS[k] = line
    print(line)
    return ok


def suite_detail(suite, names=None):
    cs = [c for c in suite.checks.values() if names is None or c.name in names]
    bad = [c.name for c in cs if not c.passed]
    worst = ", ".join(f"{c.name} {c.mode}={c.worst:.2e}" for c in cs)
    return (not bad), (f"failing {bad}; " if bad else "") + worst


def timed(f):
    t0 = time.perf_counter()
    out = f()
    return out, time.perf_counter() - t0


def test_criterion_01_sylvester():
    suite, secs = timed(lambda: checks.sylvester_suite(range(2, 11), 1000, seed=0))
    ok, detail = suite_detail(suite)
    ok = ok and secs < 10.0
    assert record(1, "Sylvester suite, 1000 trials", ok, f"{secs:.1f}s < 10s; {detail}")


def test_criterion_02_submersion():
    suite = checks.metric_suite(range(2, 9), 500, seed=0)
    ok, detail = suite_detail(suite, {"submersion"})
    assert suite.checks["submersion"].count == 500
    assert record(2, "submersion identity, 500 trials", ok, detail)


def test_criterion_03_geodesics():
    # geodesic_point raises NotSPDError on any non-SPD sample, so completing
    # the run certifies SPD-ness of every sampled point
    suite, secs = timed(lambda: checks.geodesic_suite(range(2, 9), 500, seed=0))
    names = {
        "exp(log B) = B",
        "log(exp X) = X",
        "arc length = distance",
        "nabla_gamma' gamma' = 0",
        "endpoint = ivp",
    }
    ok, detail = suite_detail(suite, names)
    ok = ok and secs < 60.0
    assert record(3, "geodesic suite, 500 pairs", ok, f"{secs:.1f}s < 60s; {detail}")


def test_criterion_04_boundary():
    X = -I2
    eps = gd.max_extension(I2, X)
    for t in np.linspace(0.0, 2 - 1e-8, 201):
        E = gd.exp_map(I2, t * X)
        assert np.all(np.linalg.eigvalsh(E) > 0)
    det = float(np.linalg.det(gd.exp_map(I2, (2 - 1e-8) * X)))
    with pytest.raises(DomainError):
        gd.exp_map(I2, 2.0 * X)
    ok = abs(eps - 2.0) <= 1e-12 and det < 1e-10
    assert record(4, "boundary at I2, X = -I", ok, f"eps_max={eps!r}, det at 2-1e-8 = {det:.2e}")


def test_criterion_05_radius():
    r = gd.radius(I2)
    rng = np.random.default_rng(0)
    exts = []
    for _ in range(200):
        X = rng.standard_normal((2, 2))
        X = X + X.T
        e = gd.max_extension(I2, X / mt.norm(I2, X))
        exts.append(math.inf if e is gd.UNBOUNDED else e)
    V = gd.degenerate_direction(I2)
    attained = gd.max_extension(I2, V / mt.norm(I2, V))
    variational = min(min(exts), attained)
    checks_ = {
        "radius(I2) = sqrt(2)/2": abs(r - math.sqrt(2) / 2) <= 1e-12,
        "random unit tangents >= radius - 1e-6": min(exts) >= r - 1e-6,
        "variational minimum = radius": abs(variational - r) <= 1e-6,
        "attained by degenerate_direction": abs(attained - r) <= 1e-6,
    }
    failing = [k for k, v in checks_.items() if not v]
    detail = (
        f"radius={r!r}, min over 200 tangents={min(exts)!r}, "
        f"degenerate direction reaches {attained!r}"
        + (f"; failing {failing}" if failing else "")
    )
    assert record(5, "radius at I2", not failing, detail)


def test_criterion_06_isometry():
    suite = checks.isometry_suite(range(2, 9), 100, seed=0)
    ok, detail = suite_detail(suite, {"distance", "sectional", "scalar"})
    assert record(6, "orthogonal conjugation invariance, 100 trials", ok, detail)


def test_criterion_07_jacobi():
    suite = checks.jacobi_suite(range(2, 7), 200, seed=0, witness_trials=500, h=1e-4)
    ok, detail = suite_detail(
        suite, {"closed form vs variation", "min |J(t)|/t (no conjugate)"}
    )
    # second-order convergence: err(h) <= C h^2 with C = 1e-5 / (1e-4)^2
    C = 1e3
    hs = (1e-1, 1e-2, 1e-3, 1e-4)
    worst_ratio = 0.0
    for s, n, rng in checks._trials(range(2, 7), 50, 7):
        spec = checks.random_jacobi_spec(n, rng)
        t = 0.5 * checks._cap(spec.t_max)
        J = checks.jc.jacobi_field(spec, t)
        for h in hs:
            try:
                oracle = checks.jc.variation_oracle(spec, t, h)
            except DomainError:
                continue  # the perturbed velocity leaves the domain of exp
            err = checks.rel(J, oracle)
            worst_ratio = max(worst_ratio, err / (C * h**2))
    ok = ok and worst_ratio <= 1.0
    assert suite.checks["min |J(t)|/t (no conjugate)"].count == 500
    assert record(
        7, "Jacobi fields", ok, f"max err/(C h^2)={worst_ratio:.2e} <= 1; {detail}"
    )


def test_criterion_08_curvature():
    suite = checks.curvature_suite(range(2, 9), 1000, seed=0, spectra=100)
    names = {
        "R = 3|T|^2",
        "R >= 0",
        "trace form vs closed form",
        "basis K >= 0",
        "basis K * lambda_min / 3",
        "inverse ratio law",
    }
    ok, detail = suite_detail(suite, names)
    # strict upper bound K < 3 / lambda_min
    ok = ok and suite.checks["basis K * lambda_min / 3"].worst < 1.0
    assert record(8, "curvature identities", ok, detail)


def test_criterion_09_scalar():
    suite = checks.scalar_suite(range(2, 9), 100, seed=0)
    ok, detail = suite_detail(suite, {"trace vs triple sum"})
    a, b = cv.scalar_curvature(I2), cv.scalar_sum_oracle([1.0, 1.0])
    ok = ok and abs(a - 2.25) <= 1e-12 and abs(b - 2.25) <= 1e-12
    assert record(9, "scalar curvature", ok, f"I2: trace {a!r}, triple sum {b!r}; {detail}")


def _cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "bures_spd", *map(str, args)],
        capture_output=True,
        text=True,
        env=env,
        check=False,
    )


def _matrix_file(tmp_path, name, M):
    path = tmp_path / name
    path.write_text(json.dumps({"n": len(M), "data": np.asarray(M, float).tolist()}))
    return path


def test_criterion_10_cli(tmp_path):
    f = lambda name, M: _matrix_file(tmp_path, name, M)  # noqa: E731
    I, I9 = f("I.json", I2), f("9I.json", 9 * I2)
    d14, d41 = f("d14.json", np.diag([1.0, 4.0])), f("d41.json", np.diag([4.0, 1.0]))
    negI = f("negI.json", -I2)

    def mid(out):
        return json.loads(out.splitlines()[1])["matrix"]

    cases = {
        "dist": (("dist", d14, d41), lambda p: p.stdout == "1.414213562373\n"),
        "geodesic 4I": (
            ("geodesic", I, I9, "--samples", 3),
            lambda p: mid(p.stdout) == [[4.0, 0.0], [0.0, 4.0]],
        ),
        "geodesic diag(9/4, 9/4)": (
            ("geodesic", d14, d41, "--samples", 3),
            lambda p: mid(p.stdout) == [[2.25, 0.0], [0.0, 2.25]],
        ),
        "log": (
            ("log", d14, d41),
            lambda p: p.stdout == '{"n": 2, "data": [[2.0, 0.0], [0.0, -4.0]]}\n',
        ),
        "exp boundary": (
            ("exp", I, negI, "--t", 2),
            lambda p: p.returncode == 4 and "eps_max=2.0" in p.stderr,
        ),
        "curvature I2": (
            ("curvature", I),
            lambda p: p.stdout
            == '{"eigenvalues": [1.0, 1.0], "scalar_curvature": 2.25, '
            '"max_basis_sectional": 0.75, "min_nonzero_basis_sectional": 0.75, '
            '"radius": 0.7071067811865476}\n',
        ),
    }
    failing = []
    for name, (args, expect) in cases.items():
        first, second = _cli(*args), _cli(*args)
        stable = (first.stdout, first.stderr, first.returncode) == (
            second.stdout,
            second.stderr,
            second.returncode,
        )
        if not (stable and expect(first)):
            failing.append(name)
    env = {k: v for k, v in os.environ.items() if k != "BURES_TOL"}
    chk, secs = timed(lambda: _cli("check", env=env))
    if chk.returncode != 0 or secs >= 120:
        failing.append(f"check exit {chk.returncode} in {secs:.1f}s")
    detail = f"{len(cases)} worked examples bit-stable, check exit 0 in {secs:.1f}s"
    if failing:
        detail = f"failing {failing}"
    assert record(10, "command line", not failing, detail)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
