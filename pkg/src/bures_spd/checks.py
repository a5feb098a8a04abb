"""Seeded invariant suites that cross-check every closed form numerically.

Each suite draws ``trials`` random inputs (trial ``i`` uses seed
``seed + i`` and dimension ``dims[i % len(dims)]``), evaluates a set of
identities and records the worst residual of each. The suites back the
``check`` command and the acceptance tests.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from . import connection as cn
from . import curvature as cv
from . import geodesy as gd
from . import jacobi as jc
from . import matcore as mc
from . import metric as mt
from . import sylvester as sy
from .errors import NumericError

ALGEBRAIC_TOL = 1e-9
FD_TOL = 2e-4


def rel(a, b):
    """Relative Frobenius (or absolute-value) difference ``|a - b| / max(|a|, |b|)``."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    diff = np.linalg.norm(a - b)
    return 0.0 if diff == 0 else float(diff / scale)


@dataclass
class Check:
    """Worst observed value of one property against its tolerance.

    ``mode="max"`` requires every value ``<= tol``; ``mode="min"`` requires
    every value ``>= tol``.
    """

    name: str
    tol: float
    mode: str = "max"
    worst: Optional[float] = None
    failing_seed: Optional[int] = None
    count: int = 0

    def _ok(self, v):
        return v <= self.tol if self.mode == "max" else v >= self.tol

    def record(self, value, seed=None):
        v = float(value)
        self.count += 1
        if self.worst is None or math.isnan(v):
            self.worst = v
        elif not math.isnan(self.worst):
            self.worst = max(self.worst, v) if self.mode == "max" else min(self.worst, v)
        if not self._ok(v) and self.failing_seed is None:
            self.failing_seed = seed

    @property
    def passed(self):
        return self.worst is not None and self._ok(self.worst)


@dataclass
class Suite:
    name: str
    checks: Dict[str, Check] = field(default_factory=dict)

    def check(self, name, tol, mode="max"):
        if name not in self.checks:
            self.checks[name] = Check(name, tol, mode)
        return self.checks[name]

    def record(self, name, value, tol, seed=None, mode="max"):
        self.check(name, tol, mode).record(value, seed)

    @property
    def passed(self):
        return all(c.passed for c in self.checks.values())

    def lines(self):
        out = []
        for c in self.checks.values():
            op = "<=" if c.mode == "max" else ">="
            status = "ok" if c.passed else f"FAIL (seed {c.failing_seed})"
            out.append(
                f"{self.name:<11} {c.name:<32} {c.mode}={c.worst:.3e} "
                f"{op} {c.tol:.1e}  {status}"
            )
        return out


def _trials(dims, trials, seed):
    dims = list(dims)
    for i in range(trials):
        s = seed + i
        yield s, dims[i % len(dims)], np.random.default_rng(s)


def _unit(A, X):
    return X / mt.norm(A, X)


def _cap(eps, cap=10.0):
    return cap if eps is gd.UNBOUNDED else min(eps, cap)


# -- matcore ---------------------------------------------------------------


def matcore_suite(dims=range(1, 11), trials=500, seed=0, tol=ALGEBRAIC_TOL):
    suite = Suite("matcore")
    for s, n, rng in _trials(dims, trials, seed):
        S = mc.random_sym(n, rng)
        sp = mc.eig_sym(S)
        Q = sp.eigenvectors
        suite.record("eig reconstruction", rel(sp.reconstruct(), S), 1e-10, s)
        suite.record("eig orthogonality", np.linalg.norm(Q.T @ Q - np.eye(n)), 1e-10, s)
        A = mc.random_spd(n, rng)
        r = mc.sqrt_spd(A)
        suite.record("sqrt_spd squared", rel(r @ r, A), 1e-10, s)
        B = mc.random_spd(n, rng)
        R = mc.sqrt_product(A, B)
        suite.record("sqrt_product squared", rel(R @ R, A @ B), tol, s)
        suite.record(
            "sqrt_product min eigenvalue",
            np.min(np.linalg.eigvals(R).real),
            0.0,
            s,
            mode="min",
        )
        suite.record("sqrt_product(A, A) = A", rel(mc.sqrt_product(A, A), A), 1e-10, s)
    return suite


# -- sylvester -------------------------------------------------------------


def sylvester_suite(dims=range(2, 11), trials=1000, seed=0, tol=ALGEBRAIC_TOL):
    suite = Suite("sylvester")
    g = lambda A, X: sy.gamma(A, X).value  # noqa: E731
    for s, n, rng in _trials(dims, trials, seed):
        A = mc.random_spd(n, rng)
        B = mc.random_spd(n, rng)
        X = mc.random_sym(n, rng)
        Y = mc.random_sym(n, rng)
        Q = mc.random_orthogonal(n, rng)
        k = float(rng.uniform(0.1, 10.0))
        res = sy.gamma(A, X)
        GX = res.value
        suite.record(
            "residual / (1 + |X|)", res.residual / (1 + np.linalg.norm(X)), 1e-10, s
        )
        suite.record("vs Kronecker oracle", rel(GX, sy.gamma_kron(A, X)), 1e-10, s)
        suite.record("linearity", rel(g(A, X + k * Y), GX + k * g(A, Y)), tol, s)
        suite.record("scaling", rel(g(k * A, X), GX / k), tol, s)
        GAB = g(A + B, X)
        suite.record(
            "perturbation", rel(GAB, GX - sy.gamma_raw(A, B @ GAB + GAB @ B)), tol, s
        )
        suite.record("commutation left", rel(sy.gamma_kron(A, A @ X), A @ GX), tol, s)
        suite.record("commutation right", rel(sy.gamma_kron(A, X @ A), GX @ A), tol, s)
        suite.record(
            "inversion", rel(g(np.linalg.inv(A), X), sy.gamma_inverse_point(A, X)), tol, s
        )
        suite.record("conjugation", rel(g(Q @ A @ Q.T, Q @ X @ Q.T), Q @ GX @ Q.T), tol, s)
    return suite


# -- metric ----------------------------------------------------------------


def random_lift(n, rng):
    """A random lift ``O A^{1/2}`` of a random SPD point."""
    return mc.random_orthogonal(n, rng) @ mc.sqrt_spd(mc.random_spd(n, rng))


def metric_suite(dims=range(2, 9), trials=500, seed=0, tol=ALGEBRAIC_TOL):
    suite = Suite("metric")
    for s, n, rng in _trials(dims, trials, seed):
        L = random_lift(n, rng)
        A = mt.project(L)
        X = mc.random_sym(n, rng)
        Y = mc.random_sym(n, rng)
        Xt, Yt = mt.horizontal_lift(L, X), mt.horizontal_lift(L, Y)
        scale = mt.norm(A, X) * mt.norm(A, Y)
        suite.record(
            "submersion", abs(np.sum(Xt * Yt) - mt.inner(A, X, Y)) / scale, tol, s
        )
        suite.record("dsigma(lift) = X", rel(mt.dsigma(L, Xt), X), tol, s)
        M = np.linalg.solve(L, Xt)
        suite.record("lift horizontal", np.linalg.norm(M - M.T) / np.linalg.norm(M), tol, s)
        suite.record("metric positive", mt.inner(A, X, X), 0.0, s, mode="min")
        suite.record(
            "inner symmetric", abs(mt.inner(A, X, Y) - mt.inner(A, Y, X)) / scale, tol, s
        )
        B, C = mc.random_spd(n, rng), mc.random_spd(n, rng)
        dAB, dBA = mt.distance(A, B), mt.distance(B, A)
        suite.record("distance symmetric", abs(dAB - dBA) / max(dAB, 1.0), tol, s)
        # a round-off sized squared distance becomes ~sqrt(eps * tr A) after the root
        suite.record(
            "distance zero on diagonal",
            mt.distance(A, A) / np.sqrt(1 + np.trace(A)),
            1e-6,
            s,
        )
        slack = mt.distance(A, C) - dAB - mt.distance(B, C)
        suite.record("triangle inequality", slack, tol, s)
    return suite


# -- geodesy ---------------------------------------------------------------


def _fd_curve(A1, A2, t, h):
    # central first and second differences of the endpoint geodesic
    gp, g0, gm = (gd.geodesic_point(A1, A2, t + d) for d in (h, 0.0, -h))
    return g0, (gp - gm) / (2 * h), (gp - 2 * g0 + gm) / h**2


def geodesic_suite(dims=range(2, 9), trials=500, seed=0, tol=ALGEBRAIC_TOL):
    suite = Suite("geodesy")
    t_grid = np.linspace(0.0, 1.0, 11)
    interior = np.linspace(0.05, 0.95, 10)
    for s, n, rng in _trials(dims, trials, seed):
        A = mc.random_spd(n, rng)
        B = mc.random_spd(n, rng)
        V = gd.log_map(A, B)
        suite.record("exp(log B) = B", rel(gd.exp_map(A, V), B), 1e-8, s)
        X = mc.random_sym(n, rng)
        eps = gd.max_extension(A, X)
        if eps is not gd.UNBOUNDED and eps <= 2.0:
            X = X * (0.5 * eps)
        suite.record("log(exp X) = X", rel(gd.log_map(A, gd.exp_map(A, X)), X), 1e-8, s)
        G = sy.gamma(A, X).value
        suite.record("exp two forms", rel(gd.exp_map(A, X), A + X + G @ A @ G), 1e-10, s)
        d = mt.distance(A, B)
        suite.record("|log| = distance", abs(mt.norm(A, V) - d) / max(d, 1.0), 1e-8, s)
        suite.record(
            "arc length = distance", abs(gd.arc_length(A, B) - d) / max(d, 1.0), 1e-6, s
        )
        for t in t_grid:
            p = gd.geodesic_point(A, B, t)  # raises if not SPD
            suite.record("endpoint = ivp", rel(p, gd.geodesic_ivp(A, V, t)), tol, s)
        speeds = []
        for t in interior:
            p, v, acc = _fd_curve(A, B, t, 1e-3)
            nabla = cn.covariant_derivative_along(p, v, v, acc)
            suite.record(
                "nabla_gamma' gamma' = 0",
                np.linalg.norm(nabla) / (1 + np.linalg.norm(acc)),
                FD_TOL,
                s,
            )
            _, v5, _ = _fd_curve(A, B, t, 1e-5)
            speeds.append(mt.norm(p, v5))
        spread = (max(speeds) - min(speeds)) / max(max(speeds), 1.0)
        suite.record("constant speed", spread, 1e-5, s)
        O = mc.random_orthogonal(n, rng)
        t = float(rng.uniform())
        lhs = gd.geodesic_point(mt.act(O, A), mt.act(O, B), t)
        suite.record(
            "isometry equivariance", rel(lhs, O @ gd.geodesic_point(A, B, t) @ O.T), tol, s
        )
        P = gd.connecting_orthogonal(A, B)
        Lt = gd.level_lift_endpoint(A, B)
        suite.record("P A2^1/2 = level lift", rel(P @ mc.sqrt_spd(B), Lt), tol, s)
        suite.record("project(level lift) = A2", rel(mt.project(Lt), B), tol, s)
        suite.record(
            "|level lift - A1^1/2| = distance",
            abs(np.linalg.norm(Lt - mc.sqrt_spd(A)) - d) / max(d, 1.0),
            1e-8,
            s,
        )
    return suite


def radius_suite(dims=range(2, 9), trials=20, seed=0, tangents=200, tol=1e-6):
    """Variational checks of the extension of unit-speed rays.

    For each random point the smallest :func:`max_extension` over
    ``tangents`` random unit vectors must not undercut
    :func:`boundary_distance`, and the degenerate direction must attain it.
    """
    suite = Suite("radius")
    for s, n, rng in _trials(dims, trials, seed):
        A = mc.random_spd(n, rng)
        exts = []
        for _ in range(tangents):
            e = gd.max_extension(A, _unit(A, mc.random_sym(n, rng)))
            exts.append(np.inf if e is gd.UNBOUNDED else e)
        bd = gd.boundary_distance(A)
        suite.record("min extension - boundary", min(exts) - bd, -tol, s, mode="min")
        suite.record("min extension - radius", min(exts) - gd.radius(A), -tol, s, mode="min")
        V = gd.degenerate_direction(A)
        att = gd.max_extension(A, _unit(A, V))
        suite.record("degenerate attains boundary", abs(att - bd), tol, s)
    return suite


# -- connection ------------------------------------------------------------


def random_polynomial_field(n, rng, label="poly"):
    c = rng.uniform(-1.0, 1.0, size=3)
    return cn.polynomial_field(c[0], c[1], c[2], mc.random_sym(n, rng), label)


def _numeric(field):
    return cn.VectorField(field.evaluate, None, field.label + " (fd)")


def connection_suite(dims=range(2, 7), trials=200, seed=0, tol=ALGEBRAIC_TOL):
    suite = Suite("connection")
    for s, n, rng in _trials(dims, trials, seed):
        A = mc.random_spd(n, rng)
        Xf = random_polynomial_field(n, rng, "X")
        Yf = random_polynomial_field(n, rng, "Y")
        Zf = random_polynomial_field(n, rng, "Z")
        X, Y, Z = Xf(A), Yf(A), Zf(A)
        scale = 1 + np.linalg.norm(cn.covariant_derivative(Xf, Yf, A))

        dY_fd = cn.directional_derivative(_numeric(Yf), A, X)
        dY = cn.directional_derivative(Yf, A, X)
        suite.record("fd vs exact differential", rel(dY_fd, dY), FD_TOL, s)

        inner_YZ = lambda P: mt.inner(P, Yf(P), Zf(P))  # noqa: E731
        h = cn.fd_step(A, X)
        lhs = (inner_YZ(A + h * X) - inner_YZ(A - h * X)) / (2 * h)
        rhs = mt.inner(A, cn.covariant_derivative(Xf, Yf, A), Z) + mt.inner(
            A, Y, cn.covariant_derivative(Xf, Zf, A)
        )
        suite.record("metric compatibility", abs(lhs - rhs) / (1 + abs(lhs)), FD_TOL, s)

        torsion = (
            cn.covariant_derivative(Xf, Yf, A)
            - cn.covariant_derivative(Yf, Xf, A)
            - cn.lie_bracket(Xf, Yf, A)
        )
        suite.record("torsion free", np.linalg.norm(torsion) / scale, FD_TOL, s)

        for L in (mc.sqrt_spd(A), mc.random_orthogonal(n, rng) @ mc.sqrt_spd(A)):
            D = cn.lifted_derivative(Xf, Yf, L)
            nabla = cn.covariant_derivative(Xf, Yf, A)
            suite.record("lift identity", rel(mt.dsigma(L, D), nabla), FD_TOL, s)
            T = cn.tensor_T(L, X, Y)
            bracket = cn.lifted_bracket(Xf, Yf, L)
            expected = mt.horizontal_lift(L, cn.lie_bracket(Xf, Yf, A)) + 2 * T
            suite.record("bracket relation", rel(bracket, expected), FD_TOL, s)
            suite.record(
                "T vertical",
                np.linalg.norm(mt.dsigma(L, T)) / (1 + np.linalg.norm(T)),
                tol,
                s,
            )
            suite.record(
                "T antisymmetric", rel(cn.tensor_T(L, Y, X), -T), tol, s
            )
    return suite


# -- jacobi ----------------------------------------------------------------


def random_jacobi_spec(n, rng, unit_seed=True):
    A = mc.random_spd(n, rng)
    X = mc.random_sym(n, rng)
    spec = jc.JacobiSpec.normal(A, X, mc.random_sym(n, rng))
    if unit_seed:
        Y = _unit(A, spec.seed_derivative)
        spec = jc.JacobiSpec(A, X, Y)
    return spec


def jacobi_suite(dims=range(2, 7), trials=200, seed=0, witness_trials=None,
                 tol=ALGEBRAIC_TOL, h=1e-4):
    suite = Suite("jacobi")
    fracs = np.linspace(0.1, 0.9, 9)
    for s, n, rng in _trials(dims, trials, seed):
        spec = random_jacobi_spec(n, rng)
        A, X, Y = spec.base, spec.velocity, spec.seed_derivative
        cap = _cap(spec.t_max)
        worst = 0.0
        for f in fracs:
            t = f * cap
            worst = max(worst, rel(jc.jacobi_field(spec, t), jc.variation_oracle(spec, t, h)))
        suite.record("closed form vs variation", worst, 1e-5, s)

        dt = 1e-4
        J1, J2 = jc.jacobi_field(spec, dt), jc.jacobi_field(spec, 2 * dt)
        rate = (4 * J1 - J2) / (2 * dt)  # one-sided, J(0) = 0
        nabla0 = cn.covariant_derivative_along(A, X, np.zeros_like(A), rate)
        suite.record("nabla J(0) = Y", rel(nabla0, Y), FD_TOL, s)
        suite.record("J(0) = 0", np.abs(jc.jacobi_field(spec, 0.0)).max(), 0.0, s)
        Y2 = mc.random_sym(n, rng)
        spec2 = jc.JacobiSpec.normal(A, X, Y2)
        both = jc.JacobiSpec(A, X, spec.seed_derivative + spec2.seed_derivative)
        t = 0.5 * cap
        suite.record(
            "additive in Y",
            rel(jc.jacobi_field(both, t),
                jc.jacobi_field(spec, t) + jc.jacobi_field(spec2, t)),
            1e-10,
            s,
        )
    witness_trials = trials if witness_trials is None else witness_trials
    for s, n, rng in _trials(dims, witness_trials, seed + 10**6):
        spec = random_jacobi_spec(n, rng)
        grid = np.linspace(0.01, 0.99, 25) * _cap(spec.t_max)
        suite.record(
            "min |J(t)|/t (no conjugate)", jc.min_jacobi_norm(spec, grid), 1e-8, s, "min"
        )
    return suite


# -- curvature -------------------------------------------------------------


def curvature_suite(dims=range(2, 9), trials=1000, seed=0, spectra=100,
                    tol=ALGEBRAIC_TOL):
    suite = Suite("curvature")
    for s, n, rng in _trials(dims, trials, seed):
        A = mc.random_spd(n, rng)
        X, Y = mc.random_sym(n, rng), mc.random_sym(n, rng)
        R = cv.curvature_value(A, X, Y)
        T = cn.tensor_T(mc.sqrt_spd(A), X, Y)
        suite.record("R = 3|T|^2", rel(R, 3 * np.sum(T * T)), tol, s)
        suite.record("R >= 0", R, -1e-12, s, mode="min")
        suite.record("R(X, X) = 0", abs(cv.curvature_value(A, X, X)) / (1 + abs(R)), 1e-12, s)
        K = cv.sectional(A, X, Y)
        for k in (0.1, 2.0, 10.0):
            suite.record("inverse ratio law", rel(cv.sectional(k * A, X, Y) * k, K), tol, s)
        O = mc.random_orthogonal(n, rng)
        suite.record(
            "sectional isometry",
            rel(cv.sectional(mt.act(O, A), mt.act_tangent(O, X), mt.act_tangent(O, Y)), K),
            tol,
            s,
        )
    for s, n, rng in _trials(dims, spectra, seed + 10**6):
        lam = mc.eig_sym(mc.random_spd(n, rng)).eigenvalues
        L = np.diag(lam)
        values = cv.basis_sectionals(lam)
        worst = 0.0
        for (S1, S2), k in values.items():
            general = cv.sectional(L, S1.matrix(n), S2.matrix(n))
            worst = max(worst, abs(general - k) / max(abs(k), 1.0))
        suite.record("trace form vs closed form", worst, 1e-10, s)
        ks = np.array(list(values.values()))
        suite.record("basis K >= 0", ks.min(), 0.0, s, mode="min")
        suite.record("basis K * lambda_min / 3", ks.max() * lam[0] / 3, 1.0 - 1e-15, s)
        try:
            cv.check_basis_bounds(lam, values)
            ok = 0.0
        except NumericError:
            ok = 1.0
        suite.record("pattern bound 3/(l_p + l_t)", ok, 0.0, s)
    return suite


def scalar_suite(dims=range(2, 9), trials=100, seed=0, tol=ALGEBRAIC_TOL):
    suite = Suite("scalar")
    for s, n, rng in _trials(dims, trials, seed):
        A = mc.random_spd(n, rng)
        lam = mc.eig_sym(A).eigenvalues
        rho = cv.scalar_curvature(A)
        suite.record("trace vs triple sum", rel(rho, cv.scalar_sum_oracle(lam)), tol, s)
        O = mc.random_orthogonal(n, rng)
        suite.record("orthogonal invariance", rel(cv.scalar_curvature(mt.act(O, A)), rho), tol, s)
        k = float(rng.uniform(0.1, 10.0))
        suite.record("scaling 1/k", rel(cv.scalar_curvature(k * A) * k, rho), tol, s)
    return suite


def isometry_suite(dims=range(2, 9), trials=100, seed=0, tol=ALGEBRAIC_TOL):
    suite = Suite("isometry")
    for s, n, rng in _trials(dims, trials, seed):
        A, B = mc.random_spd(n, rng), mc.random_spd(n, rng)
        X, Y = mc.random_sym(n, rng), mc.random_sym(n, rng)
        O = mc.random_orthogonal(n, rng)
        OA, OB = mt.act(O, A), mt.act(O, B)
        OX, OY = mt.act_tangent(O, X), mt.act_tangent(O, Y)
        suite.record("distance", rel(mt.distance(OA, OB), mt.distance(A, B)), tol, s)
        suite.record(
            "inner", rel(mt.inner(OA, OX, OY), mt.inner(A, X, Y)), tol, s
        )
        suite.record(
            "sectional", rel(cv.sectional(OA, OX, OY), cv.sectional(A, X, Y)), tol, s
        )
        suite.record(
            "scalar", rel(cv.scalar_curvature(OA), cv.scalar_curvature(A)), tol, s
        )
    return suite


def run_all(n=4, trials=200, seed=0, tol=ALGEBRAIC_TOL):
    """Run every suite at dimension ``n`` with ``trials`` seeded trials each."""
    dims = [n]
    return [
        matcore_suite(dims, trials, seed, tol),
        sylvester_suite(dims, trials, seed, tol),
        metric_suite(dims, trials, seed, tol),
        geodesic_suite(dims, trials, seed, tol),
        radius_suite(dims, max(1, trials // 10), seed),
        connection_suite(dims, trials, seed, tol),
        jacobi_suite(dims, trials, seed, tol=tol),
        curvature_suite(dims, trials, seed, spectra=max(1, trials // 2), tol=tol),
        scalar_suite(dims, trials, seed, tol),
        isometry_suite(dims, trials, seed, tol),
    ]
