"""Curvature of SPD(n) under the Wasserstein metric.

Curvature is non-negative: ``R(X, Y, X, Y) = 3 |T(X, Y)|^2`` with ``T`` the
vertical tensor of :mod:`bures_spd.connection`. At a diagonal point the
sectional curvatures of the coordinate sections ``S^{p,q}`` have a closed
form, and the scalar curvature reduces to a trace over the eigenvalues.

Scalar curvature here is the sum ``sum_p sum_{r>=p} sum_t K(S^{p,r}, S^{r,t})``
over coordinate sections. It is *not* the usual
``sum_{i != j} K(e_i, e_j)`` over an orthonormal frame: at the 2x2 identity
this gives 9/4 where the usual convention gives 3.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import DegeneracyError, NumericError
from .geodesy import radius
from .matcore import as_spd, as_sym, check_same_shape, eig_sym
from .sylvester import gamma_spectral

GRAM_MIN = 1e-12


@dataclass(frozen=True, order=True)
class BasisIndex:
    """Index pair of the symmetric basis matrix ``S^{p,q} = e_p e_q^T + e_q e_p^T``.

    Indices are zero-based and stored with ``p <= q``.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = sorted((int(self.p), int(self.q)))
        if p < 0:
            raise ValueError("basis indices must be non-negative")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def matrix(self, n):
        if self.q >= n:
            raise ValueError(f"index {self.q} out of range for n={n}")
        S = np.zeros((n, n))
        S[self.p, self.q] += 1.0
        S[self.q, self.p] += 1.0
        return S


def basis(n):
    """All ``BasisIndex`` values for SPD(n), in lexicographic order."""
    return [BasisIndex(p, q) for p in range(n) for q in range(p, n)]


def curvature_value(A, X, Y):
    r"""``R(X, Y, X, Y)`` at ``A``.

    .. math::
        R = 3\operatorname{tr}\left(\Gamma_A[X] A\,\Gamma_A\left[\Gamma_A[X]
            \Gamma_A[Y] - \Gamma_A[Y]\Gamma_A[X]\right] A\,\Gamma_A[Y]\right)
    """
    A, X, Y = as_spd(A), as_sym(X), as_sym(Y)
    check_same_shape(A, X, Y)
    spec = eig_sym(A)
    GX, GY = gamma_spectral(spec, X), gamma_spectral(spec, Y)
    W = gamma_spectral(spec, GX @ GY - GY @ GX)
    return 3.0 * float(np.trace(GX @ A @ W @ A @ GY))


def _gram(A, X, Y):
    spec = eig_sym(A)
    GX, GY = gamma_spectral(spec, X), gamma_spectral(spec, Y)
    xx = 0.5 * np.sum(GX * X)
    yy = 0.5 * np.sum(GY * Y)
    xy = 0.5 * np.sum(GY * X)
    return float(xx * yy - xy**2)


def sectional(A, X, Y):
    """Sectional curvature of the plane spanned by ``X`` and ``Y`` at ``A``.

    Raises
    ------
    DegeneracyError
        If the Gram determinant of ``(X, Y)`` is at most ``1e-12``.
    """
    A, X, Y = as_spd(A), as_sym(X), as_sym(Y)
    gram = _gram(A, X, Y)
    if gram <= GRAM_MIN:
        raise DegeneracyError(f"section is degenerate (Gram determinant {gram:.3e})")
    return curvature_value(A, X, Y) / gram


def _pattern(S1, S2):
    # find an orientation with p != q = r and p != t
    for a, b in ((S1, S2), (S2, S1)):
        for p, q in ((a.p, a.q), (a.q, a.p)):
            for r, t in ((b.p, b.q), (b.q, b.p)):
                if p != q and q == r and p != t:
                    return p, r, t
    return None


def sectional_basis(lambdas, S1, S2):
    """Closed-form sectional curvature of ``span{S1, S2}`` at ``diag(lambdas)``.

    Non-zero only when the two index pairs share exactly one index and the
    first is off-diagonal (``p != q = r``, ``p != t`` after relabeling); then

        K = 3 (1 + [r == t]) l_p l_t / ((l_p + l_r)(l_r + l_t)(l_p + l_t)).

    Parameters
    ----------
    lambdas : array_like
        Positive eigenvalues.
    S1, S2 : BasisIndex

    Raises
    ------
    DegeneracyError
        If ``S1 == S2``.
    """
    lam = np.asarray(lambdas, dtype=float)
    if max(S1.q, S2.q) >= lam.size:
        raise ValueError("basis index out of range")
    if S1 == S2:
        raise DegeneracyError(f"{S1} spans a degenerate section with itself")
    match = _pattern(S1, S2)
    if match is None:
        return 0.0
    p, r, t = match
    lp, lr, lt = lam[p], lam[r], lam[t]
    return float(3 * (1 + (r == t)) * lp * lt / ((lp + lr) * (lr + lt) * (lp + lt)))


def scalar_curvature(A):
    r"""Scalar curvature from the eigenvalues of ``A``.

    With ``Lambda = diag(lambda)`` and the strictly upper triangular
    ``U_ij = 1 / (lambda_i + lambda_j)``, ``i < j``:

    .. math::
        \rho = 3\operatorname{tr}\left(2\Lambda UU^T + \Lambda U^TU
               + \Lambda U (U + U^T) \Lambda (U + U^T)\right)
    """
    lam = eig_sym(as_spd(A)).eigenvalues
    L = np.diag(lam)
    U = np.triu(1.0 / (lam[:, None] + lam[None, :]), k=1)
    S = U + U.T
    return 3.0 * float(np.trace(2 * L @ U @ U.T + L @ U.T @ U + L @ U @ S @ L @ S))


def scalar_sum_oracle(lambdas):
    """Scalar curvature as the explicit triple sum over coordinate sections."""
    lam = np.asarray(lambdas, dtype=float)
    if np.any(lam <= 0):
        raise ValueError("eigenvalues must be positive")
    n = lam.size
    total = 0.0
    for p in range(n):
        for r in range(p, n):
            a = lam[p] * (1 + (p == r)) / (lam[p] + lam[r])
            for t in range(n):
                if t == p:
                    continue
                b = (1 + (r == t)) / (lam[r] + lam[t])
                c = lam[t] / (lam[t] + lam[p])
                total += a * b * c
    return float(3.0 * total)


@dataclass(frozen=True)
class CurvatureReport:
    """Per-point curvature summary over the coordinate sections."""

    eigenvalues: np.ndarray
    scalar_curvature: float
    max_basis_sectional: float
    min_nonzero_basis_sectional: Optional[float]
    radius: float

    def to_dict(self):
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "scalar_curvature": self.scalar_curvature,
            "max_basis_sectional": self.max_basis_sectional,
            "min_nonzero_basis_sectional": self.min_nonzero_basis_sectional,
            "radius": self.radius,
        }


def basis_sectionals(lambdas):
    """``{(S1, S2): K}`` for every unordered pair of distinct basis indices."""
    lam = np.asarray(lambdas, dtype=float)
    return {
        (S1, S2): sectional_basis(lam, S1, S2)
        for S1, S2 in combinations(basis(lam.size), 2)
    }


def check_basis_bounds(lambdas, values):
    """Raise :class:`NumericError` if a coordinate sectional curvature breaks its bounds.

    Every value must lie in ``[0, 3 / lambda_min)``; non-zero ones must
    also be at most ``3 / (lambda_p + lambda_t)`` for their pattern.
    """
    lam = np.asarray(lambdas, dtype=float)
    cap = 3.0 / lam.min()
    for (S1, S2), k in values.items():
        if not 0.0 <= k < cap:
            raise NumericError(f"K{S1, S2}={k} outside [0, 3/lambda_min={cap})")
        match = _pattern(S1, S2)
        if k > 0 and match is not None:
            p, _, t = match
            if k > 3.0 / (lam[p] + lam[t]):
                raise NumericError(f"K{S1, S2}={k} exceeds 3/(l_p + l_t)")


def curvature_report(A):
    """Summarize the curvature of ``A`` over its eigenbasis sections."""
    A = as_spd(A)
    lam = eig_sym(A).eigenvalues
    values = basis_sectionals(lam)
    check_basis_bounds(lam, values)
    ks = list(values.values())
    nonzero = [k for k in ks if k > 0]
    return CurvatureReport(
        eigenvalues=lam,
        scalar_curvature=scalar_curvature(A),
        max_basis_sectional=max(ks, default=0.0),
        min_nonzero_basis_sectional=min(nonzero) if nonzero else None,
        radius=radius(A),
    )
