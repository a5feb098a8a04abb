"""The Wasserstein metric on SPD(n) and the bundle ``sigma(L) = L^T L``.

GL(n) with the Euclidean inner product ``tr(U^T V)`` projects onto SPD(n)
through ``sigma``; the metric below is the one that makes ``sigma`` a
Riemannian submersion. Only zero-mean Gaussians are covered, so the
distance carries no mean term.
"""

import numpy as np

from .errors import DegeneracyError, NotSPDError, NumericError
from .matcore import (
    as_lift,
    as_orthogonal,
    as_spd,
    as_sym,
    check_same_shape,
    eig_sym,
    sqrt_product,
)
from .sylvester import gamma_spectral

# round-off allowance below zero before a squared quantity is an error
NEG_TOL = 1e-12


def inner(A, X, Y):
    r"""Wasserstein inner product of two tangent vectors at ``A``.

    .. math::
        g_A(X, Y) = \tfrac12 \operatorname{tr}(\Gamma_A[Y] X)
                  = \operatorname{tr}(\Gamma_A[Y] A \Gamma_A[X])
    """
    A, X, Y = as_spd(A), as_sym(X), as_sym(Y)
    check_same_shape(A, X, Y)
    GY = gamma_spectral(eig_sym(A), Y)
    return 0.5 * float(np.sum(GY * X))


def norm(A, X):
    """Wasserstein length of ``X`` at ``A``."""
    sq = inner(A, X, X)
    if sq < -NEG_TOL:
        raise NumericError(f"negative squared norm {sq:.3e}", residual=sq)
    return float(np.sqrt(max(sq, 0.0)))


def distance(A1, A2):
    r"""Closed-form Bures-Wasserstein distance between two SPD matrices.

    .. math::
        d(A_1, A_2) = \left(\operatorname{tr}\left[A_1 + A_2
                      - 2 (A_1 A_2)^{1/2}\right]\right)^{1/2}

    A negative trace no smaller than ``-1e-12 * max(1, tr A1 + tr A2)`` is
    treated as round-off and clamped to zero.
    """
    A1, A2 = as_spd(A1), as_spd(A2)
    check_same_shape(A1, A2)
    total = float(np.trace(A1) + np.trace(A2))
    tr = total - 2.0 * float(np.trace(sqrt_product(A1, A2)))
    if tr < -NEG_TOL * max(1.0, total):
        raise NumericError(f"negative squared distance {tr:.3e}", residual=tr)
    return float(np.sqrt(max(tr, 0.0)))


def project(L):
    """Bundle projection ``sigma(L) = L^T L``."""
    L = as_lift(L)
    A = L.T @ L
    try:
        return as_spd(A)
    except NotSPDError as exc:
        raise DegeneracyError(f"projection is degenerate: {exc}") from exc


def horizontal_lift(L, X):
    """Horizontal lift ``L Gamma_A[X]`` of ``X`` at the fiber point ``L``.

    It is the unique tangent vector at ``L`` that is orthogonal to the
    fiber ``{O L : O orthogonal}`` and pushes forward to ``X``.
    """
    A = project(L)
    X = as_sym(X)
    check_same_shape(A, X)
    G = gamma_spectral(eig_sym(A), X)
    return np.asarray(L, dtype=float) @ (0.5 * (G + G.T))


def dsigma(L, V):
    """Push-forward of a total-space tangent ``V``: ``V^T L + L^T V``."""
    L = np.asarray(L, dtype=float)
    V = np.asarray(V, dtype=float)
    check_same_shape(L, V)
    out = V.T @ L + L.T @ V
    return 0.5 * (out + out.T)


def act(O, A):
    """Isometric action ``O A O^T`` of an orthogonal matrix on a point."""
    O = as_orthogonal(O)
    A = as_spd(A)
    check_same_shape(O, A)
    out = O @ A @ O.T
    return 0.5 * (out + out.T)


def act_tangent(O, X):
    """Differential of :func:`act`, ``X -> O X O^T``."""
    O = as_orthogonal(O)
    X = as_sym(X)
    check_same_shape(O, X)
    out = O @ X @ O.T
    return 0.5 * (out + out.T)
