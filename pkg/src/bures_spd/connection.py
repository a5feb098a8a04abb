"""Levi-Civita connection of the Wasserstein metric and the vertical tensor.

For vector fields ``X``, ``Y`` on SPD(n) the covariant derivative is

    nabla_X Y = dY(X) - Gamma_A[X] A Gamma_A[Y] - Gamma_A[Y] A Gamma_A[X],

the projection of the flat derivative of the horizontal lifts in GL(n).
What the projection discards is the vertical tensor ``T(X, Y)``.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import NotSPDError, NumericError
from .matcore import as_spd, as_sym, check_same_shape, eig_sym, symmetrize
from .metric import project
from .sylvester import gamma_spectral

_SQRT_EPS = np.sqrt(np.finfo(float).eps)
_MAX_HALVINGS = 8


def _sym(M):
    return 0.5 * (M + M.T)


@dataclass(frozen=True)
class VectorField:
    """A smooth symmetric-matrix-valued field on SPD(n).

    Attributes
    ----------
    evaluate : callable
        ``A -> Y(A)``; must return a symmetric matrix and be reentrant.
    differential : callable, optional
        ``(A, X) -> dY_A(X)``, linear in ``X``. Finite differences are used
        when it is missing.
    label : str
    """

    evaluate: Callable[[np.ndarray], np.ndarray]
    differential: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None
    label: str = ""

    def __call__(self, A):
        return as_sym(self.evaluate(A))


def constant_field(C, label="constant"):
    C = as_sym(C)
    return VectorField(lambda A: C, lambda A, X: np.zeros_like(C), label)


def identity_field():
    return VectorField(lambda A: A, lambda A, X: X, "identity")


def polynomial_field(c0, c1, c2, K, label="polynomial"):
    """Field ``c0 A + c1 A^2 + c2 sym(A K A)`` with its exact differential."""
    K = as_sym(K)

    def evaluate(A):
        return c0 * A + c1 * A @ A + c2 * _sym(A @ K @ A)

    def differential(A, X):
        return c0 * X + c1 * (X @ A + A @ X) + c2 * _sym(X @ K @ A + A @ K @ X)

    return VectorField(evaluate, differential, label)


def fd_step(base, direction):
    """Central-difference step ``sqrt(eps) (1 + |base|) / (1 + |direction|)``."""
    return _SQRT_EPS * (1 + np.linalg.norm(base)) / (1 + np.linalg.norm(direction))


def directional_derivative(Y, A, X):
    """``dY_A(X)``: exact when ``Y`` carries a differential, else central FD.

    The finite-difference step starts at :func:`fd_step` and is halved (at
    most eight times) while ``A +- h X`` leaves the SPD cone.
    """
    A, X = as_spd(A), as_sym(X)
    check_same_shape(A, X)
    if Y.differential is not None:
        return as_sym(Y.differential(A, X))
    h = fd_step(A, X)
    for _ in range(_MAX_HALVINGS + 1):
        try:
            plus, minus = as_spd(A + h * X), as_spd(A - h * X)
        except NotSPDError:
            h *= 0.5
            continue
        return (Y(plus) - Y(minus)) / (2 * h)
    raise NumericError("finite-difference step keeps leaving the SPD cone")


def connection_terms(A, X, Y):
    """Second-order part ``Gamma[X] A Gamma[Y] + Gamma[Y] A Gamma[X]``."""
    spec = eig_sym(A)
    GX = gamma_spectral(spec, X)
    GY = gamma_spectral(spec, Y)
    return _sym(GX @ A @ GY + GY @ A @ GX)


def covariant_derivative(X_field, Y_field, A):
    """``nabla_X Y`` at ``A`` for two vector fields."""
    A = as_spd(A)
    X, Y = X_field(A), Y_field(A)
    dY = directional_derivative(Y_field, A, X)
    return _sym(dY - connection_terms(A, X, Y))


def covariant_derivative_along(point, velocity, value, rate):
    """Covariant derivative of a field ``V(t)`` along a curve ``c(t)``.

    Parameters
    ----------
    point, velocity : array_like
        ``c(t)`` and ``c'(t)``.
    value, rate : array_like
        ``V(t)`` and its ordinary derivative ``V'(t)``.
    """
    A = as_spd(point)
    return _sym(as_sym(rate) - connection_terms(A, as_sym(velocity), as_sym(value)))


def lie_bracket(X_field, Y_field, A):
    """``[X, Y] = dY(X) - dX(Y)`` at ``A``."""
    A = as_spd(A)
    X, Y = X_field(A), Y_field(A)
    return _sym(
        directional_derivative(Y_field, A, X) - directional_derivative(X_field, A, Y)
    )


def tensor_T(L, X, Y):
    r"""Vertical tensor at the fiber point ``L``.

    .. math::
        T_L(X, Y) = L\,\Gamma_A\left[\Gamma_A[X]\Gamma_A[Y]
                    - \Gamma_A[Y]\Gamma_A[X]\right] A, \qquad A = L^T L

    Antisymmetric in ``(X, Y)`` and annihilated by ``dsigma``.
    """
    A = project(L)
    X, Y = as_sym(X), as_sym(Y)
    check_same_shape(A, X, Y)
    spec = eig_sym(A)
    GX, GY = gamma_spectral(spec, X), gamma_spectral(spec, Y)
    return np.asarray(L, dtype=float) @ gamma_spectral(spec, GX @ GY - GY @ GX) @ A


# -- total-space helpers ---------------------------------------------------


def lifted_field(Y_field):
    """Horizontal lift of a field: ``L -> L Gamma_{sigma(L)}[Y(sigma(L))]``."""

    def lifted(L):
        L = np.asarray(L, dtype=float)
        A = symmetrize(L.T @ L)
        G = gamma_spectral(eig_sym(A), Y_field(A))
        return L @ _sym(G)

    return lifted


def euclidean_derivative(F, L, V):
    """Central finite difference of a matrix map ``F`` at ``L`` along ``V``."""
    L = np.asarray(L, dtype=float)
    h = fd_step(L, V)
    return (F(L + h * V) - F(L - h * V)) / (2 * h)


def lifted_derivative(X_field, Y_field, L):
    """Flat derivative ``D_{X~} Y~`` of the lifted fields at ``L``."""
    Xl, Yl = lifted_field(X_field), lifted_field(Y_field)
    return euclidean_derivative(Yl, L, Xl(L))


def lifted_bracket(X_field, Y_field, L):
    """``[X~, Y~] = D_{X~} Y~ - D_{Y~} X~`` in the total space."""
    return lifted_derivative(X_field, Y_field, L) - lifted_derivative(
        Y_field, X_field, L
    )
