"""Normal Jacobi fields along Wasserstein geodesics.

A Jacobi field with ``J(0) = 0`` and ``nabla J(0) = Y`` along the geodesic
``exp_A(tX)`` is the variation ``d/ds exp_A(t(X + sY))`` at ``s = 0``. Since
the exponential is quadratic in its argument this has a closed form.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geodesy import exp_map, geodesic_ivp, max_extension
from .matcore import as_spd, as_sym, check_same_shape, eig_sym
from .metric import inner, norm
from .sylvester import gamma_spectral

NORMAL_TOL = 1e-9


@dataclass(frozen=True)
class JacobiSpec:
    """Initial data ``(A, X, Y)`` of a normal Jacobi field.

    ``X`` is the geodesic velocity at ``A`` and ``Y`` the initial covariant
    derivative of the field; ``g_A(X, Y)`` must vanish. Use :meth:`normal`
    to build one from an arbitrary ``Y``.
    """

    base: np.ndarray
    velocity: np.ndarray
    seed_derivative: np.ndarray

    def __post_init__(self):
        A = as_spd(self.base)
        X, Y = as_sym(self.velocity), as_sym(self.seed_derivative)
        check_same_shape(A, X, Y)
        object.__setattr__(self, "base", A)
        object.__setattr__(self, "velocity", X)
        object.__setattr__(self, "seed_derivative", Y)
        xy = inner(A, X, Y)
        if abs(xy) > NORMAL_TOL * (1 + norm(A, X) * norm(A, Y)):
            raise ValueError(f"seed derivative is not normal: g(X, Y) = {xy:.3e}")

    @classmethod
    def normal(cls, A, X, Y):
        """Project ``Y`` onto the ``g_A``-orthogonal complement of ``X``."""
        A, X, Y = as_spd(A), as_sym(X), as_sym(Y)
        xx = inner(A, X, X)
        if xx > 0:
            Y = Y - (inner(A, X, Y) / xx) * X
        return cls(A, X, Y)

    @property
    def t_max(self):
        return max_extension(self.base, self.velocity)


def _check_t(spec, t):
    eps = spec.t_max
    if t < 0 or t >= eps:
        raise DomainError(f"t={t} outside [0, {eps})", eps)


def jacobi_field(spec, t):
    r"""Value of the normal Jacobi field at time ``t``.

    .. math::
        J(t) = tY + t^2\left(\Gamma_A[X] A \Gamma_A[Y]
               + \Gamma_A[Y] A \Gamma_A[X]\right)
    """
    _check_t(spec, t)
    A, X, Y = spec.base, spec.velocity, spec.seed_derivative
    sp = eig_sym(A)
    GX, GY = gamma_spectral(sp, X), gamma_spectral(sp, Y)
    J = t * Y + t**2 * (GX @ A @ GY + GY @ A @ GX)
    return 0.5 * (J + J.T)


def variation_oracle(spec, t, h=1e-4):
    """Central difference of ``s -> exp_A(t(X + sY))`` at ``s = 0``."""
    A, X, Y = spec.base, spec.velocity, spec.seed_derivative
    plus = exp_map(A, t * (X + h * Y))
    minus = exp_map(A, t * (X - h * Y))
    return (plus - minus) / (2 * h)


def min_jacobi_norm(spec, t_grid):
    """Smallest ``|J(t)| / t`` over a grid of positive times.

    The norm is taken at ``gamma(t)``. A strictly positive value certifies
    that ``J`` does not vanish on the grid, i.e. no conjugate point there.
    """
    A, X = spec.base, spec.velocity
    best = np.inf
    for t in t_grid:
        if t <= 0:
            raise DomainError(f"grid time {t} must be positive", spec.t_max)
        J = jacobi_field(spec, t)
        best = min(best, norm(geodesic_ivp(A, X, t), J) / t)
    return float(best)
