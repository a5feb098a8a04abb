"""Geodesics, exponential and logarithm maps, and how far geodesics extend.

SPD(n) with the Wasserstein metric is geodesically convex but incomplete:
the segment between two points always exists, while a ray ``exp_A(tX)``
leaves the cone at a finite ``t`` whenever ``Gamma_A[X]`` has a negative
eigenvalue.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError, NumericError
from .matcore import (
    EPS_PD,
    as_spd,
    as_sym,
    check_same_shape,
    eig_sym,
    sqrt_product,
)
from .sylvester import gamma_spectral


class _Unbounded:
    """Marker for a geodesic ray that never leaves SPD(n).

    Compares greater than every real number and supports no arithmetic.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED"

    def __str__(self):
        return "unbounded"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("UNBOUNDED")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Unbounded, ())


UNBOUNDED = _Unbounded()


def _sym(M):
    return 0.5 * (M + np.swapaxes(M, -1, -2))


def _endpoint_parts(A1, A2):
    A1, A2 = as_spd(A1), as_spd(A2)
    check_same_shape(A1, A2)
    R = sqrt_product(A1, A2)
    # (A2 A1)^{1/2} is the transpose of (A1 A2)^{1/2}
    return A1, A2, R + R.T


def geodesic_point(A1, A2, t):
    r"""Point at parameter ``t`` on the minimal geodesic from ``A1`` to ``A2``.

    .. math::
        \gamma(t) = (1-t)^2 A_1 + t(1-t)\left[(A_1A_2)^{1/2}
                    + (A_2A_1)^{1/2}\right] + t^2 A_2

    Parameters
    ----------
    A1, A2 : array_like, shape (n, n)
        SPD endpoints.
    t : float
        Curve parameter in ``[0, 1]``; use :func:`geodesic_ivp` to go past
        the endpoints.

    Returns
    -------
    ndarray, shape (n, n)
        An SPD matrix.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t={t} outside [0, 1]; use geodesic_ivp to extend", 1.0)
    A1, A2, M = _endpoint_parts(A1, A2)
    return as_spd((1 - t) ** 2 * A1 + t * (1 - t) * M + t**2 * A2)


def geodesic_velocity(A1, A2, t):
    """Derivative in ``t`` of :func:`geodesic_point`."""
    A1, A2, M = _endpoint_parts(A1, A2)
    return _sym(-2 * (1 - t) * A1 + (1 - 2 * t) * M + 2 * t * A2)


def log_map(A1, A2):
    """Wasserstein logarithm ``(A1 A2)^{1/2} + (A2 A1)^{1/2} - 2 A1``."""
    A1, A2, M = _endpoint_parts(A1, A2)
    return _sym(M - 2 * A1)


def max_extension(A, X):
    """Supremum of ``t`` for which ``exp_A(tX)`` stays in SPD(n).

    Returns ``-1 / lambda_min(Gamma_A[X])`` when that eigenvalue is
    negative and :data:`UNBOUNDED` otherwise.
    """
    A, X = as_spd(A), as_sym(X)
    check_same_shape(A, X)
    G = _sym(gamma_spectral(eig_sym(A), X))
    lam = np.linalg.eigvalsh(G)[0]
    if lam < 0:
        return float(-1.0 / lam)
    return UNBOUNDED


def exp_map(A, X):
    r"""Wasserstein exponential of ``X`` at ``A``.

    .. math::
        \exp_A X = A + X + \Gamma_A[X] A \Gamma_A[X]
                 = (I + \Gamma_A[X]) A (I + \Gamma_A[X])

    Defined while ``I + Gamma_A[X]`` is positive definite. Near the edge of
    that domain the result can be arbitrarily close to singular, so the
    output is not passed through the SPD gate. The factored form is the one
    evaluated.

    Raises
    ------
    DomainError
        If ``1 + lambda_min(Gamma_A[X]) <= EPS_PD``. ``eps_max`` on the
        error is the maximal extension of the ray through ``X``.
    """
    A, X = as_spd(A), as_sym(X)
    check_same_shape(A, X)
    G = _sym(gamma_spectral(eig_sym(A), X))
    lam = np.linalg.eigvalsh(G)[0]
    if 1.0 + lam <= EPS_PD:
        eps = float(-1.0 / lam)
        raise DomainError(
            f"X lies outside the domain of exp_A (eps_max={eps!r})", eps
        )
    # the factored form keeps the result PSD; the expanded one cancels
    # catastrophically near the boundary
    E = np.eye(A.shape[0]) + G
    return _sym(E @ A @ E)


def geodesic_ivp(A, X, t):
    """Geodesic with ``gamma(0) = A`` and ``gamma'(0) = X``, at time ``t``.

    Equals ``exp_map(A, t X)`` for ``0 <= t < max_extension(A, X)``.
    """
    if t < 0:
        raise DomainError(f"t={t} is negative", max_extension(A, X))
    eps = max_extension(A, X)
    if t >= eps:
        raise DomainError(f"t={t} reaches the maximal extension {eps}", eps)
    return exp_map(A, t * as_sym(X))


def radius(A):
    """``sqrt(lambda_min(A) / 2)``, continuous in ``A``.

    At the 2x2 identity this is ``sqrt(2)/2``.
    Note that the unit-speed ray along :func:`degenerate_direction` reaches
    the cone boundary at :func:`boundary_distance`, which is larger by a
    factor ``sqrt(2)``.
    """
    lam = eig_sym(as_spd(A)).eigenvalues[0]
    return float(np.sqrt(lam / 2.0))


def boundary_distance(A):
    """Shortest unit-speed time to the cone boundary, ``sqrt(lambda_min(A))``.

    This is the infimum of :func:`max_extension` over unit tangent vectors,
    attained along :func:`degenerate_direction`.
    """
    lam = eig_sym(as_spd(A)).eigenvalues[0]
    return float(np.sqrt(lam))


def degenerate_direction(A):
    """Tangent ``-2 lambda_min q q^T`` along which ``A`` degenerates fastest.

    ``q`` is the unit eigenvector of the smallest eigenvalue (lowest index
    on ties). ``Gamma_A`` of the result is ``-q q^T``, so the ray
    ``exp_A(tV)`` becomes singular at exactly ``t = 1``.
    """
    spec = eig_sym(as_spd(A))
    q = spec.eigenvectors[:, 0]
    return -2.0 * spec.eigenvalues[0] * np.outer(q, q)


def level_lift_endpoint(A1, A2):
    """Lift of ``A2`` joined to ``A1^{1/2}`` by a horizontal straight line.

    Returns ``A1^{-1/2} (A1 A2)^{1/2}``. The segment
    ``t L + (1 - t) A1^{1/2}`` is checked to stay non-degenerate at
    ``t = 0, 0.1, ..., 1``.

    Raises
    ------
    NumericError
        If a sampled point on the segment has non-positive determinant.
    """
    A1, A2 = as_spd(A1), as_spd(A2)
    check_same_shape(A1, A2)
    spec = eig_sym(A1)
    s = spec.apply(np.sqrt)
    s_inv = spec.apply(lambda w: 1.0 / np.sqrt(w))
    L = s_inv @ sqrt_product(A1, A2)
    for t in np.linspace(0.0, 1.0, 11):
        sign, _ = np.linalg.slogdet(t * L + (1 - t) * s)
        if sign <= 0:
            raise NumericError(f"level segment degenerates at t={t:.1f}")
    return L


def connecting_orthogonal(A1, A2, tol=1e-9):
    """Orthogonal ``P = A1^{-1/2} (A1 A2)^{1/2} A2^{-1/2}``.

    ``P A2^{1/2}`` is the level lift of ``A2`` over ``A1^{1/2}``; ``P`` is
    the rotation that aligns the two fibers optimally.
    """
    A1, A2 = as_spd(A1), as_spd(A2)
    check_same_shape(A1, A2)
    s1_inv = eig_sym(A1).apply(lambda w: 1.0 / np.sqrt(w))
    s2_inv = eig_sym(A2).apply(lambda w: 1.0 / np.sqrt(w))
    P = s1_inv @ sqrt_product(A1, A2) @ s2_inv
    res = np.linalg.norm(P.T @ P - np.eye(P.shape[0]))
    if res > tol:
        raise NumericError(f"P is not orthogonal (residual {res:.3e})", residual=res)
    return P


def speed(points, velocities):
    """Wasserstein norms of a stack of tangent vectors at a stack of points."""
    spec = eig_sym(points)
    G = gamma_spectral(spec, velocities)
    sq = 0.5 * np.einsum("...ij,...ij->...", G, velocities)
    return np.sqrt(np.clip(sq, 0.0, None))


def arc_length(A1, A2, panels=1000):
    """Length of the geodesic from ``A1`` to ``A2`` by composite Simpson.

    The curve and its velocity are evaluated in closed form on
    ``panels + 1`` nodes; the speed at each node uses the metric directly.
    """
    if panels < 2 or panels % 2:
        raise ValueError("panels must be a positive even integer")
    A1, A2, M = _endpoint_parts(A1, A2)
    t = np.linspace(0.0, 1.0, panels + 1)[:, None, None]
    pts = (1 - t) ** 2 * A1 + t * (1 - t) * M + t**2 * A2
    vel = -2 * (1 - t) * A1 + (1 - 2 * t) * M + 2 * t * A2
    return float(simpson(speed(_sym(pts), _sym(vel)), x=t[:, 0, 0]))


@dataclass(frozen=True)
class GeodesicSpec:
    """A geodesic given by its endpoints or by an initial velocity.

    Build with :meth:`between` or :meth:`from_velocity`. ``t_max`` is 1 for
    the endpoint form and the maximal extension for the velocity form.
    """

    start: np.ndarray
    end: np.ndarray = None
    velocity: np.ndarray = None
    t_max: object = 1.0

    @classmethod
    def between(cls, A1, A2):
        A1, A2 = as_spd(A1), as_spd(A2)
        check_same_shape(A1, A2)
        return cls(start=A1, end=A2, velocity=log_map(A1, A2), t_max=1.0)

    @classmethod
    def from_velocity(cls, A, X):
        A, X = as_spd(A), as_sym(X)
        return cls(start=A, velocity=X, t_max=max_extension(A, X))

    def point(self, t):
        if self.end is not None:
            return geodesic_point(self.start, self.end, t)
        return geodesic_ivp(self.start, self.velocity, t)
