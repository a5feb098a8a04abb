"""Validated matrix helpers, symmetric eigendecomposition and square roots.

Matrices are plain :class:`numpy.ndarray` objects. The ``as_*`` functions
are the validation gates: they symmetrize where appropriate, check shape
and definiteness, and return a fresh float array.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, DimensionError, NotSPDError, NumericError

#: Relative positive-definiteness gate: ``lambda_min > EPS_PD * lambda_max``.
EPS_PD = 1e-12

# sanity bound on the eigensolver; a healthy LAPACK call is ~1e-15
_EIG_RESIDUAL_MAX = 1e-8


def _square(M, name="matrix"):
    M = np.array(M, dtype=float)
    if M.ndim < 2 or M.shape[-1] != M.shape[-2]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")
    return M


def check_same_shape(*mats):
    """Raise :class:`DimensionError` unless all matrices share one shape."""
    shapes = {np.shape(m)[-2:] for m in mats}
    if len(shapes) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(shapes)}")


def symmetrize(M):
    """Return the symmetric part ``(M + M^T) / 2`` of a square matrix."""
    M = _square(M)
    return 0.5 * (M + np.swapaxes(M, -1, -2))


def as_sym(X):
    """Validate a tangent vector: square, then symmetrized."""
    return symmetrize(X)


def as_spd(A):
    """Validate a point of SPD(n).

    The input is symmetrized first, then its spectrum is checked against
    the relative gate ``lambda_min > EPS_PD * lambda_max``.

    Raises
    ------
    DimensionError
        If ``A`` is not square.
    NotSPDError
        If the gate fails or the entries are not finite.
    """
    A = symmetrize(A)
    if not np.all(np.isfinite(A)):
        raise NotSPDError("matrix has non-finite entries")
    w = np.linalg.eigvalsh(A)
    lo, hi = w[..., 0], w[..., -1]
    if np.any(hi <= 0) or np.any(lo <= EPS_PD * hi):
        raise NotSPDError(
            f"matrix is not positive definite (lambda_min={np.min(lo):.3e}, "
            f"lambda_max={np.max(hi):.3e})"
        )
    return A


def as_lift(L):
    """Validate a point of the total space GL(n): ``|det L| > EPS_PD``."""
    L = _square(L, "lift")
    if np.any(np.abs(np.linalg.det(L)) <= EPS_PD):
        raise DegeneracyError("lift matrix is (numerically) singular")
    return L


def as_orthogonal(O, tol=1e-10):
    """Validate an orthogonal matrix, ``||O^T O - I||_F <= tol``."""
    O = _square(O, "orthogonal matrix")
    res = np.linalg.norm(O.T @ O - np.eye(O.shape[-1]))
    if res > tol:
        raise NotSPDError(f"matrix is not orthogonal (residual {res:.3e})")
    return O


@dataclass(frozen=True)
class Spectrum:
    """Eigenpairs of a symmetric matrix.

    Attributes
    ----------
    eigenvalues : ndarray, shape (..., n)
        Sorted ascending.
    eigenvectors : ndarray, shape (..., n, n)
        Orthogonal; column ``k`` pairs with ``eigenvalues[..., k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def apply(self, func):
        """Return ``Q diag(func(lambda)) Q^T``."""
        Q = self.eigenvectors
        return (Q * func(self.eigenvalues)[..., None, :]) @ np.swapaxes(Q, -1, -2)

    def reconstruct(self):
        return self.apply(lambda w: w)


def _orient(Q):
    # flip each column so its largest-magnitude entry is positive
    idx = np.argmax(np.abs(Q), axis=-2)[..., None, :]
    signs = np.sign(np.take_along_axis(Q, idx, axis=-2))
    signs[signs == 0] = 1.0
    return Q * signs


def eig_sym(S):
    """Eigendecomposition of a symmetric matrix (or a stack of them).

    Eigenvalues come back in ascending order and every eigenvector is
    oriented so that its largest-magnitude entry is positive, which makes
    the output a deterministic function of the input.

    Parameters
    ----------
    S : array_like, shape (..., n, n)
        Symmetric matrix. Only the symmetric part is used.

    Returns
    -------
    Spectrum

    Raises
    ------
    NumericError
        If LAPACK fails to converge or the reconstruction residual is
        implausibly large.
    """
    S = symmetrize(S)
    try:
        w, Q = np.linalg.eigh(S)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver failed: {exc}", residual=np.nan) from exc
    Q = _orient(Q)
    spec = Spectrum(w, Q)
    scale = 1.0 + np.linalg.norm(S, axis=(-2, -1))
    res = np.max(np.linalg.norm(spec.reconstruct() - S, axis=(-2, -1)) / scale)
    if not res <= _EIG_RESIDUAL_MAX:
        raise NumericError(f"eigendecomposition residual {res:.3e}", residual=res)
    return spec


def sqrt_spd(A):
    """Unique SPD square root ``Q diag(sqrt(lambda)) Q^T``."""
    return eig_sym(as_spd(A)).apply(np.sqrt)


def inv_sqrt_spd(A):
    """Inverse of :func:`sqrt_spd`, from the same eigendecomposition."""
    return eig_sym(as_spd(A)).apply(lambda w: 1.0 / np.sqrt(w))


def sqrt_product(A1, A2):
    """Square root of the non-symmetric product ``A1 @ A2``.

    ``A1 A2`` is similar to the SPD matrix ``A1^{1/2} A2 A1^{1/2}``, so

    .. math::
        (A_1 A_2)^{1/2} = A_1^{1/2} (A_1^{1/2} A_2 A_1^{1/2})^{1/2} A_1^{-1/2},

    which only needs symmetric eigensolves. The result has a strictly
    positive real spectrum.
    """
    A1, A2 = as_spd(A1), as_spd(A2)
    check_same_shape(A1, A2)
    spec = eig_sym(A1)
    s = spec.apply(np.sqrt)
    s_inv = spec.apply(lambda w: 1.0 / np.sqrt(w))
    inner = eig_sym(s @ A2 @ s).apply(lambda w: np.sqrt(np.clip(w, 0.0, None)))
    return s @ inner @ s_inv


def _rng(seed):
    return np.random.default_rng(seed)


def random_spd(n, seed=None, delta=0.1):
    """Seeded random SPD matrix ``M^T M + delta I`` with Gaussian ``M``."""
    if n < 1:
        raise DimensionError("n must be >= 1")
    M = _rng(seed).standard_normal((n, n))
    return M.T @ M + delta * np.eye(n)


def random_sym(n, seed=None):
    """Seeded random symmetric matrix with standard normal entries."""
    M = _rng(seed).standard_normal((n, n))
    return 0.5 * (M + M.T)


def random_orthogonal(n, seed=None):
    """Haar-distributed orthogonal matrix from a sign-corrected QR."""
    Q, R = np.linalg.qr(_rng(seed).standard_normal((n, n)))
    return Q * np.sign(np.diag(R))
