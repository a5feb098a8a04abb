"""The Sylvester operator ``Gamma_A[X]``: the solution of ``A G + G A = X``.

Every metric, connection and curvature formula in the package is built from
this operator. The main path diagonalizes ``A = Q diag(lambda) Q^T`` once and
divides ``Q^T X Q`` entrywise by ``lambda_i + lambda_j``. A dense Kronecker
solve, :func:`gamma_kron`, is kept as an independent reference.
"""

from dataclasses import dataclass

import numpy as np

from .matcore import Spectrum, as_spd, as_sym, check_same_shape, eig_sym


@dataclass(frozen=True)
class GammaResult:
    """Solution of ``A G + G A = X`` together with its Frobenius residual."""

    value: np.ndarray
    residual: float


def gamma_spectral(spec: Spectrum, X):
    """Apply the eigenbasis solve for a precomputed spectrum of ``A``.

    ``X`` may be any square matrix (or stack); nothing here assumes
    symmetry, so this is also the path used for commutators.
    """
    Q = spec.eigenvectors
    w = spec.eigenvalues
    Qt = np.swapaxes(Q, -1, -2)
    C = Qt @ X @ Q
    E = C / (w[..., :, None] + w[..., None, :])
    return Q @ E @ Qt


def gamma_raw(A, X):
    """``Gamma_A[X]`` for SPD ``A`` and an arbitrary square ``X``."""
    return gamma_spectral(eig_sym(A), np.asarray(X, dtype=float))


def gamma(A, X):
    """Solve ``A G + G A = X`` for SPD ``A`` and symmetric ``X``.

    Parameters
    ----------
    A : array_like, shape (n, n)
        SPD coefficient.
    X : array_like, shape (n, n)
        Symmetric right-hand side.

    Returns
    -------
    GammaResult
        ``value`` is symmetric; ``residual`` is ``||A G + G A - X||_F``.
    """
    A, X = as_spd(A), as_sym(X)
    check_same_shape(A, X)
    G = gamma_spectral(eig_sym(A), X)
    G = 0.5 * (G + G.T)
    residual = float(np.linalg.norm(A @ G + G @ A - X))
    return GammaResult(G, residual)


def gamma_inverse_point(A, X):
    """``Gamma_{A^{-1}}[X]`` computed as ``A Gamma_A[X] A`` without inverting."""
    A = as_spd(A)
    G = gamma(A, X).value
    out = A @ G @ A
    return 0.5 * (out + out.T)


def gamma_kron(A, X):
    """Reference solve of ``A G + G A = X`` through the Kronecker system.

    Builds ``(I kron A + A^T kron I) vec(G) = vec(X)`` and hands it to a
    dense LU solve. Costs O(n^6) and accepts non-symmetric ``X``; use it to
    check :func:`gamma`, not in production.
    """
    A = np.asarray(A, dtype=float)
    X = np.asarray(X, dtype=float)
    check_same_shape(A, X)
    n = A.shape[0]
    eye = np.eye(n)
    K = np.kron(eye, A) + np.kron(A.T, eye)
    # column-major vec
    g = np.linalg.solve(K, X.reshape(-1, order="F"))
    return g.reshape((n, n), order="F")
