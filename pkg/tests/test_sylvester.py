import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bures_spd import matcore as mc
from bures_spd import sylvester as sy
from bures_spd.errors import DimensionError, NotSPDError

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 10)


def _draw(n, seed):
    rng = np.random.default_rng(seed)
    return mc.random_spd(n, rng), mc.random_sym(n, rng), mc.random_sym(n, rng), rng


def test_identity_halves():
    X = mc.random_sym(4, 0)
    assert np.allclose(sy.gamma(np.eye(4), X).value, X / 2)


def test_hand_example_against_kronecker():
    A = np.diag([1.0, 3.0])
    X = np.array([[2.0, 4.0], [4.0, 6.0]])
    expected = np.ones((2, 2))
    assert np.allclose(sy.gamma_kron(A, X), expected, atol=1e-14)
    res = sy.gamma(A, X)
    assert np.allclose(res.value, expected, atol=1e-14)
    assert res.residual < 1e-14


def test_scaling_example():
    A, X, _, _ = _draw(3, 5)
    assert np.allclose(sy.gamma(2 * A, X).value, sy.gamma(A, X).value / 2, atol=1e-14)


def test_inverse_point_examples():
    X = mc.random_sym(3, 1)
    assert np.allclose(sy.gamma_inverse_point(np.eye(3), X), X / 2)
    assert np.allclose(sy.gamma_inverse_point(2 * np.eye(2), np.eye(2)), np.eye(2))


@given(dims, seeds)
def test_matches_kronecker_oracle(n, seed):
    A, X, _, _ = _draw(n, seed)
    res = sy.gamma(A, X)
    oracle = sy.gamma_kron(A, X)
    assert np.linalg.norm(res.value - oracle) <= 1e-10 * max(1, np.linalg.norm(oracle))
    assert res.residual <= 1e-10 * (1 + np.linalg.norm(X))
    assert np.array_equal(res.value, res.value.T)


@given(st.integers(2, 10), seeds)
def test_algebraic_identities(n, seed):
    A, X, Y, rng = _draw(n, seed)
    B = mc.random_spd(n, rng)
    Q = mc.random_orthogonal(n, rng)
    k = 3.7
    g = lambda P, Z: sy.gamma(P, Z).value  # noqa: E731
    GX = g(A, X)
    tol = 1e-9 * (1 + np.linalg.norm(GX))
    assert np.linalg.norm(g(A, X + k * Y) - GX - k * g(A, Y)) <= tol * (1 + k)
    GAB = g(A + B, X)
    assert np.linalg.norm(GAB - GX + sy.gamma_raw(A, B @ GAB + GAB @ B)) <= tol
    assert np.linalg.norm(sy.gamma_kron(A, A @ X) - A @ GX) <= tol * np.linalg.norm(A)
    assert np.linalg.norm(sy.gamma_kron(A, X @ A) - GX @ A) <= tol * np.linalg.norm(A)
    inv = sy.gamma_inverse_point(A, X)
    assert np.linalg.norm(g(np.linalg.inv(A), X) - inv) <= 1e-9 * np.linalg.norm(inv)
    assert np.linalg.norm(g(Q @ A @ Q.T, Q @ X @ Q.T) - Q @ GX @ Q.T) <= tol


def test_batched_spectral_matches_loop(rng):
    A = mc.random_spd(3, rng)
    Xs = np.stack([mc.random_sym(3, rng) for _ in range(4)])
    batch = sy.gamma_spectral(mc.eig_sym(A), Xs)
    for X, G in zip(Xs, batch):
        assert np.allclose(G, sy.gamma(A, X).value, atol=1e-14)


def test_errors():
    with pytest.raises(NotSPDError):
        sy.gamma(np.diag([1.0, -2.0]), np.eye(2))
    with pytest.raises(DimensionError):
        sy.gamma(np.eye(2), np.eye(3))
