import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bures_spd import matcore as mc
from bures_spd import metric as mt
from bures_spd.checks import random_lift
from bures_spd.errors import DegeneracyError, DimensionError, NotSPDError

from conftest import S

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(2, 8)


def test_inner_examples():
    X = mc.random_sym(3, 2)
    assert math.isclose(mt.inner(np.eye(3), X, X), np.trace(X @ X) / 4, rel_tol=1e-14)
    assert mt.inner(np.eye(2), S(2, 0, 1), S(2, 0, 0)) == 0.0


def test_norm_examples():
    assert mt.norm(np.eye(2), np.zeros((2, 2))) == 0.0
    assert math.isclose(mt.norm(np.eye(2), S(2, 0, 0)), 1.0, rel_tol=1e-15)
    A, X = mc.random_spd(3, 4), mc.random_sym(3, 5)
    assert math.isclose(mt.norm(A, -2.5 * X), 2.5 * mt.norm(A, X), rel_tol=1e-13)


@given(dims, seeds)
def test_inner_symmetric_and_positive(n, seed):
    rng = np.random.default_rng(seed)
    A, X, Y = mc.random_spd(n, rng), mc.random_sym(n, rng), mc.random_sym(n, rng)
    xy, yx = mt.inner(A, X, Y), mt.inner(A, Y, X)
    assert abs(xy - yx) <= 1e-12 * (1 + mt.norm(A, X) * mt.norm(A, Y))
    assert mt.inner(A, X, X) > 0
    # the two trace forms agree
    from bures_spd.sylvester import gamma
    GX, GY = gamma(A, X).value, gamma(A, Y).value
    assert math.isclose(xy, np.trace(GY @ A @ GX), rel_tol=1e-9, abs_tol=1e-12)


def test_distance_examples():
    A = mc.random_spd(3, 1)
    assert mt.distance(A, A) < 1e-6
    for n, a, b in [(1, 2.0, 5.0), (3, 1.0, 9.0), (4, 0.25, 3.0)]:
        expected = math.sqrt(n) * abs(math.sqrt(a) - math.sqrt(b))
        assert math.isclose(mt.distance(a * np.eye(n), b * np.eye(n)), expected, rel_tol=1e-12)
    d = mt.distance(np.diag([1.0, 4.0]), np.diag([4.0, 1.0]))
    assert math.isclose(d, math.sqrt(2), rel_tol=1e-14)


@given(dims, seeds)
def test_distance_metric_axioms(n, seed):
    rng = np.random.default_rng(seed)
    A, B, C = (mc.random_spd(n, rng) for _ in range(3))
    dAB = mt.distance(A, B)
    assert abs(dAB - mt.distance(B, A)) <= 1e-9 * max(1, dAB)
    assert mt.distance(A, C) <= dAB + mt.distance(B, C) + 1e-9


def test_distance_errors():
    with pytest.raises(DimensionError):
        mt.distance(np.eye(2), np.eye(3))
    with pytest.raises(NotSPDError):
        mt.distance(np.eye(2), -np.eye(2))


def test_project_examples():
    assert np.allclose(mt.project(np.eye(3)), np.eye(3))
    O = mc.random_orthogonal(4, 0)
    assert np.allclose(mt.project(O), np.eye(4))
    A = mc.random_spd(4, 1)
    assert np.allclose(mt.project(mc.sqrt_spd(A)), A)
    with pytest.raises(DegeneracyError):
        mt.project(np.diag([1.0, 0.0]))


def test_horizontal_lift_examples():
    X = mc.random_sym(3, 3)
    assert np.allclose(mt.horizontal_lift(np.eye(3), X), X / 2)
    A = mc.random_spd(3, 4)
    R = mc.sqrt_spd(A)
    assert np.allclose(mt.horizontal_lift(R, A), R / 2)


@given(dims, seeds)
def test_submersion(n, seed):
    rng = np.random.default_rng(seed)
    L = random_lift(n, rng)
    A = mt.project(L)
    X, Y = mc.random_sym(n, rng), mc.random_sym(n, rng)
    Xt, Yt = mt.horizontal_lift(L, X), mt.horizontal_lift(L, Y)
    scale = mt.norm(A, X) * mt.norm(A, Y)
    assert abs(np.sum(Xt * Yt) - mt.inner(A, X, Y)) <= 1e-9 * scale
    assert np.allclose(mt.dsigma(L, Xt), X, atol=1e-9 * np.linalg.norm(X))


def test_dsigma_examples(rng):
    L = random_lift(3, rng)
    assert np.array_equal(mt.dsigma(L, np.zeros((3, 3))), np.zeros((3, 3)))
    F = mc.random_sym(3, rng)
    F = np.triu(F) - np.triu(F).T  # antisymmetric
    V = np.linalg.inv(L).T @ F
    assert np.allclose(mt.dsigma(L, V), 0, atol=1e-12)


def test_act(rng):
    A, B = mc.random_spd(4, rng), mc.random_spd(4, rng)
    assert np.allclose(mt.act(np.eye(4), A), A)
    O1, O2 = mc.random_orthogonal(4, rng), mc.random_orthogonal(4, rng)
    assert np.allclose(mt.act(O1 @ O2, A), mt.act(O1, mt.act(O2, A)))
    d = mt.distance(A, B)
    assert math.isclose(mt.distance(mt.act(O1, A), mt.act(O1, B)), d, rel_tol=1e-9)
    with pytest.raises(NotSPDError):
        mt.act(2 * np.eye(4), A)
