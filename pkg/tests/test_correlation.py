"""Tests for covariances and the correlation matrix, including the
cross-validation of the trace-formula route against the matrix shortcut."""

import numpy as np
import pytest

from bicorr import states
from bicorr.correlation import (
    CorrMatrix,
    ObservablePair,
    correlation_matrix,
    covariance_direct,
    covariance_via_c,
)
from bicorr.detect import schmidt_rank
from bicorr.linalg import det3
from bicorr.qstate import BlochOutOfBall, bloch_decompose, density_from_pure

CHEN_C = (2.0 / 9.0) * np.array([[1, 0, -2], [0, -3, 0], [2, 0, 2]], dtype=float)
Z = np.array([0.0, 0.0, 1.0])


def random_pair(rng, unit=False):
    x = rng.standard_normal(3)
    y = rng.standard_normal(3)
    x /= np.linalg.norm(x)
    y /= np.linalg.norm(y)
    if not unit:
        x *= rng.random()
        y *= rng.random()
    return ObservablePair(x=x, y=y)


def random_density(seed):
    kind = seed % 3
    if kind == 0:
        return states.random_mixed(seed, 2 + seed % 4)
    if kind == 1:
        return states.random_separable_mixed(seed, 1 + seed % 5)
    return density_from_pure(states.haar_random_pure(seed))


class TestObservablePair:
    def test_accepts_ball_vectors(self):
        pair = ObservablePair(x=[0.3, 0, 0], y=[0, 0, 1.0])
        assert pair.x.shape == (3,)

    def test_rejects_vector_outside_ball(self):
        with pytest.raises(BlochOutOfBall):
            ObservablePair(x=[2.0, 0, 0], y=[0, 0, 1.0])


class TestCovarianceDirect:
    def test_constant_observable_has_zero_covariance(self):
        for seed in range(10):
            rho = random_density(seed)
            pair = ObservablePair(x=np.zeros(3), y=Z)
            assert abs(covariance_direct(rho, pair)) < 1e-12

    def test_singlet_aligned_pair(self):
        rho = density_from_pure(states.bell_state("psi-"))
        value = covariance_direct(rho, ObservablePair(x=Z, y=Z))
        assert abs(value + 0.25) < 1e-12

    def test_werner_half_x_axis(self):
        value = covariance_direct(
            states.werner(0.5), ObservablePair(x=[1.0, 0, 0], y=[1.0, 0, 0])
        )
        assert abs(value + 0.125) < 1e-12


class TestCorrelationMatrix:
    def test_singlet(self):
        cm = correlation_matrix(density_from_pure(states.bell_state("psi-")))
        np.testing.assert_allclose(cm.c, -np.eye(3), atol=1e-12)
        assert cm.rank == 3
        np.testing.assert_allclose(cm.singular_values, np.ones(3), atol=1e-12)

    def test_chen(self):
        cm = correlation_matrix(density_from_pure(states.chen_state()))
        np.testing.assert_allclose(cm.c, CHEN_C, atol=1e-12)
        assert cm.rank == 3

    def test_product_states_have_zero_matrix(self):
        for seed in range(100):
            cm = correlation_matrix(density_from_pure(states.random_product_pure(seed)))
            assert np.abs(cm.c).max() < 1e-10
            assert cm.rank == 0

    def test_werner_family(self):
        for xi in (0.0, 0.25, 0.5, 1.0):
            cm = correlation_matrix(states.werner(xi))
            np.testing.assert_allclose(cm.c, -xi * np.eye(3), atol=1e-12)


class TestCovarianceViaC:
    def test_minus_identity(self):
        cm = correlation_matrix(density_from_pure(states.bell_state("psi-")))
        assert abs(covariance_via_c(cm, ObservablePair(x=Z, y=Z)) + 0.25) < 1e-12

    def test_zero_matrix(self):
        cm = CorrMatrix(c=np.zeros((3, 3)), singular_values=np.zeros(3), rank=0)
        rng = np.random.default_rng(31)
        for _ in range(20):
            assert covariance_via_c(cm, random_pair(rng)) == 0.0

    def test_chen_zero_plane(self):
        # With y on the first axis, c y is proportional to (1, 0, 2); any x in
        # the orthogonal plane spanned by (2, 0, -1) and (0, 1, 0) gives zero.
        cm = correlation_matrix(density_from_pure(states.chen_state()))
        x = np.array([2.0, 0.0, -1.0]) / np.sqrt(5.0)
        pair = ObservablePair(x=x, y=[1.0, 0, 0])
        assert abs(covariance_via_c(cm, pair)) < 1e-12


class TestPathEquivalence:
    """The trace formula and the correlation-matrix shortcut must agree."""

    def test_random_states_and_pairs(self):
        rng = np.random.default_rng(32)
        for seed in range(1000):
            rho = random_density(seed)
            pair = random_pair(rng)
            direct = covariance_direct(rho, pair)
            shortcut = covariance_via_c(correlation_matrix(rho), pair)
            assert abs(direct - shortcut) < 1e-10

    def test_bilinearity(self):
        rng = np.random.default_rng(33)
        for seed in range(100):
            cm = correlation_matrix(random_density(seed))
            x1, x2, y = (rng.standard_normal(3) for _ in range(3))
            x1 /= 4 * np.linalg.norm(x1)
            x2 /= 4 * np.linalg.norm(x2)
            y /= np.linalg.norm(y)
            alpha, beta = rng.random(2)
            combined = covariance_via_c(cm, ObservablePair(x=alpha * x1 + beta * x2, y=y))
            parts = alpha * covariance_via_c(
                cm, ObservablePair(x=x1, y=y)
            ) + beta * covariance_via_c(cm, ObservablePair(x=x2, y=y))
            assert abs(combined - parts) < 1e-12


class TestPureStateDichotomy:
    def test_haar_states_have_full_rank_and_match_schmidt_oracle(self):
        for seed in range(1000):
            psi = states.haar_random_pure(seed)
            cm = correlation_matrix(density_from_pure(psi))
            assert cm.rank in (0, 3)
            assert (cm.rank == 0) == (schmidt_rank(psi) == 1)

    def test_determinant_identity(self):
        # det(c) = -(|b|^2 - 1)^2 for every pure state.
        for seed in range(1000):
            rho = density_from_pure(states.haar_random_pure(seed))
            cm = correlation_matrix(rho)
            b = bloch_decompose(rho).b
            assert abs(det3(cm.c) + (np.linalg.norm(b) ** 2 - 1) ** 2) < 1e-9
