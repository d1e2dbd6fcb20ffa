"""Tests for fixture states, seeded generators, and the state-file format."""

import numpy as np
import pytest

from bicorr import states
from bicorr.detect import classify_pure_by_rank, ppt_is_separable
from bicorr.qstate import (
    InvalidState,
    as_density_matrix,
    bloch_decompose,
    density_from_pure,
)
from bicorr.states import (
    ParseError,
    StateSpec,
    XiOutOfRange,
    bell_state,
    chen_state,
    density_of,
    dumps_state,
    haar_random_pure,
    load_state_file,
    loads_state,
    mixed_spec,
    pure_spec,
    random_mixed,
    random_product_pure,
    random_separable_mixed,
    save_state_file,
    werner,
)


class TestFixtures:
    def test_singlet_amplitudes(self):
        np.testing.assert_allclose(
            bell_state("psi-"), np.array([0, 1, -1, 0]) / np.sqrt(2), atol=1e-15
        )

    def test_phi_plus_amplitudes(self):
        np.testing.assert_allclose(
            bell_state("phi+"), np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-15
        )

    def test_all_bell_states_are_entangled(self):
        for which in ("phi+", "phi-", "psi+", "psi-"):
            assert classify_pure_by_rank(bell_state(which)).label == "Entangled"

    def test_unknown_bell_state(self):
        with pytest.raises(ValueError, match="unknown Bell state"):
            bell_state("omega")

    def test_chen_state_values(self):
        psi = chen_state()
        np.testing.assert_allclose(psi, np.array([1, 1, 0, 1]) / np.sqrt(3), atol=1e-15)
        bf = bloch_decompose(density_from_pure(psi))
        np.testing.assert_allclose(bf.a, np.array([2, 0, 1]) / 3, atol=1e-12)
        assert abs(np.linalg.norm(bf.a) ** 2 - 5 / 9) < 1e-12
        assert classify_pure_by_rank(psi).label == "Entangled"


class TestWerner:
    def test_endpoints(self):
        np.testing.assert_allclose(werner(0.0), np.eye(4) / 4, atol=1e-15)
        np.testing.assert_allclose(
            werner(1.0), density_from_pure(bell_state("psi-")), atol=1e-15
        )

    def test_midpoint_entries(self):
        rho = werner(0.5)
        np.testing.assert_allclose(np.diag(rho).real, [0.125, 0.375, 0.375, 0.125])
        assert rho[1, 2] == -0.25
        assert rho[2, 1] == -0.25

    def test_bloch_form(self):
        for xi in np.linspace(0, 1, 11):
            bf = bloch_decompose(werner(xi))
            np.testing.assert_allclose(bf.a, 0.0, atol=1e-12)
            np.testing.assert_allclose(bf.b, 0.0, atol=1e-12)
            np.testing.assert_allclose(bf.f, -xi * np.eye(3), atol=1e-12)

    @pytest.mark.parametrize("xi", [-0.01, 1.01, 5.0])
    def test_rejects_xi_outside_range(self, xi):
        with pytest.raises(XiOutOfRange):
            werner(xi)


class TestGenerators:
    def test_haar_states_are_normalized(self):
        for seed in range(200):
            assert abs(np.linalg.norm(haar_random_pure(seed)) - 1) < 1e-12

    def test_generators_are_seed_deterministic(self):
        for seed in (0, 7, 123456789):
            np.testing.assert_array_equal(haar_random_pure(seed), haar_random_pure(seed))
            np.testing.assert_array_equal(
                random_product_pure(seed), random_product_pure(seed)
            )
            np.testing.assert_array_equal(
                random_separable_mixed(seed, 3), random_separable_mixed(seed, 3)
            )
            np.testing.assert_array_equal(random_mixed(seed, 3), random_mixed(seed, 3))

    def test_different_seeds_differ(self):
        assert not np.allclose(haar_random_pure(1), haar_random_pure(2))

    def test_product_states_have_zero_correlation_matrix(self):
        from bicorr.correlation import correlation_matrix

        for seed in range(200):
            cm = correlation_matrix(density_from_pure(random_product_pure(seed)))
            assert np.abs(cm.c).max() < 1e-10

    def test_separable_mixtures_pass_validation_and_ppt(self):
        for seed in range(200):
            rho = random_separable_mixed(seed, 1 + seed % 6)
            as_density_matrix(rho)
            assert ppt_is_separable(rho)

    def test_pure_state_mixtures_pass_validation(self):
        for seed in range(200):
            as_density_matrix(random_mixed(seed, 1 + seed % 6))

    def test_component_count_must_be_positive(self):
        with pytest.raises(ValueError):
            random_separable_mixed(0, 0)


class TestStateFiles:
    def test_pure_round_trip(self, tmp_path):
        spec = pure_spec(chen_state(), label="chen")
        path = tmp_path / "chen.json"
        save_state_file(path, spec)
        loaded = load_state_file(path)
        assert loaded.kind == "pure"
        assert loaded.label == "chen"
        np.testing.assert_array_equal(loaded.amplitudes, spec.amplitudes)

    def test_mixed_round_trip_is_exact(self, tmp_path):
        spec = mixed_spec(random_mixed(9), label="mixture")
        path = tmp_path / "mixed.json"
        save_state_file(path, spec)
        loaded = load_state_file(path)
        np.testing.assert_array_equal(loaded.matrix, spec.matrix)
        np.testing.assert_array_equal(density_of(loaded), density_of(spec))

    def test_density_of_pure_spec(self):
        spec = pure_spec(bell_state("psi-"))
        np.testing.assert_allclose(
            density_of(spec), density_from_pure(bell_state("psi-")), atol=1e-15
        )

    def test_rejects_malformed_json(self):
        with pytest.raises(ParseError, match="invalid JSON"):
            loads_state("{not json")

    def test_rejects_unknown_kind(self):
        with pytest.raises(ParseError, match="kind"):
            loads_state('{"kind": "pureish", "amplitudes": []}')

    def test_rejects_wrong_amplitude_count(self):
        with pytest.raises(ParseError, match="pairs"):
            loads_state('{"kind": "pure", "amplitudes": [[1, 0], [0, 0]]}')

    def test_rejects_missing_matrix(self):
        with pytest.raises(ParseError, match="matrix"):
            loads_state('{"kind": "mixed"}')

    def test_invalid_state_is_reported_by_validation(self):
        doc = dumps_state(StateSpec(kind="pure", amplitudes=np.array([1, 0, 0, 0])))
        bad = doc.replace("1.0", "0.9", 1)
        with pytest.raises(InvalidState):
            loads_state(bad)
