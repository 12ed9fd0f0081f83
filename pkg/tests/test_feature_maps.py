import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qkpca.feature_maps import FeatureMapSpec, MapKind, SaqkParams, encode
from qkpca.statevector import fidelity


def spec_for(kind, d=None, reps=2, theta=None):
    if kind == MapKind.SAQK:
        return FeatureMapSpec(kind=kind, params=SaqkParams(theta=tuple(theta)))
    return FeatureMapSpec(kind=kind, reps=reps)


class TestSpecValidation:
    def test_saqk_requires_params(self):
        with pytest.raises(ValueError, match="params"):
            FeatureMapSpec(kind=MapKind.SAQK)

    def test_non_saqk_rejects_params(self):
        with pytest.raises(ValueError):
            FeatureMapSpec(kind=MapKind.Z_MAP, params=SaqkParams(theta=(1.0,)))

    def test_reps_must_be_positive(self):
        with pytest.raises(ValueError):
            FeatureMapSpec(kind=MapKind.Z_MAP, reps=0)

    def test_params_must_be_finite(self):
        with pytest.raises(ValueError):
            SaqkParams(theta=(np.nan, 1.0))

    def test_dimension_mismatch_rejected(self):
        spec = spec_for(MapKind.SAQK, theta=[1.0, 1.0])
        with pytest.raises(ValueError, match="dimension"):
            encode(np.array([0.1, 0.2, 0.3]), spec)

    def test_kind_accepts_strings(self):
        assert FeatureMapSpec(kind="zz-map").kind is MapKind.ZZ_MAP


class TestSingleQubitClosedForms:
    def test_zmap_overlap_is_cos_squared(self):
        spec = FeatureMapSpec(kind=MapKind.Z_MAP, reps=1)
        for x, x2 in [(0.0, np.pi / 4), (0.3, 2.2), (1.0, 1.0)]:
            got = fidelity(encode([x], spec), encode([x2], spec))
            assert got == pytest.approx(np.cos(x - x2) ** 2, abs=1e-12)

    def test_zmap_quarter_pi_gives_half(self):
        spec = FeatureMapSpec(kind=MapKind.Z_MAP, reps=1)
        assert fidelity(encode([0.0], spec), encode([np.pi / 4], spec)) == pytest.approx(
            0.5, abs=1e-12
        )

    def test_saqk_theta_one_quarter_turn(self):
        spec = spec_for(MapKind.SAQK, theta=[1.0])
        assert fidelity(encode([np.pi / 2], spec), encode([0.0], spec)) == pytest.approx(
            0.5, abs=1e-12
        )

    def test_zzmap_on_one_qubit_reduces_to_zmap(self):
        zz = FeatureMapSpec(kind=MapKind.ZZ_MAP, reps=2)
        z = FeatureMapSpec(kind=MapKind.Z_MAP, reps=2)
        for x in (0.0, 0.7, 2.9):
            np.testing.assert_allclose(
                encode([x], zz).amplitudes, encode([x], z).amplitudes, atol=1e-12
            )


class TestSaqkDegenerate:
    def test_theta_zero_state_is_zero_up_to_phase(self):
        spec = spec_for(MapKind.SAQK, theta=[0.0, 0.0, 0.0])
        rng = np.random.default_rng(0)
        states = [encode(rng.uniform(0, np.pi, 3), spec) for _ in range(4)]
        for a in states:
            assert abs(a.amplitudes[0]) == pytest.approx(1.0, abs=1e-12)
            for b in states:
                assert fidelity(a, b) == pytest.approx(1.0, abs=1e-12)


class TestStructure:
    def test_encode_is_deterministic(self):
        spec = spec_for(MapKind.SAQK, theta=[0.8, -0.2])
        x = np.array([0.4, 2.0])
        np.testing.assert_array_equal(encode(x, spec).amplitudes, encode(x, spec).amplitudes)

    def test_unit_norm_for_all_kinds(self):
        rng = np.random.default_rng(1)
        x = rng.uniform(0, np.pi, 4)
        for kind in MapKind:
            spec = spec_for(kind, theta=rng.standard_normal(4))
            assert encode(x, spec).norm_squared() == pytest.approx(1.0, abs=1e-12)

    def test_self_fidelity_is_one(self):
        rng = np.random.default_rng(2)
        x = rng.uniform(0, np.pi, 3)
        for kind in (MapKind.Z_MAP, MapKind.ZZ_MAP):
            state = encode(x, spec_for(kind))
            assert fidelity(state, state) == pytest.approx(1.0, abs=1e-14)

    def test_gram_diagonal_is_exactly_one(self):
        from qkpca.kernels import quantum_kernel

        rng = np.random.default_rng(12)
        X = rng.uniform(0, np.pi, (5, 3))
        for kind in (MapKind.Z_MAP, MapKind.ZZ_MAP):
            K = quantum_kernel(X, spec_for(kind))
            assert np.array_equal(np.diag(K.values), np.ones(5))

    @pytest.mark.parametrize("kind", [MapKind.PAULI_X, MapKind.Z_MAP, MapKind.SAQK])
    def test_permutation_equivariance_of_unentangled_maps(self, kind):
        rng = np.random.default_rng(3)
        x = rng.uniform(0, np.pi, 3)
        y = rng.uniform(0, np.pi, 3)
        perm = np.array([2, 0, 1])
        theta = rng.standard_normal(3)
        spec = spec_for(kind, theta=theta)
        spec_perm = spec_for(kind, theta=theta[perm])
        before = fidelity(encode(x, spec), encode(y, spec))
        after = fidelity(encode(x[perm], spec_perm), encode(y[perm], spec_perm))
        assert after == pytest.approx(before, abs=1e-12)

    def test_saqk_continuity_in_theta(self):
        rng = np.random.default_rng(4)
        x = rng.uniform(0, np.pi, 3)
        theta = rng.standard_normal(3)
        a = encode(x, spec_for(MapKind.SAQK, theta=theta))
        b = encode(x, spec_for(MapKind.SAQK, theta=theta + 1e-6))
        assert fidelity(a, b) > 1 - 1e-8


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_zzmap_matches_explicit_circuit(seed):
    """The zz-map circuit agrees with a hand-rolled oracle composition."""
    import oracles

    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 5))
    reps = int(rng.integers(1, 3))
    x = rng.uniform(0, np.pi, d)
    ops = []
    for _ in range(reps):
        for i in range(d):
            ops.append(("h", i))
        for i in range(d):
            ops.append(("p", i, 2.0 * x[i]))
        for i in range(d - 1):
            ops.append(("cx", i, i + 1))
            ops.append(("p", i + 1, 2.0 * (np.pi - x[i]) * (np.pi - x[i + 1])))
            ops.append(("cx", i, i + 1))
    expected = oracles.apply_circuit_oracle(ops, d)
    got = encode(x, FeatureMapSpec(kind=MapKind.ZZ_MAP, reps=reps))
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-12)


def test_saqk_params_json_round_trip(tmp_path):
    params = SaqkParams(theta=(0.5, -1.25, 3.0))
    path = tmp_path / "params.json"
    params.save(path)
    assert SaqkParams.load(path) == params
    assert SaqkParams.from_json(params.to_json()) == params
