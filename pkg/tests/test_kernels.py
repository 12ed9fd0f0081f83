import json

import numpy as np
import pytest

from qkpca.feature_maps import FeatureMapSpec, MapKind, SaqkParams
from qkpca.kernels import (
    KernelMatrix,
    alignment,
    cross_kernel,
    default_sigma,
    load_kernel,
    quantum_kernel,
    rbf_kernel,
    save_kernel,
)

import oracles

ALL_SPECS = {
    "pauli-x": FeatureMapSpec(kind=MapKind.PAULI_X),
    "z-map": FeatureMapSpec(kind=MapKind.Z_MAP, reps=2),
    "zz-map": FeatureMapSpec(kind=MapKind.ZZ_MAP, reps=2),
}


def saqk_spec(d, theta=None):
    theta = np.ones(d) if theta is None else np.asarray(theta)
    return FeatureMapSpec(kind=MapKind.SAQK, params=SaqkParams(theta=tuple(theta)))


class TestRbf:
    def test_unit_diagonal(self):
        rng = np.random.default_rng(0)
        X = rng.standard_normal((6, 3))
        K = rbf_kernel(X, 1.3)
        np.testing.assert_array_equal(np.diag(K.values), np.ones(6))

    def test_known_distance_value(self):
        sigma = 0.8
        X = np.array([[0.0], [sigma * np.sqrt(2.0)]])  # squared distance 2 sigma^2
        K = rbf_kernel(X, sigma)
        assert K.values[0, 1] == pytest.approx(np.exp(-1.0), abs=1e-12)

    def test_wide_sigma_saturates(self):
        rng = np.random.default_rng(1)
        X = rng.uniform(-1, 1, (5, 4))
        K = rbf_kernel(X, 1e6)
        assert np.all(np.abs(K.values - 1.0) < 1e-6)

    def test_rejects_nonpositive_sigma(self):
        with pytest.raises(ValueError):
            rbf_kernel(np.zeros((2, 1)), 0.0)

    def test_default_sigma_matches_scale_rule(self):
        rng = np.random.default_rng(2)
        X = rng.standard_normal((40, 7))
        sigma = default_sigma(X)
        assert sigma**2 == pytest.approx(7 * X.var() / 2)


class TestQuantumKernel:
    def test_one_qubit_zmap_closed_form(self):
        X = np.array([[0.0], [np.pi / 4], [np.pi / 2]])
        K = quantum_kernel(X, FeatureMapSpec(kind=MapKind.Z_MAP, reps=1))
        expected = np.array([[1, 0.5, 0], [0.5, 1, 0.5], [0, 0.5, 1]])
        np.testing.assert_allclose(K.values, expected, atol=1e-12)

    def test_saqk_theta_zero_is_all_ones(self):
        rng = np.random.default_rng(3)
        X = rng.uniform(0, np.pi, (6, 3))
        K = quantum_kernel(X, saqk_spec(3, theta=np.zeros(3)))
        np.testing.assert_allclose(K.values, np.ones((6, 6)), atol=1e-12)

    def test_single_point(self):
        K = quantum_kernel(np.array([[0.4, 0.2]]), saqk_spec(2))
        np.testing.assert_array_equal(K.values, [[1.0]])

    def test_matches_kron_oracle(self):
        rng = np.random.default_rng(4)
        X = rng.uniform(0, np.pi, (8, 3))
        for name, spec in {**ALL_SPECS, "saqk": saqk_spec(3)}.items():
            K = quantum_kernel(X, spec)
            for i in range(8):
                for j in range(i + 1, 8):
                    a = _oracle_state(X[i], spec)
                    b = _oracle_state(X[j], spec)
                    want = abs(np.vdot(a, b)) ** 2
                    assert K.values[i, j] == pytest.approx(want, abs=1e-10), name

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(5)
        X = rng.uniform(0, np.pi, (7, 2))
        perm = rng.permutation(7)
        spec = saqk_spec(2, theta=[0.7, 1.4])
        K = quantum_kernel(X, spec).values
        K_perm = quantum_kernel(X[perm], spec).values
        np.testing.assert_array_equal(K_perm, K[np.ix_(perm, perm)])

    def test_parallel_matches_serial_bitwise(self):
        rng = np.random.default_rng(6)
        X = rng.uniform(0, np.pi, (12, 3))
        spec = saqk_spec(3)
        serial = quantum_kernel(X, spec, workers=1)
        parallel = quantum_kernel(X, spec, workers=2)
        np.testing.assert_array_equal(serial.values, parallel.values)

    def test_psd_and_range_for_all_kinds(self):
        rng = np.random.default_rng(7)
        X = rng.uniform(0, np.pi, (20, 4))
        grams = [quantum_kernel(X, spec) for spec in ALL_SPECS.values()]
        grams.append(quantum_kernel(X, saqk_spec(4, theta=rng.standard_normal(4))))
        grams.append(rbf_kernel(X, default_sigma(X)))
        for K in grams:
            vals = K.values
            assert np.all(vals >= -1e-12) and np.all(vals <= 1 + 1e-12)
            assert np.min(np.linalg.eigvalsh(vals)) >= -1e-8


class TestCrossKernel:
    def test_square_consistency_quantum(self):
        rng = np.random.default_rng(8)
        X = rng.uniform(0, np.pi, (5, 2))
        spec = saqk_spec(2)
        K = quantum_kernel(X, spec)
        C = cross_kernel(X, X, spec)
        np.testing.assert_allclose(C, K.values, atol=1e-12)

    def test_square_consistency_rbf(self):
        rng = np.random.default_rng(9)
        X = rng.standard_normal((6, 3))
        K = rbf_kernel(X, 1.1)
        C = cross_kernel(X, X, 1.1)
        np.testing.assert_allclose(C, K.values, atol=1e-12)

    def test_empty_new_set(self):
        X = np.zeros((0, 2))
        fit = np.random.default_rng(10).standard_normal((4, 2))
        assert cross_kernel(X, fit, 1.0).shape == (0, 4)
        assert cross_kernel(X, fit, saqk_spec(2)).shape == (0, 4)

    def test_duplicate_point_reproduces_gram_row(self):
        rng = np.random.default_rng(11)
        X = rng.uniform(0, np.pi, (6, 3))
        spec = FeatureMapSpec(kind=MapKind.ZZ_MAP)
        K = quantum_kernel(X, spec)
        row = cross_kernel(X[2:3], X, spec)
        np.testing.assert_allclose(row[0], K.values[2], atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cross_kernel(np.zeros((2, 3)), np.zeros((4, 2)), 1.0)

    def test_parallel_matches_serial_bitwise(self):
        rng = np.random.default_rng(13)
        A = rng.uniform(0, np.pi, (9, 3))
        B = rng.uniform(0, np.pi, (7, 3))
        spec = saqk_spec(3)
        np.testing.assert_array_equal(
            cross_kernel(A, B, spec, workers=1), cross_kernel(A, B, spec, workers=2)
        )


class TestAlignment:
    def test_perfect_alignment(self):
        labels = np.array([0, 0, 1, 1])
        ky = (labels[:, None] == labels[None, :]).astype(float)
        K = KernelMatrix(ky, "saqk")
        assert alignment(K, labels) == pytest.approx(1.0, abs=1e-12)

    def test_all_ones_balanced_classes(self):
        n = 8
        labels = np.array([0] * 4 + [1] * 4)
        K = KernelMatrix(np.ones((n, n)), "saqk")
        assert alignment(K, labels) == pytest.approx(1 / np.sqrt(2), abs=1e-12)

    def test_block_diagonal_is_one(self):
        labels = np.array([0, 0, 0, 1, 1])
        ky = (labels[:, None] == labels[None, :]).astype(float)
        assert alignment(ky, labels) == pytest.approx(1.0, abs=1e-12)

    def test_single_class_rejected(self):
        with pytest.raises(ValueError):
            alignment(np.ones((3, 3)), np.zeros(3))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            alignment(np.ones((3, 3)), np.zeros(4))


class TestKernelMatrixType:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            KernelMatrix(np.array([[1.0, 0.2], [0.3, 1.0]]), "rbf")

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            KernelMatrix(np.ones((2, 3)), "rbf")

    def test_values_immutable(self):
        K = KernelMatrix(np.eye(3), "rbf")
        with pytest.raises(ValueError):
            K.values[0, 0] = 2.0

    def test_cache_round_trip(self, tmp_path):
        rng = np.random.default_rng(12)
        X = rng.uniform(0, np.pi, (5, 2))
        K = quantum_kernel(X, FeatureMapSpec(kind=MapKind.Z_MAP))
        sidecar = save_kernel(K, tmp_path / "gram.csv")
        loaded = load_kernel(tmp_path / "gram.csv")
        np.testing.assert_array_equal(loaded.values, K.values)
        assert loaded.kind == "z-map"
        info = json.loads(sidecar.read_text())
        assert info["n"] == 5 and info["spec"]["reps"] == 2


def _oracle_state(x, spec):
    """Build the encoding circuit explicitly and run the Kronecker oracle."""
    d = len(x)
    ops = []
    if spec.kind is MapKind.PAULI_X:
        ops = [("rx", i, float(x[i])) for i in range(d)]
    elif spec.kind in (MapKind.Z_MAP, MapKind.ZZ_MAP):
        for _ in range(spec.reps):
            ops.extend(("h", i) for i in range(d))
            ops.extend(("p", i, 2.0 * float(x[i])) for i in range(d))
            if spec.kind is MapKind.ZZ_MAP:
                for i in range(d - 1):
                    ops.append(("cx", i, i + 1))
                    ops.append(("p", i + 1, 2.0 * (np.pi - x[i]) * (np.pi - x[i + 1])))
                    ops.append(("cx", i, i + 1))
    else:
        ops = [("rx", i, spec.params.theta[i] * float(x[i])) for i in range(d)]
        ops += [("rz", i, float(x[i])) for i in range(d)]
    return oracles.apply_circuit_oracle(ops, d)
