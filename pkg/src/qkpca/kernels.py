"""Gram matrices for the RBF and fidelity kernel families.

Fidelity Gram entries are evaluated pairwise (encode every row once, then
one inner product per unordered pair) so that serial and parallel runs
produce bit-identical matrices: each entry is a pure function of its pair,
independent of scheduling. ``workers > 1`` farms contiguous pair blocks out
to a fork-based process pool.
"""
from __future__ import annotations

import json
import multiprocessing
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .feature_maps import FeatureMapSpec, encode


@dataclass(frozen=True)
class KernelMatrix:
    """Symmetric n-by-n Gram matrix with kernel provenance."""

    values: np.ndarray
    kind: str
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError(f"kernel matrix must be square, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("kernel matrix contains non-finite entries")
        if values.size and np.max(np.abs(values - values.T)) > 1e-12:
            raise ValueError("kernel matrix is not symmetric")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _mirror_upper(upper: np.ndarray) -> np.ndarray:
    # exact symmetry: lower triangle is a copy of the upper one
    return np.triu(upper) + np.triu(upper, 1).T


def default_sigma(X: np.ndarray) -> float:
    """Gaussian width with gamma = 1 / (d * Var(X)), the usual 'scale' rule."""
    X = np.asarray(X, dtype=np.float64)
    var = float(X.var())
    if var <= 0.0:
        return float(np.sqrt(X.shape[1] / 2.0))
    return float(np.sqrt(X.shape[1] * var / 2.0))


def rbf_kernel(X: np.ndarray, sigma: float) -> KernelMatrix:
    """K[i, j] = exp(-||x_i - x_j||^2 / (2 sigma^2))."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    X = _check_features(X)
    sq = np.sum(X * X, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (X @ X.T)
    np.maximum(d2, 0.0, out=d2)
    values = _mirror_upper(np.exp(-d2 / (2.0 * sigma**2)))
    np.fill_diagonal(values, 1.0)
    return KernelMatrix(values, "rbf", {"sigma": float(sigma)})


def quantum_kernel(X: np.ndarray, spec: FeatureMapSpec, workers: int = 1) -> KernelMatrix:
    """Fidelity Gram matrix |<psi(x_i)|psi(x_j)>|^2 for a feature map."""
    X = _check_features(X)
    amps = _encode_all(X, spec)
    n = X.shape[0]
    ii, jj = np.triu_indices(n)
    vals = _pair_fidelities(amps, amps, ii, jj, workers)
    upper = np.zeros((n, n))
    upper[ii, jj] = vals
    values = _mirror_upper(upper)
    # self-fidelity is 1 by definition; pin it so the diagonal is exact
    np.fill_diagonal(values, 1.0)
    return KernelMatrix(values, spec.kind.value, spec.describe())


def cross_kernel(
    X_new: np.ndarray,
    X_fit: np.ndarray,
    spec_or_sigma: FeatureMapSpec | float,
    workers: int = 1,
) -> np.ndarray:
    """m-by-n kernel block between new points and the fitted sample set.

    Uses the identical kernel definition as the square Gram builders, so a
    row for a point in the fit set reproduces the corresponding Gram row.
    """
    X_new = _check_features(X_new, allow_empty=True)
    X_fit = _check_features(X_fit)
    if X_new.shape[1] != X_fit.shape[1]:
        raise ValueError(
            f"feature dimension mismatch: {X_new.shape[1]} vs {X_fit.shape[1]}"
        )
    if X_new.shape[0] == 0:
        return np.zeros((0, X_fit.shape[0]))
    if isinstance(spec_or_sigma, FeatureMapSpec):
        amps_new = _encode_all(X_new, spec_or_sigma)
        amps_fit = _encode_all(X_fit, spec_or_sigma)
        m, n = X_new.shape[0], X_fit.shape[0]
        aa, bb = np.meshgrid(np.arange(m), np.arange(n), indexing="ij")
        vals = _pair_fidelities(amps_new, amps_fit, aa.ravel(), bb.ravel(), workers)
        return vals.reshape(m, n)
    sigma = float(spec_or_sigma)
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    d2 = (
        np.sum(X_new * X_new, axis=1)[:, None]
        + np.sum(X_fit * X_fit, axis=1)[None, :]
        - 2.0 * (X_new @ X_fit.T)
    )
    np.maximum(d2, 0.0, out=d2)
    return np.exp(-d2 / (2.0 * sigma**2))


def alignment(K: KernelMatrix | np.ndarray, labels: np.ndarray) -> float:
    """Normalized Frobenius inner product between K and the label-agreement
    matrix (1 where classes match, 0 elsewhere)."""
    values = K.values if isinstance(K, KernelMatrix) else np.asarray(K, dtype=np.float64)
    labels = np.asarray(labels)
    if labels.shape[0] != values.shape[0]:
        raise ValueError(
            f"labels length {labels.shape[0]} != kernel size {values.shape[0]}"
        )
    if np.unique(labels).size < 2:
        raise ValueError("alignment needs at least two distinct classes")
    ky = (labels[:, None] == labels[None, :]).astype(np.float64)
    k_norm = float(np.linalg.norm(values))
    ky_norm = float(np.linalg.norm(ky))
    if k_norm == 0.0 or ky_norm == 0.0:
        raise ValueError("alignment undefined for a zero-norm matrix")
    return float(np.sum(values * ky) / (k_norm * ky_norm))


# ---------------------------------------------------------------------------
# pairwise fidelity evaluation (serial + process pool)
# ---------------------------------------------------------------------------

_WORK: dict = {}


def _check_features(X: np.ndarray, allow_empty: bool = False) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D feature matrix, got shape {X.shape}")
    if not allow_empty and X.shape[0] == 0:
        raise ValueError("feature matrix has no rows")
    if not np.all(np.isfinite(X)):
        raise ValueError("feature matrix contains non-finite values")
    return X


def _encode_all(X: np.ndarray, spec: FeatureMapSpec) -> np.ndarray:
    return np.stack([encode(row, spec).amplitudes for row in X])


def _fidelity_entry(a: np.ndarray, b: np.ndarray) -> float:
    v = np.vdot(a, b)
    return v.real * v.real + v.imag * v.imag


def _pair_block(bounds: tuple[int, int]) -> tuple[int, np.ndarray]:
    start, stop = bounds
    amps_a, amps_b = _WORK["a"], _WORK["b"]
    ii, jj = _WORK["ii"], _WORK["jj"]
    out = np.empty(stop - start)
    for k in range(start, stop):
        out[k - start] = _fidelity_entry(amps_a[ii[k]], amps_b[jj[k]])
    return start, out


def _pair_fidelities(
    amps_a: np.ndarray,
    amps_b: np.ndarray,
    ii: np.ndarray,
    jj: np.ndarray,
    workers: int,
) -> np.ndarray:
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    total = ii.shape[0]
    _WORK.update(a=amps_a, b=amps_b, ii=ii, jj=jj)
    try:
        if workers == 1 or total < 2 * workers:
            _, vals = _pair_block((0, total))
            return vals
        bounds = [
            (int(lo), int(hi))
            for lo, hi in zip(
                np.linspace(0, total, 4 * workers + 1)[:-1],
                np.linspace(0, total, 4 * workers + 1)[1:],
            )
            if lo != hi
        ]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            pieces = pool.map(_pair_block, bounds)
        vals = np.empty(total)
        for start, piece in pieces:
            vals[start : start + piece.shape[0]] = piece
        return vals
    finally:
        _WORK.clear()


# ---------------------------------------------------------------------------
# kernel cache files
# ---------------------------------------------------------------------------


def save_kernel(K: KernelMatrix, csv_path: str | Path) -> Path:
    """Write the Gram matrix as CSV (17 significant digits) plus a JSON
    sidecar recording kind, size, and the kernel configuration."""
    csv_path = Path(csv_path)
    with csv_path.open("w", encoding="utf-8", newline="\n") as fh:
        for row in K.values:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
    sidecar = csv_path.with_suffix(".json")
    sidecar.write_text(
        json.dumps({"kind": K.kind, "n": K.n, "spec": K.meta}, indent=2) + "\n",
        encoding="utf-8",
    )
    return sidecar


def load_kernel(csv_path: str | Path) -> KernelMatrix:
    csv_path = Path(csv_path)
    values = np.loadtxt(csv_path, delimiter=",", ndmin=2)
    sidecar = csv_path.with_suffix(".json")
    info = json.loads(sidecar.read_text(encoding="utf-8"))
    if info["n"] != values.shape[0]:
        raise ValueError(
            f"sidecar records n={info['n']} but CSV has {values.shape[0]} rows"
        )
    return KernelMatrix(values, info["kind"], info.get("spec", {}))
