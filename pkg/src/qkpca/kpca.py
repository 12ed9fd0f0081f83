"""Kernel PCA: double centering, eigendecomposition, projection, sweeps.

The model keeps the top-k eigenpairs of the centered Gram matrix together
with the centering statistics of the fit set, so held-out points can be
projected through ``transform`` with a cross-kernel block. A dimension
sweep performs a single eigendecomposition at the largest requested
dimension and truncates columns for the smaller ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .feature_maps import FeatureMapSpec
from .kernels import KernelMatrix, quantum_kernel, rbf_kernel

# eigenvalues below this fraction of the largest one are treated as rank noise
RANK_TOLERANCE = 1e-10


def center_kernel(K: np.ndarray) -> np.ndarray:
    """Double centering K - 1K - K1 + 1K1 with 1 the all-(1/n) matrix.

    Every row and column of the result sums to zero.
    """
    K = np.asarray(K, dtype=np.float64)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError(f"centering requires a square matrix, got {K.shape}")
    col_means = K.mean(axis=0, keepdims=True)
    row_means = K.mean(axis=1, keepdims=True)
    total = K.mean()
    return K - col_means - row_means + total


@dataclass
class PcaModel:
    """Fitted kernel PCA state.

    ``alphas`` holds the projection coefficients v_j / sqrt(lambda_j) for
    unit-norm eigenvectors v_j, so projecting the fit set reproduces
    coordinates whose column j has sum of squares lambda_j.
    """

    k: int
    eigenvalues: np.ndarray
    alphas: np.ndarray
    fit_row_means: np.ndarray
    fit_total_mean: float
    kind: str | None = None
    meta: dict = field(default_factory=dict)
    train_coords: np.ndarray | None = None

    @property
    def n_fit(self) -> int:
        return self.alphas.shape[0]


def fit(K: KernelMatrix | np.ndarray, k: int) -> PcaModel:
    """Eigendecompose the centered Gram matrix and keep the top-k pairs.

    Raises a rank-deficiency error (naming the achievable k) when fewer
    than k eigenvalues sit above ``RANK_TOLERANCE`` times the largest one.
    """
    if isinstance(K, KernelMatrix):
        values, kind, meta = K.values, K.kind, dict(K.meta)
    else:
        values = np.asarray(K, dtype=np.float64)
        kind, meta = None, {}
    n = values.shape[0]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in 1..{n - 1} for n={n}, got {k}")
    centered = center_kernel(values)
    eigvals, eigvecs = np.linalg.eigh(centered)
    order = np.argsort(eigvals)[::-1]
    eigvals, eigvecs = eigvals[order], eigvecs[:, order]
    lam_max = eigvals[0] if eigvals.size else 0.0
    achievable = int(np.sum(eigvals > RANK_TOLERANCE * max(lam_max, 0.0))) if lam_max > 0 else 0
    if k > achievable:
        raise ValueError(
            f"rank-deficient kernel: requested k={k} but only {achievable} "
            f"components carry variance"
        )
    lam = eigvals[:k].copy()
    vecs = eigvecs[:, :k].copy()
    for j in range(k):
        # reproducible sign: the largest-magnitude loading points up
        if vecs[np.argmax(np.abs(vecs[:, j])), j] < 0:
            vecs[:, j] = -vecs[:, j]
    alphas = vecs / np.sqrt(lam)
    return PcaModel(
        k=k,
        eigenvalues=lam,
        alphas=alphas,
        fit_row_means=values.mean(axis=1),
        fit_total_mean=float(values.mean()),
        kind=kind,
        meta=meta,
        train_coords=vecs * np.sqrt(lam),
    )


def transform(model: PcaModel, K_cross: np.ndarray, kind: str | None = None) -> np.ndarray:
    """Project new points given their kernel block against the fit set.

    ``K_cross[a, i]`` must be the kernel between new point a and fit point
    i, built with the same kernel the model was fitted on (pass ``kind`` to
    have that provenance checked).
    """
    if kind is not None and model.kind is not None and kind != model.kind:
        raise ValueError(
            f"kernel provenance mismatch: model fitted on {model.kind!r}, got {kind!r}"
        )
    K_cross = np.asarray(K_cross, dtype=np.float64)
    if K_cross.ndim != 2 or K_cross.shape[1] != model.n_fit:
        raise ValueError(
            f"cross-kernel must be m x {model.n_fit}, got {K_cross.shape}"
        )
    if K_cross.shape[0] == 0:
        return np.zeros((0, model.k))
    centered = (
        K_cross
        - K_cross.mean(axis=1, keepdims=True)
        - model.fit_row_means[None, :]
        + model.fit_total_mean
    )
    return centered @ model.alphas


def sweep(
    X: np.ndarray,
    spec_or_sigma: FeatureMapSpec | float,
    dims: list[int],
    workers: int = 1,
) -> dict[int, np.ndarray]:
    """Embed X at every requested dimension from one eigendecomposition.

    Coordinates for a smaller dimension are the leading columns of the
    larger one (same eigenbasis, truncated).
    """
    if not dims:
        raise ValueError("dims must be non-empty")
    if min(dims) < 1:
        raise ValueError(f"dims must be positive, got {sorted(dims)}")
    if isinstance(spec_or_sigma, FeatureMapSpec):
        K = quantum_kernel(X, spec_or_sigma, workers=workers)
    else:
        K = rbf_kernel(X, float(spec_or_sigma))
    model = fit(K, max(dims))
    return {int(d): model.train_coords[:, :d].copy() for d in dims}


def save_embedding_csv(
    coords: np.ndarray,
    labels: np.ndarray,
    class_names: list[str] | None,
    path: str | Path,
) -> None:
    """Write embedded coordinates as ``dim_1..dim_k,label`` rows."""
    coords = np.asarray(coords)
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(f"dim_{j + 1}" for j in range(coords.shape[1])) + ",label\n")
        for row, label in zip(coords, labels):
            name = class_names[label] if class_names else str(int(label))
            fh.write(",".join(repr(float(v)) for v in row) + f",{name}\n")
