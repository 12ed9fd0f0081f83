"""Kernel-target alignment training of the self-adaptive feature map.

The per-qubit multipliers theta are fitted by SPSA: two alignment
evaluations per step on a freshly drawn minibatch, a Rademacher
perturbation direction, and the classic decaying gain schedules
a_k = a / k^alpha, c_k = c / k^gamma. Theta starts at all-ones (the plain
Rx(x) map); starting at zero is degenerate, since that kernel is all-ones
for every input and carries no gradient signal.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .datasets import make_rng
from .feature_maps import FeatureMapSpec, MapKind, SaqkParams
from .kernels import alignment, quantum_kernel

_BATCH_RETRIES = 100


@dataclass(frozen=True)
class TrainConfig:
    iterations: int = 100
    spsa_a: float = 0.1
    spsa_c: float = 0.1
    spsa_alpha: float = 0.602
    spsa_gamma: float = 0.101
    minibatch: int | None = 100
    seed: int = 0

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.spsa_a <= 0 or self.spsa_c <= 0:
            raise ValueError("spsa_a and spsa_c must be positive")
        if self.minibatch is not None and self.minibatch < 2:
            raise ValueError(f"minibatch must be >= 2, got {self.minibatch}")

    def describe(self) -> dict:
        return {
            "iterations": self.iterations,
            "spsa_a": self.spsa_a,
            "spsa_c": self.spsa_c,
            "spsa_alpha": self.spsa_alpha,
            "spsa_gamma": self.spsa_gamma,
            "minibatch": self.minibatch,
            "seed": self.seed,
        }


@dataclass
class TrainHistory:
    """Minibatch alignment per iteration plus start/end snapshots.

    ``alignments[k]`` is the alignment of the updated theta on iteration
    k's minibatch; the initial/final fields are full-data alignments.
    """

    alignments: np.ndarray
    theta_start: np.ndarray
    theta_end: np.ndarray
    initial_alignment: float
    final_alignment: float


def train_saqk(
    X: np.ndarray,
    labels: np.ndarray,
    config: TrainConfig,
    workers: int = 1,
) -> tuple[SaqkParams, TrainHistory]:
    """Maximize kernel-target alignment over the self-adaptive multipliers."""
    X = np.asarray(X, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n, d = X.shape
    if n < 4:
        raise ValueError(f"training needs at least 4 samples, got {n}")
    if np.unique(labels).size < 2:
        raise ValueError("training needs at least two classes")
    batch_size = n if config.minibatch is None else min(config.minibatch, n)
    rng = make_rng(config.seed)
    theta = np.ones(d)
    initial = _full_alignment(X, labels, theta, workers)
    history = np.empty(config.iterations)
    for k in range(1, config.iterations + 1):
        batch = _draw_batch(rng, labels, batch_size)
        delta = rng.integers(0, 2, size=d) * 2 - 1
        a_k = config.spsa_a / k**config.spsa_alpha
        c_k = config.spsa_c / k**config.spsa_gamma
        a_plus = _batch_alignment(X, labels, batch, theta + c_k * delta, workers)
        a_minus = _batch_alignment(X, labels, batch, theta - c_k * delta, workers)
        grad = (a_plus - a_minus) / (2.0 * c_k) * delta
        theta = theta + a_k * grad
        if not np.all(np.isfinite(theta)):
            raise RuntimeError(
                f"SPSA diverged at iteration {k}: theta became non-finite "
                f"(a+={a_plus}, a-={a_minus})"
            )
        history[k - 1] = _batch_alignment(X, labels, batch, theta, workers)
    final = _full_alignment(X, labels, theta, workers)
    params = SaqkParams(theta=tuple(theta))
    return params, TrainHistory(
        alignments=history,
        theta_start=np.ones(d),
        theta_end=theta.copy(),
        initial_alignment=initial,
        final_alignment=final,
    )


def _draw_batch(rng: np.random.Generator, labels: np.ndarray, size: int) -> np.ndarray:
    n = labels.shape[0]
    if size >= n:
        return np.arange(n)
    for _ in range(_BATCH_RETRIES):
        batch = rng.choice(n, size=size, replace=False)
        if np.unique(labels[batch]).size >= 2:
            return batch
    raise RuntimeError(
        f"could not draw a minibatch of {size} containing two classes "
        f"after {_BATCH_RETRIES} attempts"
    )


def _batch_alignment(
    X: np.ndarray,
    labels: np.ndarray,
    batch: np.ndarray,
    theta: np.ndarray,
    workers: int,
) -> float:
    spec = FeatureMapSpec(kind=MapKind.SAQK, params=SaqkParams(theta=tuple(theta)))
    value = alignment(quantum_kernel(X[batch], spec, workers=workers), labels[batch])
    if not np.isfinite(value):
        raise RuntimeError(f"alignment became non-finite for theta={theta}")
    return value


def _full_alignment(X, labels, theta, workers) -> float:
    return _batch_alignment(X, labels, np.arange(X.shape[0]), theta, workers)


def save_history_csv(history: TrainHistory, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["iteration", "alignment"])
        for i, value in enumerate(history.alignments, start=1):
            writer.writerow([i, repr(float(value))])
