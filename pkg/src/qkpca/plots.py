"""Figure rendering for the report path.

Every figure builder returns a matplotlib Figure; ``save_figure`` writes it
to disk and closes it. The Agg backend is forced so rendering works in
headless environments and output files are stable across reruns.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .benchmark import METRICS, EvalReport
from .kernels import KernelMatrix
from .saqk_train import TrainHistory

_METRIC_LABEL = {"accuracy": "Accuracy", "f1_macro": "F1 (macro)", "kappa": "Cohen's kappa"}


def save_figure(fig: plt.Figure, path: str | Path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def figure_scores_vs_dimension(report: EvalReport, metric: str) -> plt.Figure:
    """One panel per classifier: mean score (with std band) versus dimension,
    one line per kernel."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")
    agg = report.aggregate()
    classifiers = sorted({clf for (_, _, clf) in agg})
    kernels = sorted({k for (k, _, _) in agg})
    fig, axes = plt.subplots(
        1, len(classifiers), figsize=(3.2 * len(classifiers), 3.0), sharey=True, squeeze=False
    )
    for ax, clf in zip(axes[0], classifiers):
        for kernel in kernels:
            dims = sorted({d for (k, d, c) in agg if k == kernel and c == clf}, reverse=True)
            if not dims:
                continue
            means = np.array([agg[(kernel, d, clf)][metric][0] for d in dims])
            stds = np.array([agg[(kernel, d, clf)][metric][1] for d in dims])
            ax.plot(dims, means, marker="o", label=kernel)
            ax.fill_between(dims, means - stds, means + stds, alpha=0.15)
        ax.set_title(clf)
        ax.set_xlabel("dimension")
        ax.invert_xaxis()
        ax.grid(alpha=0.3)
    axes[0][0].set_ylabel(_METRIC_LABEL[metric])
    axes[0][-1].legend(fontsize=8)
    fig.suptitle(f"{_METRIC_LABEL[metric]} under dimensionality reduction")
    fig.tight_layout()
    return fig


def figure_collapse_rates(report: EvalReport) -> plt.Figure:
    """Grouped bars of collapse rate per kernel and classifier, one panel
    per metric. Lower is better."""
    rates = report.collapse_rates()
    kernels = sorted({k for (k, _, _) in rates})
    classifiers = sorted({c for (_, c, _) in rates})
    fig, axes = plt.subplots(1, len(METRICS), figsize=(3.6 * len(METRICS), 3.0), squeeze=False)
    width = 0.8 / max(len(kernels), 1)
    x = np.arange(len(classifiers))
    for ax, metric in zip(axes[0], METRICS):
        for i, kernel in enumerate(kernels):
            vals = [rates.get((kernel, clf, metric), np.nan) for clf in classifiers]
            ax.bar(x + i * width, vals, width=width, label=kernel)
        ax.set_xticks(x + width * (len(kernels) - 1) / 2)
        ax.set_xticklabels(classifiers, rotation=30, fontsize=8)
        ax.set_title(_METRIC_LABEL[metric])
        ax.axhline(0.0, color="black", linewidth=0.8)
        ax.grid(alpha=0.3, axis="y")
    axes[0][0].set_ylabel("mean collapse rate")
    axes[0][-1].legend(fontsize=8)
    fig.suptitle("Score collapse across the dimension sweep (lower is better)")
    fig.tight_layout()
    return fig


def figure_kernel_heatmap(K: KernelMatrix) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    im = ax.imshow(K.values, cmap="viridis", vmin=0.0, vmax=1.0, interpolation="nearest")
    ax.set_title(f"{K.kind} kernel ({K.n} samples)")
    fig.colorbar(im, ax=ax, fraction=0.046)
    fig.tight_layout()
    return fig


def figure_embedding_scatter(coords: np.ndarray, labels: np.ndarray, title: str) -> plt.Figure:
    """Scatter of the two leading embedding coordinates, colored by class."""
    if coords.shape[1] < 2:
        raise ValueError("scatter needs at least two embedding dimensions")
    fig, ax = plt.subplots(figsize=(4.0, 3.4))
    labels = np.asarray(labels)
    for cls in np.unique(labels):
        mask = labels == cls
        ax.scatter(coords[mask, 0], coords[mask, 1], s=12, alpha=0.7, label=str(cls))
    ax.set_xlabel("dim 1")
    ax.set_ylabel("dim 2")
    ax.set_title(title)
    if np.unique(labels).size <= 10:
        ax.legend(fontsize=7, title="class")
    fig.tight_layout()
    return fig


def figure_training_history(history: TrainHistory) -> plt.Figure:
    fig, ax = plt.subplots(figsize=(4.6, 3.0))
    iters = np.arange(1, history.alignments.shape[0] + 1)
    ax.plot(iters, history.alignments, linewidth=1.0, label="minibatch alignment")
    ax.axhline(history.initial_alignment, color="gray", linestyle="--", label="initial (full data)")
    ax.axhline(history.final_alignment, color="C3", linestyle=":", label="final (full data)")
    ax.set_xlabel("iteration")
    ax.set_ylabel("alignment")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig
