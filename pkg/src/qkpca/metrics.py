"""Classification metrics and the dimension-collapse statistic."""
from __future__ import annotations

import numpy as np


def _check_pair(y_true, y_pred) -> tuple[np.ndarray, np.ndarray]:
    y_true = np.asarray(y_true, dtype=np.int64).reshape(-1)
    y_pred = np.asarray(y_pred, dtype=np.int64).reshape(-1)
    if y_true.size == 0:
        raise ValueError("empty label vectors")
    if y_true.shape != y_pred.shape:
        raise ValueError(f"length mismatch: {y_true.shape[0]} vs {y_pred.shape[0]}")
    return y_true, y_pred


def accuracy(y_true, y_pred) -> float:
    y_true, y_pred = _check_pair(y_true, y_pred)
    return float(np.mean(y_true == y_pred))


def f1_macro(y_true, y_pred) -> float:
    """Unweighted mean over classes of 2PR/(P+R); a class with P+R = 0
    contributes 0. Classes are the union of both label vectors."""
    y_true, y_pred = _check_pair(y_true, y_pred)
    scores = []
    for cls in np.union1d(y_true, y_pred):
        tp = float(np.sum((y_pred == cls) & (y_true == cls)))
        pred_pos = float(np.sum(y_pred == cls))
        actual_pos = float(np.sum(y_true == cls))
        precision = tp / pred_pos if pred_pos else 0.0
        recall = tp / actual_pos if actual_pos else 0.0
        scores.append(
            2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
        )
    return float(np.mean(scores))


def cohen_kappa(y_true, y_pred) -> float:
    """(p_o - p_e) / (1 - p_e) with chance agreement from the marginals.

    Perfect degenerate agreement (p_e = 1) is defined as 1.
    """
    y_true, y_pred = _check_pair(y_true, y_pred)
    n = y_true.size
    p_o = float(np.mean(y_true == y_pred))
    classes = np.union1d(y_true, y_pred)
    row = np.array([np.sum(y_true == c) for c in classes], dtype=np.float64)
    col = np.array([np.sum(y_pred == c) for c in classes], dtype=np.float64)
    p_e = float(np.sum(row * col)) / float(n) ** 2
    if p_e == 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)


def collapse_rate(scores_by_dim: dict[int, float]) -> float:
    """Mean per-step score drop across descending dimensions, relative to
    the score at the largest dimension. Positive means information loss."""
    if len(scores_by_dim) < 2:
        raise ValueError("collapse rate needs scores for at least two dimensions")
    dims = sorted(scores_by_dim, reverse=True)
    reference = float(scores_by_dim[dims[0]])
    if reference <= 0.0:
        raise ValueError(f"score at the top dimension must be positive, got {reference}")
    steps = [
        (float(scores_by_dim[hi]) - float(scores_by_dim[lo])) / reference
        for hi, lo in zip(dims[:-1], dims[1:])
    ]
    return float(np.mean(steps))
