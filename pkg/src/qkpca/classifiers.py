"""From-scratch classifier probes used to score information retention.

Five probes cover the linear / non-linear / ensemble families: softmax
logistic regression, k-nearest neighbors, Gaussian naive Bayes, random
forest, and extremely randomized trees. Hyperparameters are fixed at the
documented defaults; the tree ensembles take an explicit seed and are the
only stochastic members.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class ClassifierKind(str, Enum):
    LOGISTIC_REGRESSION = "lr"
    KNN = "knn"
    NAIVE_BAYES = "nb"
    RANDOM_FOREST = "rf"
    EXTRA_TREES = "et"


def fit_predict(
    kind: ClassifierKind | str,
    train: tuple[np.ndarray, np.ndarray],
    test_features: np.ndarray,
    seed: int = 0,
) -> np.ndarray:
    """Train the requested probe on (features, labels) and label the test set."""
    kind = ClassifierKind(kind)
    X, y = train
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    test_features = np.asarray(test_features, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("training set is empty")
    if y.shape != (X.shape[0],):
        raise ValueError("labels length must match training rows")
    if test_features.ndim != 2 or test_features.shape[1] != X.shape[1]:
        raise ValueError(
            f"test feature dimension {test_features.shape} does not match train {X.shape}"
        )
    if kind is ClassifierKind.LOGISTIC_REGRESSION:
        model = LogisticRegression().fit(X, y)
    elif kind is ClassifierKind.KNN:
        model = KNearestNeighbors().fit(X, y)
    elif kind is ClassifierKind.NAIVE_BAYES:
        model = GaussianNaiveBayes().fit(X, y)
    elif kind is ClassifierKind.RANDOM_FOREST:
        model = RandomForest(seed=seed).fit(X, y)
    else:
        model = ExtraTrees(seed=seed).fit(X, y)
    return model.predict(test_features)


class LogisticRegression:
    """Multinomial softmax regression, full-batch gradient descent.

    L2 strength 1.0 on the weights (intercept unpenalized), step size from
    a Lipschitz bound so the loss is monotone, up to 200 epochs, stopping
    when the loss delta falls below 1e-4.
    """

    def __init__(self, l2: float = 1.0, max_epochs: int = 200, tol: float = 1e-4):
        self.l2 = l2
        self.max_epochs = max_epochs
        self.tol = tol

    def fit(self, X: np.ndarray, y: np.ndarray) -> "LogisticRegression":
        n, d = X.shape
        self.classes_ = int(y.max()) + 1
        C = self.classes_
        W = np.zeros((C, d))
        b = np.zeros(C)
        onehot = np.zeros((n, C))
        onehot[np.arange(n), y] = 1.0
        # softmax hessian is bounded by 0.5 * sigma_max(X')^2 / n + l2 / n
        Xb = np.hstack([X, np.ones((n, 1))])
        smax = np.linalg.norm(Xb, 2)
        lr = 1.0 / (0.5 * smax**2 / n + self.l2 / n)
        prev_loss = np.inf
        for _ in range(self.max_epochs):
            scores = X @ W.T + b
            scores -= scores.max(axis=1, keepdims=True)
            exps = np.exp(scores)
            probs = exps / exps.sum(axis=1, keepdims=True)
            loss = -np.mean(np.log(probs[np.arange(n), y] + 1e-300))
            loss += 0.5 * self.l2 / n * float(np.sum(W * W))
            grad_scores = (probs - onehot) / n
            grad_W = grad_scores.T @ X + self.l2 / n * W
            grad_b = grad_scores.sum(axis=0)
            W -= lr * grad_W
            b -= lr * grad_b
            if abs(prev_loss - loss) < self.tol:
                break
            prev_loss = loss
        self.W_, self.b_ = W, b
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.argmax(X @ self.W_.T + self.b_, axis=1)


class KNearestNeighbors:
    """5-nearest-neighbor majority vote under Euclidean distance.

    Neighbor order resolves distance ties by the lower class id; vote ties
    also resolve to the lowest class id.
    """

    def __init__(self, k: int = 5):
        self.k = k

    def fit(self, X: np.ndarray, y: np.ndarray) -> "KNearestNeighbors":
        self.X_, self.y_ = X, y
        self.classes_ = int(y.max()) + 1
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        k = min(self.k, self.X_.shape[0])
        d2 = (
            np.sum(X * X, axis=1)[:, None]
            + np.sum(self.X_ * self.X_, axis=1)[None, :]
            - 2.0 * (X @ self.X_.T)
        )
        out = np.empty(X.shape[0], dtype=np.int64)
        for i in range(X.shape[0]):
            order = np.lexsort((self.y_, d2[i]))[:k]
            votes = np.bincount(self.y_[order], minlength=self.classes_)
            out[i] = int(np.argmax(votes))
        return out


class GaussianNaiveBayes:
    """Per-class Gaussian likelihoods with variance smoothing
    1e-9 times the largest feature variance."""

    def __init__(self, var_smoothing: float = 1e-9):
        self.var_smoothing = var_smoothing

    def fit(self, X: np.ndarray, y: np.ndarray) -> "GaussianNaiveBayes":
        C = int(y.max()) + 1
        n, d = X.shape
        self.means_ = np.zeros((C, d))
        self.vars_ = np.zeros((C, d))
        self.log_priors_ = np.full(C, -np.inf)
        eps = self.var_smoothing * float(X.var(axis=0).max())
        for c in range(C):
            mask = y == c
            if not mask.any():
                continue
            self.means_[c] = X[mask].mean(axis=0)
            self.vars_[c] = X[mask].var(axis=0) + eps
            self.log_priors_[c] = np.log(mask.sum() / n)
        self.vars_[self.vars_ == 0.0] = max(eps, 1e-300)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        diff = X[:, None, :] - self.means_[None, :, :]
        log_like = -0.5 * np.sum(
            diff * diff / self.vars_[None, :, :] + np.log(2.0 * np.pi * self.vars_)[None, :, :],
            axis=2,
        )
        return np.argmax(log_like + self.log_priors_[None, :], axis=1)


# ---------------------------------------------------------------------------
# decision-tree ensembles
# ---------------------------------------------------------------------------


@dataclass
class _Tree:
    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    leaf_class: np.ndarray

    def predict(self, X: np.ndarray) -> np.ndarray:
        out = np.empty(X.shape[0], dtype=np.int64)
        for i, row in enumerate(X):
            node = 0
            while self.leaf_class[node] < 0:
                node = (
                    self.left[node]
                    if row[self.feature[node]] <= self.threshold[node]
                    else self.right[node]
                )
            out[i] = self.leaf_class[node]
        return out


class _ForestBase:
    n_trees = 100

    def __init__(self, seed: int = 0):
        self.seed = seed

    def fit(self, X: np.ndarray, y: np.ndarray):
        self.classes_ = int(y.max()) + 1
        n, d = X.shape
        n_feat = max(1, int(np.sqrt(d)))
        master = np.random.Generator(np.random.Philox(self.seed))
        tree_seeds = master.integers(0, 2**63 - 1, size=self.n_trees)
        self.trees_ = []
        for ts in tree_seeds:
            rng = np.random.Generator(np.random.Philox(int(ts)))
            if self.bootstrap:
                idx = rng.integers(0, n, size=n)
                Xb, yb = X[idx], y[idx]
            else:
                Xb, yb = X, y
            self.trees_.append(
                _grow_tree(Xb, yb, self.classes_, n_feat, rng, self.random_threshold)
            )
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        votes = np.zeros((X.shape[0], self.classes_), dtype=np.int64)
        for tree in self.trees_:
            preds = tree.predict(X)
            votes[np.arange(X.shape[0]), preds] += 1
        return np.argmax(votes, axis=1)


class RandomForest(_ForestBase):
    """100 Gini trees on bootstrap samples, sqrt(d) features per split,
    unlimited depth, majority vote."""

    bootstrap = True
    random_threshold = False


class ExtraTrees(_ForestBase):
    """100 Gini trees on the full sample with one uniform-random threshold
    per candidate feature, sqrt(d) features per split, majority vote."""

    bootstrap = False
    random_threshold = True


def _grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    num_classes: int,
    n_feat: int,
    rng: np.random.Generator,
    random_threshold: bool,
) -> _Tree:
    d = X.shape[1]
    feature, threshold, left, right, leaf = [], [], [], [], []

    def new_node() -> int:
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        leaf.append(-1)
        return len(feature) - 1

    stack = [(new_node(), np.arange(y.size))]
    while stack:
        node, rows = stack.pop()
        labels = y[rows]
        counts = np.bincount(labels, minlength=num_classes)
        if counts.max() == labels.size or labels.size < 2:
            leaf[node] = int(np.argmax(counts))
            continue
        feats = rng.choice(d, size=n_feat, replace=False) if n_feat < d else np.arange(d)
        best = None  # (score to maximize, feature, threshold, mask)
        for f in feats:
            v = X[rows, f]
            if random_threshold:
                lo, hi = v.min(), v.max()
                if lo == hi:
                    continue
                thr = float(rng.uniform(lo, hi))
                split = _score_split(labels, v <= thr, num_classes)
                if split is not None and (best is None or split > best[0]):
                    best = (split, int(f), thr, v <= thr)
            else:
                found = _best_gini_threshold(v, labels, num_classes)
                if found is not None and (best is None or found[0] > best[0]):
                    score, thr = found
                    best = (score, int(f), thr, v <= thr)
        if best is None:
            leaf[node] = int(np.argmax(counts))
            continue
        _, f, thr, mask = best
        feature[node], threshold[node] = f, thr
        left[node] = new_node()
        right[node] = new_node()
        stack.append((left[node], rows[mask]))
        stack.append((right[node], rows[~mask]))
    return _Tree(
        feature=np.array(feature, dtype=np.int64),
        threshold=np.array(threshold, dtype=np.float64),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        leaf_class=np.array(leaf, dtype=np.int64),
    )


def _score_split(labels: np.ndarray, mask: np.ndarray, num_classes: int) -> float | None:
    m_left = int(mask.sum())
    if m_left == 0 or m_left == mask.size:
        return None
    left_counts = np.bincount(labels[mask], minlength=num_classes).astype(np.float64)
    right_counts = np.bincount(labels[~mask], minlength=num_classes).astype(np.float64)
    # maximizing sum of squared counts over sizes minimizes weighted Gini
    return float(
        np.sum(left_counts**2) / m_left + np.sum(right_counts**2) / (mask.size - m_left)
    )


def _best_gini_threshold(
    v: np.ndarray, labels: np.ndarray, num_classes: int
) -> tuple[float, float] | None:
    m = v.size
    order = np.argsort(v, kind="stable")
    vs, ys = v[order], labels[order]
    boundaries = np.flatnonzero(vs[:-1] < vs[1:])
    if boundaries.size == 0:
        return None
    onehot = np.zeros((m, num_classes))
    onehot[np.arange(m), ys] = 1.0
    cum = np.cumsum(onehot, axis=0)
    sizes_left = (boundaries + 1).astype(np.float64)
    left_sq = np.sum(cum[boundaries] ** 2, axis=1)
    right_sq = np.sum((cum[-1][None, :] - cum[boundaries]) ** 2, axis=1)
    scores = left_sq / sizes_left + right_sq / (m - sizes_left)
    best = int(np.argmax(scores))
    t = boundaries[best]
    return float(scores[best]), float(0.5 * (vs[t] + vs[t + 1]))
