"""Dataset ingestion, preprocessing, synthesis, and stratified splitting.

All stochastic operations draw from a counter-based Philox generator seeded
explicitly, so datasets and splits are reproducible bit-for-bit across runs
and platforms. The generator identity is recorded in dataset provenance.
"""
from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

log = logging.getLogger(__name__)

GENERATOR_NAME = "numpy-philox4x64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


@dataclass
class Dataset:
    """Feature matrix plus contiguous 0-based class labels."""

    features: np.ndarray
    labels: np.ndarray
    class_names: list[str] | None = None
    provenance: dict = field(default_factory=dict)
    raw_scores: np.ndarray | None = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2 or self.features.shape[0] < 1:
            raise ValueError(f"features must be a non-empty matrix, got {self.features.shape}")
        if not np.all(np.isfinite(self.features)):
            raise ValueError("features contain non-finite values")
        if self.labels.shape != (self.features.shape[0],):
            raise ValueError("labels length must match the number of rows")
        # ids live in 0..max; degenerate draws may leave a class empty
        if self.labels.min() < 0:
            raise ValueError("labels must be non-negative class ids")
        if self.class_names is not None and len(self.class_names) != self.num_classes:
            raise ValueError("class_names length must match the class count")

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    @property
    def num_classes(self) -> int:
        return int(self.labels.max()) + 1


@dataclass(frozen=True)
class SynthConfig:
    """Configuration of the low-entropy synthetic generators."""

    n: int = 300
    d: int = 7
    noise_sigma: float = math.sqrt(0.1)
    kind: str = "linear"
    seed: int = 0

    def __post_init__(self):
        if self.n < 10:
            raise ValueError(f"n must be >= 10, got {self.n}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.noise_sigma < 0:
            raise ValueError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.kind not in ("linear", "nonlinear"):
            raise ValueError(f"kind must be 'linear' or 'nonlinear', got {self.kind!r}")

    def describe(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "noise_sigma": self.noise_sigma,
            "kind": self.kind,
            "seed": self.seed,
            "generator": GENERATOR_NAME,
            "numpy": np.__version__,
        }


@dataclass(frozen=True)
class SplitPlan:
    """Disjoint, exhaustive train/test index lists."""

    train_indices: np.ndarray
    test_indices: np.ndarray
    seed: int
    train_fraction: float = 0.8

    def __post_init__(self):
        train = np.asarray(self.train_indices, dtype=np.int64)
        test = np.asarray(self.test_indices, dtype=np.int64)
        if np.intersect1d(train, test).size:
            raise ValueError("train and test indices overlap")
        object.__setattr__(self, "train_indices", train)
        object.__setattr__(self, "test_indices", test)


def load_csa_csv(
    path: str | Path, feature_columns: list[str], label_column: str
) -> Dataset:
    """Read a sensor CSV, selecting named feature columns and a label column.

    Labels are remapped to contiguous ids in order of first appearance.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: file is empty") from None
        header = [h.strip() for h in header]
        missing = [c for c in list(feature_columns) + [label_column] if c not in header]
        if missing:
            raise ValueError(f"{path}: missing column(s) {missing}; have {header}")
        feat_idx = [header.index(c) for c in feature_columns]
        label_idx = header.index(label_column)
        rows, raw_labels = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            values = []
            for col, j in zip(feature_columns, feat_idx):
                try:
                    values.append(float(row[j]))
                except (ValueError, IndexError):
                    cell = row[j] if j < len(row) else "<missing>"
                    raise ValueError(
                        f"{path}: non-numeric value {cell!r} in column {col!r} at line {lineno}"
                    ) from None
            rows.append(values)
            raw_labels.append(row[label_idx].strip())
    if not rows:
        raise ValueError(f"{path}: no data rows")
    name_to_id: dict[str, int] = {}
    labels = []
    for name in raw_labels:
        if name not in name_to_id:
            name_to_id[name] = len(name_to_id)
        labels.append(name_to_id[name])
    return Dataset(
        features=np.array(rows),
        labels=np.array(labels),
        class_names=list(name_to_id),
        provenance={
            "source": str(path),
            "feature_columns": list(feature_columns),
            "label_column": label_column,
        },
    )


def preprocess(ds: Dataset) -> Dataset:
    """Standardize each feature then rescale it to the [0, pi] angle range.

    Constant features map to pi/2. Applying preprocess twice is a no-op
    beyond rounding, since the composition of the two affine steps depends
    only on each feature's min/max.
    """
    X = ds.features
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    out = np.empty_like(X)
    for j in range(X.shape[1]):
        if std[j] == 0.0:
            out[:, j] = np.pi / 2.0
            continue
        z = (X[:, j] - mean[j]) / std[j]
        lo, hi = z.min(), z.max()
        out[:, j] = (z - lo) / (hi - lo) * np.pi
    np.clip(out, 0.0, np.pi, out=out)
    provenance = dict(ds.provenance)
    provenance["preprocess"] = "zscore+minmax[0,pi]"
    return Dataset(
        features=out,
        labels=ds.labels.copy(),
        class_names=ds.class_names,
        provenance=provenance,
        raw_scores=None if ds.raw_scores is None else ds.raw_scores.copy(),
    )


def _synth_common(cfg: SynthConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rng = make_rng(cfg.seed)
    X = rng.standard_normal((cfg.n, cfg.d))
    w = rng.standard_normal(cfg.d)
    eps = cfg.noise_sigma * rng.standard_normal(cfg.n)
    return X, w, eps


def _standardize(X: np.ndarray) -> np.ndarray:
    std = X.std(axis=0)
    std[std == 0.0] = 1.0
    return (X - X.mean(axis=0)) / std


def _threshold_labels(y_raw: np.ndarray) -> np.ndarray:
    # negative raw scores are class 0, everything else (including 0) class 1
    return (y_raw >= 0.0).astype(np.int64)


def synth_linear(cfg: SynthConfig) -> Dataset:
    """Gaussian features and weights, noisy linear score, sign labels."""
    X, w, eps = _synth_common(cfg)
    y_raw = X @ w + eps
    return Dataset(
        features=_standardize(X),
        labels=_threshold_labels(y_raw),
        provenance={"source": "synth", **cfg.describe(), "kind": "linear"},
        raw_scores=y_raw,
    )


def synth_nonlinear(cfg: SynthConfig) -> Dataset:
    """Trig/exponential/log mixture of the linear score, sign labels."""
    X, w, eps = _synth_common(cfg)
    s = X @ w
    y_raw = np.sin(s) + np.cos(s) + np.exp(-s) + np.log(np.abs(s) + 1.0) + eps
    return Dataset(
        features=_standardize(X),
        labels=_threshold_labels(y_raw),
        provenance={"source": "synth", **cfg.describe(), "kind": "nonlinear"},
        raw_scores=y_raw,
    )


def synthesize(cfg: SynthConfig) -> Dataset:
    return synth_linear(cfg) if cfg.kind == "linear" else synth_nonlinear(cfg)


def stratified_split(
    ds: Dataset | np.ndarray, train_fraction: float = 0.8, seed: int = 0
) -> SplitPlan:
    """Per-class shuffled split; test takes round(count * (1 - fraction))
    of each class (at least 1 when the class has >= 2 members).

    Singleton classes go to the training side with a logged warning.
    """
    labels = ds.labels if isinstance(ds, Dataset) else np.asarray(ds, dtype=np.int64)
    if labels.size == 0:
        raise ValueError("cannot split an empty dataset")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    rng = make_rng(seed)
    train_parts, test_parts = [], []
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        count = idx.size
        if count == 1:
            log.warning("class %d has a single sample; keeping it in train", cls)
            train_parts.append(idx)
            continue
        perm = rng.permutation(idx)
        n_test = int(math.floor(count * (1.0 - train_fraction) + 0.5))
        n_test = min(max(n_test, 1), count - 1)
        test_parts.append(perm[:n_test])
        train_parts.append(perm[n_test:])
    train = np.sort(np.concatenate(train_parts))
    test = np.sort(np.concatenate(test_parts)) if test_parts else np.array([], dtype=np.int64)
    return SplitPlan(train, test, seed=seed, train_fraction=train_fraction)


# ---------------------------------------------------------------------------
# canonical dataset files: CSV with a trailing "label" column + JSON sidecar
# ---------------------------------------------------------------------------


def save_dataset(ds: Dataset, csv_path: str | Path) -> Path:
    csv_path = Path(csv_path)
    names = ds.provenance.get("feature_columns") or [f"x{j + 1}" for j in range(ds.d)]
    with csv_path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(list(names) + ["label"]) + "\n")
        for i in range(ds.n):
            row = [repr(float(v)) for v in ds.features[i]]
            label = (
                ds.class_names[ds.labels[i]] if ds.class_names else str(int(ds.labels[i]))
            )
            fh.write(",".join(row + [label]) + "\n")
    sidecar = csv_path.with_suffix(".json")
    sidecar.write_text(
        json.dumps(ds.provenance, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return sidecar


def read_dataset(csv_path: str | Path) -> Dataset:
    """Load a canonical dataset CSV (every column but 'label' is a feature)."""
    csv_path = Path(csv_path)
    with csv_path.open(newline="", encoding="utf-8") as fh:
        header = next(csv.reader(fh), None)
    if header is None:
        raise ValueError(f"{csv_path}: file is empty")
    if "label" not in header:
        raise ValueError(f"{csv_path}: canonical dataset needs a 'label' column")
    features = [c for c in header if c != "label"]
    ds = load_csa_csv(csv_path, features, "label")
    sidecar = csv_path.with_suffix(".json")
    if sidecar.exists():
        ds.provenance.update(json.loads(sidecar.read_text(encoding="utf-8")))
    return ds
