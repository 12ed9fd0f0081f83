"""Repeated-split benchmark over kernels, dimensions, and classifier probes.

One stratified 80/20 split is drawn per repeat and shared by every
(kernel, dimension, classifier) cell, so all arms are compared on the
same partitions. Means and standard deviations aggregate the repeats;
collapse rates summarize the decline of each mean score across the
dimension sweep.
"""
from __future__ import annotations

import json
import multiprocessing
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .classifiers import ClassifierKind, fit_predict
from .datasets import stratified_split
from .metrics import accuracy, cohen_kappa, collapse_rate, f1_macro

METRICS = ("accuracy", "f1_macro", "kappa")
ENSEMBLE_KINDS = (ClassifierKind.RANDOM_FOREST, ClassifierKind.EXTRA_TREES)


@dataclass(frozen=True)
class CellScore:
    kernel: str
    dim: int
    classifier: str
    repeat: int
    accuracy: float
    f1_macro: float
    kappa: float


@dataclass
class EvalReport:
    rows: list[CellScore]
    repeats: int
    base_seed: int
    config: dict = field(default_factory=dict)

    def aggregate(self) -> dict[tuple[str, int, str], dict[str, tuple[float, float]]]:
        """Mean and population std per (kernel, dim, classifier) and metric."""
        cells: dict[tuple[str, int, str], list[CellScore]] = {}
        for row in self.rows:
            cells.setdefault((row.kernel, row.dim, row.classifier), []).append(row)
        out = {}
        for key, group in cells.items():
            if len(group) != self.repeats:
                raise ValueError(
                    f"cell {key} has {len(group)} rows, expected {self.repeats}"
                )
            out[key] = {
                m: (
                    float(np.mean([getattr(r, m) for r in group])),
                    float(np.std([getattr(r, m) for r in group])),
                )
                for m in METRICS
            }
        return out

    def collapse_rates(self) -> dict[tuple[str, str, str], float]:
        """Collapse rate per (kernel, classifier, metric), from mean scores.

        Combos whose top-dimension mean score is not positive (where the
        statistic is undefined) are omitted.
        """
        agg = self.aggregate()
        by_combo: dict[tuple[str, str], dict[int, dict[str, float]]] = {}
        for (kernel, dim, clf), metrics in agg.items():
            by_combo.setdefault((kernel, clf), {})[dim] = {
                m: metrics[m][0] for m in METRICS
            }
        out = {}
        for (kernel, clf), per_dim in by_combo.items():
            if len(per_dim) < 2:
                continue
            for m in METRICS:
                scores = {dim: values[m] for dim, values in per_dim.items()}
                if scores[max(scores)] <= 0.0:
                    continue
                out[(kernel, clf, m)] = collapse_rate(scores)
        return out

    def best_ensemble(self, kernel: str) -> str:
        """Ensemble probe with the highest mean accuracy at the top dimension."""
        agg = self.aggregate()
        candidates = {}
        for (k, dim, clf), metrics in agg.items():
            if k == kernel and clf in [e.value for e in ENSEMBLE_KINDS]:
                candidates.setdefault(clf, {})[dim] = metrics["accuracy"][0]
        if not candidates:
            raise ValueError(f"no ensemble classifiers evaluated for kernel {kernel!r}")
        return max(
            candidates, key=lambda clf: candidates[clf][max(candidates[clf])]
        )


def cell_seed(base_seed: int, repeat: int, kernel: str, dim: int, classifier: str) -> int:
    """Stable per-cell seed, independent of evaluation order."""
    key = f"{base_seed}|{repeat}|{kernel}|{dim}|{classifier}".encode()
    return zlib.crc32(key)


def run_benchmark(
    embeddings: dict[str, dict[int, np.ndarray]],
    labels: np.ndarray,
    classifiers: list[ClassifierKind | str],
    repeats: int = 10,
    base_seed: int = 0,
    workers: int = 1,
) -> EvalReport:
    """Score every (kernel, dim, classifier) cell over repeated shared splits."""
    labels = np.asarray(labels, dtype=np.int64)
    kinds = [ClassifierKind(c) for c in classifiers]
    if not embeddings or not kinds:
        raise ValueError("need at least one embedding kind and one classifier")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    n = labels.shape[0]
    for kernel, per_dim in embeddings.items():
        for dim, coords in per_dim.items():
            if coords.shape != (n, dim):
                raise ValueError(
                    f"embedding {kernel!r} at dim {dim} has shape {coords.shape}, "
                    f"expected ({n}, {dim})"
                )
    args = (embeddings, labels, kinds, base_seed)
    if workers > 1 and repeats > 1:
        _BENCH_WORK.update(args=args)
        try:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(processes=min(workers, repeats)) as pool:
                batches = pool.map(_run_repeat_staged, range(repeats))
        finally:
            _BENCH_WORK.clear()
    else:
        batches = [_run_repeat(args, r) for r in range(repeats)]
    rows = [row for batch in batches for row in batch]
    return EvalReport(rows=rows, repeats=repeats, base_seed=base_seed)


_BENCH_WORK: dict = {}


def _run_repeat_staged(repeat: int) -> list[CellScore]:
    return _run_repeat(_BENCH_WORK["args"], repeat)


def _run_repeat(args, repeat: int) -> list[CellScore]:
    embeddings, labels, kinds, base_seed = args
    plan = stratified_split(labels, train_fraction=0.8, seed=base_seed + repeat)
    tr, te = plan.train_indices, plan.test_indices
    rows = []
    for kernel in embeddings:
        for dim, coords in embeddings[kernel].items():
            for kind in kinds:
                pred = fit_predict(
                    kind,
                    (coords[tr], labels[tr]),
                    coords[te],
                    seed=cell_seed(base_seed, repeat, kernel, dim, kind.value),
                )
                rows.append(
                    CellScore(
                        kernel=kernel,
                        dim=int(dim),
                        classifier=kind.value,
                        repeat=repeat,
                        accuracy=accuracy(labels[te], pred),
                        f1_macro=f1_macro(labels[te], pred),
                        kappa=cohen_kappa(labels[te], pred),
                    )
                )
    return rows


# ---------------------------------------------------------------------------
# report files
# ---------------------------------------------------------------------------


def save_report_csv(report: EvalReport, path: str | Path) -> None:
    """Tidy per-repeat scores: kernel,dim,classifier,repeat,accuracy,f1_macro,kappa."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("kernel,dim,classifier,repeat,accuracy,f1_macro,kappa\n")
        for r in sorted(
            report.rows, key=lambda r: (r.kernel, -r.dim, r.classifier, r.repeat)
        ):
            fh.write(
                f"{r.kernel},{r.dim},{r.classifier},{r.repeat},"
                f"{r.accuracy!r},{r.f1_macro!r},{r.kappa!r}\n"
            )


def save_summary_json(report: EvalReport, path: str | Path) -> None:
    agg = report.aggregate()
    cells = [
        {
            "kernel": kernel,
            "dim": dim,
            "classifier": clf,
            **{
                m: {"mean": agg[(kernel, dim, clf)][m][0], "std": agg[(kernel, dim, clf)][m][1]}
                for m in METRICS
            },
        }
        for (kernel, dim, clf) in sorted(agg, key=lambda k: (k[0], -k[1], k[2]))
    ]
    rates = [
        {"kernel": kernel, "classifier": clf, "metric": m, "collapse_rate": v}
        for (kernel, clf, m), v in sorted(report.collapse_rates().items())
    ]
    payload = {
        "repeats": report.repeats,
        "base_seed": report.base_seed,
        "config": report.config,
        "cells": cells,
        "collapse_rates": rates,
    }
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
