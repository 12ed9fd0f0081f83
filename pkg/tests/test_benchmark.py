import numpy as np
import pytest

from qkpca.benchmark import EvalReport, cell_seed, run_benchmark, save_report_csv, save_summary_json
from qkpca.datasets import stratified_split


@pytest.fixture(scope="module")
def toy_embeddings():
    """Two kernel arms over dims {3, 2}; arm 'good' separates classes,
    arm 'noisy' is the same with heavy noise added."""
    rng = np.random.default_rng(0)
    n = 60
    labels = np.array([0] * 30 + [1] * 30)
    base = rng.standard_normal((n, 3)) + labels[:, None] * 3.0
    noisy = base + rng.standard_normal((n, 3)) * 4.0
    emb = {
        "good": {3: base, 2: base[:, :2]},
        "noisy": {3: noisy, 2: noisy[:, :2]},
    }
    return emb, labels


def test_single_cell_report(toy_embeddings):
    emb, labels = toy_embeddings
    report = run_benchmark(
        {"good": {2: emb["good"][2]}}, labels, ["knn"], repeats=1, base_seed=0
    )
    assert len(report.rows) == 1
    row = report.rows[0]
    assert row.kernel == "good" and row.dim == 2 and row.classifier == "knn"
    assert 0.0 <= row.accuracy <= 1.0


def test_row_count_arithmetic(toy_embeddings):
    emb, labels = toy_embeddings
    report = run_benchmark(emb, labels, ["knn", "nb"], repeats=3, base_seed=1)
    assert len(report.rows) == 2 * 2 * 2 * 3  # kernels x dims x classifiers x repeats


def test_shared_split_across_kernels(toy_embeddings):
    """All arms in one repeat must see identical partitions: the split
    depends only on (labels, base_seed + repeat)."""
    emb, labels = toy_embeddings
    for r in range(3):
        plan_a = stratified_split(labels, seed=42 + r)
        plan_b = stratified_split(labels, seed=42 + r)
        np.testing.assert_array_equal(plan_a.train_indices, plan_b.train_indices)


def test_deterministic_given_base_seed(toy_embeddings):
    emb, labels = toy_embeddings
    a = run_benchmark(emb, labels, ["rf"], repeats=2, base_seed=5)
    b = run_benchmark(emb, labels, ["rf"], repeats=2, base_seed=5)
    assert [(r.accuracy, r.kappa) for r in a.rows] == [(r.accuracy, r.kappa) for r in b.rows]


def test_parallel_matches_serial(toy_embeddings):
    emb, labels = toy_embeddings
    serial = run_benchmark(emb, labels, ["knn", "rf"], repeats=3, base_seed=2, workers=1)
    parallel = run_benchmark(emb, labels, ["knn", "rf"], repeats=3, base_seed=2, workers=2)
    key = lambda rows: sorted((r.kernel, r.dim, r.classifier, r.repeat, r.accuracy) for r in rows)
    assert key(serial.rows) == key(parallel.rows)


def test_aggregate_and_collapse(toy_embeddings):
    emb, labels = toy_embeddings
    report = run_benchmark(emb, labels, ["knn"], repeats=4, base_seed=3)
    agg = report.aggregate()
    assert set(agg) == {(k, d, "knn") for k in ("good", "noisy") for d in (3, 2)}
    for stats in agg.values():
        for metric, (mean, std) in stats.items():
            assert np.isfinite(mean) and std >= 0.0
    rates = report.collapse_rates()
    assert ("good", "knn", "accuracy") in rates


def test_best_ensemble_selection(toy_embeddings):
    emb, labels = toy_embeddings
    report = run_benchmark(emb, labels, ["rf", "et", "knn"], repeats=2, base_seed=0)
    assert report.best_ensemble("good") in ("rf", "et")


def test_inconsistent_sample_counts_rejected(toy_embeddings):
    emb, labels = toy_embeddings
    broken = {"good": {2: emb["good"][2][:-1]}}
    with pytest.raises(ValueError, match="shape"):
        run_benchmark(broken, labels, ["knn"], repeats=1)


def test_cell_seed_is_order_independent():
    a = cell_seed(0, 1, "rbf", 3, "rf")
    b = cell_seed(0, 1, "rbf", 3, "rf")
    assert a == b
    assert cell_seed(0, 1, "rbf", 3, "rf") != cell_seed(0, 2, "rbf", 3, "rf")
    assert cell_seed(0, 1, "rbf", 3, "rf") != cell_seed(0, 1, "saqk", 3, "rf")


def test_report_files(tmp_path, toy_embeddings):
    emb, labels = toy_embeddings
    report = run_benchmark(emb, labels, ["knn"], repeats=2, base_seed=0)
    csv_path = tmp_path / "report.csv"
    save_report_csv(report, csv_path)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "kernel,dim,classifier,repeat,accuracy,f1_macro,kappa"
    assert len(lines) == 1 + len(report.rows)
    json_path = tmp_path / "summary.json"
    save_summary_json(report, json_path)
    import json

    payload = json.loads(json_path.read_text())
    assert payload["repeats"] == 2
    assert len(payload["cells"]) == 4
    assert all("collapse_rate" in r for r in payload["collapse_rates"])


def test_aggregate_rejects_missing_repeats(toy_embeddings):
    emb, labels = toy_embeddings
    report = run_benchmark(emb, labels, ["knn"], repeats=2, base_seed=0)
    report.repeats = 3
    with pytest.raises(ValueError, match="rows"):
        report.aggregate()
