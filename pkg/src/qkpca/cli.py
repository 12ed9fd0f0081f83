"""Command-line entry points.

One subcommand per pipeline stage (synth, ingest, kernel, train-kernel,
pca, bench) plus the composite ``pipeline``, which also writes a manifest
recording seeds, input hashes, output hashes, and timings so a run can be
reproduced bit-for-bit with ``pipeline --from-manifest``.

Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
The report path (bench/pipeline) renders figures next to the CSV/JSON
output unless ``--no-figures`` is passed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .benchmark import run_benchmark, save_report_csv, save_summary_json
from .classifiers import ClassifierKind
from .datasets import (
    Dataset,
    SynthConfig,
    load_csa_csv,
    preprocess,
    read_dataset,
    save_dataset,
    synthesize,
)
from .feature_maps import FeatureMapSpec, MapKind, SaqkParams
from .kernels import KernelMatrix, default_sigma, quantum_kernel, rbf_kernel, save_kernel
from .kpca import fit as kpca_fit
from .kpca import save_embedding_csv, sweep
from .saqk_train import TrainConfig, TrainHistory, save_history_csv, train_saqk

KERNEL_CHOICES = ("rbf", "pauli-x", "z-map", "zz-map", "saqk")
CLASSIFIER_CHOICES = tuple(k.value for k in ClassifierKind)
DEFAULT_KERNELS = ("rbf", "saqk")


class UsageError(Exception):
    """Bad flag/config combination; maps to exit code 2."""


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles --help/usage errors itself
        return int(exc.code or 0)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        args.func(args)
        return 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkpca",
        description="Quantum-kernel PCA benchmarking toolkit",
    )
    parser.add_argument("--version", action="version", version=f"qkpca {__version__}")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("synth", help="generate a synthetic low-entropy dataset")
    p.add_argument("--kind", choices=("linear", "nonlinear"), required=True)
    p.add_argument("--n", type=int, default=300, help="number of samples (default 300)")
    p.add_argument("--d", type=int, default=7, help="number of features (default 7)")
    p.add_argument(
        "--noise-sigma",
        type=float,
        default=float(np.sqrt(0.1)),
        help="noise standard deviation (default sqrt(0.1))",
    )
    p.add_argument("--seed", type=int, default=0)
    _add_out(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("ingest", help="load a sensor CSV into the canonical dataset format")
    p.add_argument("--input", required=True, help="source CSV with a header row")
    p.add_argument("--features", required=True, help="comma-separated feature column names")
    p.add_argument("--label", required=True, help="label column name")
    _add_out(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("kernel", help="compute and cache one Gram matrix")
    p.add_argument("--data", required=True, help="canonical dataset CSV")
    _add_kernel_opts(p, single=True)
    _add_threads(p)
    _add_figures(p)
    _add_out(p)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("train-kernel", help="fit self-adaptive kernel parameters")
    p.add_argument("--data", required=True, help="canonical dataset CSV")
    _add_train_opts(p)
    p.add_argument("--no-preprocess", action="store_true", help="skip angle preprocessing")
    _add_threads(p)
    _add_figures(p)
    _add_out(p)
    p.set_defaults(func=cmd_train_kernel)

    p = sub.add_parser("pca", help="kernel-PCA dimension sweep to embedding CSVs")
    p.add_argument("--data", required=True, help="canonical dataset CSV")
    _add_kernel_opts(p, single=True)
    p.add_argument("--dims", help="comma-separated dimensions (default: d down to 2)")
    _add_threads(p)
    _add_figures(p)
    _add_out(p)
    p.set_defaults(func=cmd_pca)

    p = sub.add_parser("bench", help="repeated-split benchmark over kernels and dims")
    p.add_argument("--data", required=True, help="canonical dataset CSV")
    _add_bench_opts(p)
    _add_threads(p)
    _add_figures(p)
    _add_out(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("pipeline", help="full run: data, kernels, sweep, benchmark, manifest")
    src = p.add_argument_group("data source (choose one)")
    src.add_argument("--synth-kind", choices=("linear", "nonlinear"))
    src.add_argument("--n", type=int, default=300)
    src.add_argument("--d", type=int, default=7)
    src.add_argument("--noise-sigma", type=float, default=float(np.sqrt(0.1)))
    src.add_argument("--synth-seed", type=int, default=0)
    src.add_argument("--input", help="source CSV to ingest instead of synthesizing")
    src.add_argument("--features", help="comma-separated feature columns (with --input)")
    src.add_argument("--label", help="label column name (with --input)")
    _add_bench_opts(p)
    p.add_argument("--config", help="JSON config file; explicit flags win over its values")
    p.add_argument("--from-manifest", help="rerun the configuration recorded in a manifest")
    _add_threads(p)
    _add_figures(p)
    _add_out(p)
    p.set_defaults(func=cmd_pipeline)
    return parser


def _add_out(p: argparse.ArgumentParser) -> None:
    default = os.environ.get("QKPCA_OUT_DIR", "qkpca_out")
    p.add_argument("--out", default=default, help=f"output directory (default {default!r})")


def _add_threads(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker pool size for kernel and benchmark evaluation",
    )


def _add_figures(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-figures", action="store_true", help="skip figure rendering")


def _add_kernel_opts(p: argparse.ArgumentParser, single: bool) -> None:
    if single:
        p.add_argument("--kernel", choices=KERNEL_CHOICES, required=True)
    p.add_argument("--sigma", type=float, help="RBF width (default: scale rule)")
    p.add_argument("--reps", type=int, default=2, help="z-map/zz-map repetitions (default 2)")
    p.add_argument("--params", help="trained SAQK parameter JSON")
    p.add_argument("--no-preprocess", action="store_true", help="skip angle preprocessing")


def _add_train_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--spsa-a", type=float, default=0.1)
    p.add_argument("--spsa-c", type=float, default=0.1)
    p.add_argument("--spsa-alpha", type=float, default=0.602)
    p.add_argument("--spsa-gamma", type=float, default=0.101)
    p.add_argument("--minibatch", type=int, default=100)
    p.add_argument("--train-seed", type=int, default=0)


def _add_bench_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--kernels",
        default=",".join(DEFAULT_KERNELS),
        help=f"comma-separated kernels from {KERNEL_CHOICES} (default rbf,saqk)",
    )
    p.add_argument("--sigma", type=float, help="RBF width (default: scale rule)")
    p.add_argument("--reps", type=int, default=2, help="z-map/zz-map repetitions")
    p.add_argument("--params", help="trained SAQK parameter JSON (skips training)")
    p.add_argument("--dims", help="comma-separated dimensions (default: d down to 2)")
    p.add_argument(
        "--classifiers",
        default=",".join(CLASSIFIER_CHOICES),
        help=f"comma-separated probes from {CLASSIFIER_CHOICES} (default: all)",
    )
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--base-seed", type=int, default=0)
    if not any(a.dest == "no_preprocess" for a in p._actions):
        p.add_argument("--no-preprocess", action="store_true", help="skip angle preprocessing")
    _add_train_opts(p)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_synth(args) -> None:
    cfg = _config(
        SynthConfig,
        n=args.n,
        d=args.d,
        noise_sigma=args.noise_sigma,
        kind=args.kind,
        seed=args.seed,
    )
    ds = synthesize(cfg)
    outdir = _ensure_out(args.out)
    path = outdir / f"synth_{cfg.kind}.csv"
    save_dataset(ds, path)
    print(f"wrote {path} ({ds.n} samples, {ds.d} features, {ds.num_classes} classes)")


def cmd_ingest(args) -> None:
    features = _split_csv_list(args.features)
    ds = load_csa_csv(args.input, features, args.label)
    outdir = _ensure_out(args.out)
    path = outdir / "dataset.csv"
    save_dataset(ds, path)
    print(f"wrote {path} ({ds.n} samples, {ds.d} features, {ds.num_classes} classes)")


def cmd_kernel(args) -> None:
    ds = read_dataset(args.data)
    if not args.no_preprocess:
        ds = preprocess(ds)
    K = _compute_kernel(args.kernel, ds.features, args)
    outdir = _ensure_out(args.out)
    path = outdir / f"gram_{args.kernel}.csv"
    save_kernel(K, path)
    print(f"wrote {path} (n={K.n}, kind={K.kind})")
    if not args.no_figures:
        from . import plots

        plots.save_figure(plots.figure_kernel_heatmap(K), outdir / f"gram_{args.kernel}.png")


def cmd_train_kernel(args) -> None:
    ds = read_dataset(args.data)
    if not args.no_preprocess:
        ds = preprocess(ds)
    config = _train_config(args)
    params, history = train_saqk(ds.features, ds.labels, config, workers=args.threads)
    outdir = _ensure_out(args.out)
    params.save(outdir / "saqk_params.json")
    save_history_csv(history, outdir / "training_history.csv")
    print(
        f"wrote {outdir / 'saqk_params.json'} "
        f"(alignment {history.initial_alignment:.4f} -> {history.final_alignment:.4f})"
    )
    if not args.no_figures:
        from . import plots

        plots.save_figure(
            plots.figure_training_history(history), outdir / "training_history.png"
        )


def cmd_pca(args) -> None:
    ds = read_dataset(args.data)
    if not args.no_preprocess:
        ds = preprocess(ds)
    dims = _resolve_dims(args.dims, ds.d)
    spec_or_sigma = _spec_or_sigma(args.kernel, ds, args)
    coords = sweep(ds.features, spec_or_sigma, dims, workers=args.threads)
    outdir = _ensure_out(args.out)
    for dim in dims:
        path = outdir / f"embedding_{args.kernel}_{dim}d.csv"
        save_embedding_csv(coords[dim], ds.labels, ds.class_names, path)
        print(f"wrote {path}")
    if not args.no_figures and max(dims) >= 2:
        from . import plots

        dim = min(d for d in dims if d >= 2)
        plots.save_figure(
            plots.figure_embedding_scatter(
                coords[dim], ds.labels, f"{args.kernel} embedding ({dim}D)"
            ),
            outdir / f"embedding_{args.kernel}_{dim}d.png",
        )


def cmd_bench(args) -> None:
    ds = read_dataset(args.data)
    outdir = _ensure_out(args.out)
    _run_report_path(ds, args, outdir, tracker=_FileTracker())


def cmd_pipeline(args) -> None:
    if args.from_manifest:
        _rerun_from_manifest(args)
        return
    merged = _merge_config_file(args)
    outdir = _ensure_out(merged.out)
    tracker = _FileTracker()
    timings: dict[str, float] = {}
    try:
        t0 = time.perf_counter()
        ds, source_info = _pipeline_data(merged, outdir, tracker)
        timings["data"] = time.perf_counter() - t0
        report_info = _run_report_path(ds, merged, outdir, tracker, timings)
    except UsageError:
        tracker.cleanup()
        raise
    except Exception as exc:
        stage = tracker.stage or "setup"
        tracker.cleanup()
        raise RuntimeError(f"pipeline failed at stage {stage!r}: {exc}") from exc
    manifest = {
        "tool": {"name": "qkpca", "version": __version__},
        "config": _echo_config(merged),
        "source": source_info,
        "outputs": {
            str(p.relative_to(outdir)): _sha256(p) for p in sorted(tracker.files)
        },
        "timings_s": {k: round(v, 3) for k, v in timings.items()},
        "environment": {
            "python": sys.version.split()[0],
            "numpy": np.__version__,
        },
        **report_info,
    }
    manifest_path = outdir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {manifest_path}")


# ---------------------------------------------------------------------------
# the report path shared by bench and pipeline
# ---------------------------------------------------------------------------


class _FileTracker:
    """Remembers files written by one invocation so a failed pipeline can
    remove its partial outputs."""

    def __init__(self):
        self.files: list[Path] = []
        self.stage: str | None = None

    def add(self, path: Path) -> Path:
        self.files.append(Path(path))
        return Path(path)

    def cleanup(self) -> None:
        for path in self.files:
            try:
                path.unlink(missing_ok=True)
            except OSError:
                pass


def _run_report_path(
    ds: Dataset,
    args,
    outdir: Path,
    tracker: _FileTracker,
    timings: dict | None = None,
) -> dict:
    timings = timings if timings is not None else {}
    kernels = _split_csv_list(args.kernels)
    for k in kernels:
        if k not in KERNEL_CHOICES:
            raise UsageError(f"unknown kernel {k!r}; choose from {KERNEL_CHOICES}")
    classifiers = _split_csv_list(args.classifiers)
    for c in classifiers:
        if c not in CLASSIFIER_CHOICES:
            raise UsageError(f"unknown classifier {c!r}; choose from {CLASSIFIER_CHOICES}")
    if args.repeats < 1:
        raise UsageError(f"--repeats must be >= 1, got {args.repeats}")
    dims = _resolve_dims(args.dims, ds.d)
    figures = not args.no_figures

    tracker.stage = "preprocess"
    t0 = time.perf_counter()
    work = ds if args.no_preprocess else preprocess(ds)
    timings["preprocess"] = time.perf_counter() - t0

    info: dict = {}
    params = None
    history: TrainHistory | None = None
    if "saqk" in kernels:
        if args.params:
            params = SaqkParams.load(args.params)
            if params.dim != work.d:
                raise UsageError(
                    f"params dimension {params.dim} does not match data dimension {work.d}"
                )
        else:
            tracker.stage = "train-kernel"
            t0 = time.perf_counter()
            config = _train_config(args)
            params, history = train_saqk(
                work.features, work.labels, config, workers=args.threads
            )
            timings["train-kernel"] = time.perf_counter() - t0
            params.save(tracker.add(outdir / "saqk_params.json"))
            save_history_csv(history, tracker.add(outdir / "training_history.csv"))
            info["training"] = {
                "initial_alignment": history.initial_alignment,
                "final_alignment": history.final_alignment,
                "config": config.describe(),
            }

    tracker.stage = "kernels"
    t0 = time.perf_counter()
    grams: dict[str, KernelMatrix] = {}
    for kind in kernels:
        grams[kind] = _compute_kernel(kind, work.features, args, params)
        sidecar = save_kernel(grams[kind], tracker.add(outdir / f"gram_{kind}.csv"))
        tracker.add(sidecar)
    timings["kernels"] = time.perf_counter() - t0

    tracker.stage = "pca"
    t0 = time.perf_counter()
    embeddings: dict[str, dict[int, np.ndarray]] = {}
    for kind, K in grams.items():
        model = kpca_fit(K, max(dims))
        embeddings[kind] = {d: model.train_coords[:, :d].copy() for d in dims}
        for d in dims:
            save_embedding_csv(
                embeddings[kind][d],
                work.labels,
                work.class_names,
                tracker.add(outdir / f"embedding_{kind}_{d}d.csv"),
            )
    timings["pca"] = time.perf_counter() - t0

    tracker.stage = "bench"
    t0 = time.perf_counter()
    report = run_benchmark(
        embeddings,
        work.labels,
        classifiers,
        repeats=args.repeats,
        base_seed=args.base_seed,
        workers=args.threads,
    )
    report.config = {
        "kernels": kernels,
        "dims": dims,
        "classifiers": classifiers,
        "repeats": args.repeats,
        "base_seed": args.base_seed,
    }
    timings["bench"] = time.perf_counter() - t0
    save_report_csv(report, tracker.add(outdir / "report.csv"))
    save_summary_json(report, tracker.add(outdir / "summary.json"))
    print(f"wrote {outdir / 'report.csv'} ({len(report.rows)} rows)")

    if figures:
        tracker.stage = "figures"
        t0 = time.perf_counter()
        from . import plots

        for metric in ("accuracy", "f1_macro", "kappa"):
            plots.save_figure(
                plots.figure_scores_vs_dimension(report, metric),
                tracker.add(outdir / f"scores_{metric}.png"),
            )
        plots.save_figure(
            plots.figure_collapse_rates(report), tracker.add(outdir / "collapse_rates.png")
        )
        for kind, K in grams.items():
            plots.save_figure(
                plots.figure_kernel_heatmap(K), tracker.add(outdir / f"gram_{kind}.png")
            )
        if 2 in dims:
            for kind in embeddings:
                plots.save_figure(
                    plots.figure_embedding_scatter(
                        embeddings[kind][2], work.labels, f"{kind} embedding (2D)"
                    ),
                    tracker.add(outdir / f"embedding_{kind}_2d.png"),
                )
        if history is not None:
            plots.save_figure(
                plots.figure_training_history(history),
                tracker.add(outdir / "training_history.png"),
            )
        timings["figures"] = time.perf_counter() - t0
    tracker.stage = None
    return info


# ---------------------------------------------------------------------------
# pipeline helpers
# ---------------------------------------------------------------------------


def _pipeline_data(args, outdir: Path, tracker: _FileTracker) -> tuple[Dataset, dict]:
    tracker.stage = "data"
    if args.input and args.synth_kind:
        raise UsageError("choose either --input or --synth-kind, not both")
    if args.input:
        if not args.features or not args.label:
            raise UsageError("--input requires --features and --label")
        source = Path(args.input)
        if not source.exists():
            raise RuntimeError(f"input CSV not found: {source}")
        ds = load_csa_csv(source, _split_csv_list(args.features), args.label)
        info = {"input": str(source), "sha256": _sha256(source)}
    elif args.synth_kind:
        cfg = _config(
            SynthConfig,
            n=args.n,
            d=args.d,
            noise_sigma=args.noise_sigma,
            kind=args.synth_kind,
            seed=args.synth_seed,
        )
        ds = synthesize(cfg)
        info = {"synth": cfg.describe()}
    else:
        raise UsageError("pipeline needs a data source: --synth-kind or --input")
    path = tracker.add(outdir / "dataset.csv")
    sidecar = save_dataset(ds, path)
    tracker.add(sidecar)
    return ds, info


_PIPELINE_CONFIG_KEYS = (
    "synth_kind",
    "n",
    "d",
    "noise_sigma",
    "synth_seed",
    "input",
    "features",
    "label",
    "kernels",
    "sigma",
    "reps",
    "params",
    "dims",
    "classifiers",
    "repeats",
    "base_seed",
    "iterations",
    "spsa_a",
    "spsa_c",
    "spsa_alpha",
    "spsa_gamma",
    "minibatch",
    "train_seed",
    "no_preprocess",
    "no_figures",
)


def _echo_config(args) -> dict:
    echo = {key: getattr(args, key) for key in _PIPELINE_CONFIG_KEYS}
    echo["kernels"] = _split_csv_list(echo["kernels"])
    echo["classifiers"] = _split_csv_list(echo["classifiers"])
    return echo


def _merge_config_file(args):
    """Apply JSON config file values for flags left at their defaults."""
    if not args.config:
        return args
    try:
        values = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsageError(f"config file not found: {args.config}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file is not valid JSON: {exc}") from None
    unknown = set(values) - set(_PIPELINE_CONFIG_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    defaults = vars(build_parser().parse_args(["pipeline"]))
    for key, value in values.items():
        if getattr(args, key, None) == defaults.get(key):
            setattr(args, key, value)
    return args


def _rerun_from_manifest(args) -> None:
    manifest_path = Path(args.from_manifest)
    if not manifest_path.exists():
        raise UsageError(f"manifest not found: {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    rerun = argparse.Namespace(**manifest["config"])
    rerun.out = args.out
    rerun.threads = args.threads
    rerun.config = None
    rerun.from_manifest = None
    rerun.func = cmd_pipeline
    cmd_pipeline(rerun)
    fresh = json.loads((Path(args.out) / "manifest.json").read_text(encoding="utf-8"))
    recorded, reproduced = manifest["outputs"], fresh["outputs"]
    mismatched = sorted(
        name
        for name in set(recorded) | set(reproduced)
        if recorded.get(name) != reproduced.get(name)
    )
    if mismatched:
        raise RuntimeError(
            f"reproduction mismatch for {len(mismatched)} file(s): {mismatched}"
        )
    print(f"reproduced {len(reproduced)} output files bit-identically")


# ---------------------------------------------------------------------------
# shared option handling
# ---------------------------------------------------------------------------


def _config(cls, **kwargs):
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _train_config(args) -> TrainConfig:
    return _config(
        TrainConfig,
        iterations=args.iterations,
        spsa_a=args.spsa_a,
        spsa_c=args.spsa_c,
        spsa_alpha=args.spsa_alpha,
        spsa_gamma=args.spsa_gamma,
        minibatch=args.minibatch,
        seed=args.train_seed,
    )


def _split_csv_list(value) -> list[str]:
    if isinstance(value, (list, tuple)):
        items = [str(v).strip() for v in value if str(v).strip()]
    else:
        items = [part.strip() for part in str(value).split(",") if part.strip()]
    if not items:
        raise UsageError(f"expected a comma-separated list, got {value!r}")
    return items


def _resolve_dims(dims_arg, d: int) -> list[int]:
    if dims_arg is None:
        dims = list(range(d, 1, -1)) if d >= 2 else [1]
    elif isinstance(dims_arg, (list, tuple)):
        dims = [int(v) for v in dims_arg]
    else:
        try:
            dims = [int(part) for part in _split_csv_list(dims_arg)]
        except ValueError:
            raise UsageError(f"--dims must be integers, got {dims_arg!r}") from None
    dims = sorted(set(dims), reverse=True)
    if not dims or dims[-1] < 1:
        raise UsageError(f"dims must be positive, got {dims}")
    if dims[0] > d:
        raise UsageError(f"max dim {dims[0]} exceeds feature count {d}")
    return dims


def _spec_or_sigma(kind: str, ds: Dataset, args, params: SaqkParams | None = None):
    if kind == "rbf":
        return args.sigma if args.sigma is not None else default_sigma(ds.features)
    return _feature_spec(kind, ds.d, args, params)


def _feature_spec(kind: str, d: int, args, params: SaqkParams | None = None) -> FeatureMapSpec:
    if kind == "saqk":
        if params is None:
            if not args.params:
                raise UsageError(
                    "saqk kernel needs trained parameters: pass --params or run train-kernel"
                )
            params = SaqkParams.load(args.params)
        if params.dim != d:
            raise UsageError(f"params dimension {params.dim} != data dimension {d}")
        return FeatureMapSpec(kind=MapKind.SAQK, params=params)
    return _config(FeatureMapSpec, kind=MapKind(kind), reps=args.reps)


def _compute_kernel(
    kind: str, X: np.ndarray, args, params: SaqkParams | None = None
) -> KernelMatrix:
    if kind == "rbf":
        sigma = args.sigma if args.sigma is not None else default_sigma(X)
        if sigma <= 0:
            raise UsageError(f"--sigma must be positive, got {sigma}")
        return rbf_kernel(X, sigma)
    spec = _feature_spec(kind, X.shape[1], args, params)
    return quantum_kernel(X, spec, workers=args.threads)


def _ensure_out(out: str) -> Path:
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


if __name__ == "__main__":
    sys.exit(main())
