"""Quantum-kernel PCA toolkit.

Encode tabular data into qubit registers through four feature maps
(including a trainable self-adaptive one), build fidelity or RBF Gram
matrices, run kernel PCA dimension sweeps, and benchmark information
retention with a classifier suite and collapse-rate statistics.
"""

__version__ = "0.1.0"

from .benchmark import EvalReport, run_benchmark
from .classifiers import ClassifierKind, fit_predict
from .datasets import (
    Dataset,
    SplitPlan,
    SynthConfig,
    load_csa_csv,
    preprocess,
    stratified_split,
    synth_linear,
    synth_nonlinear,
)
from .feature_maps import FeatureMapSpec, MapKind, SaqkParams, encode
from .kernels import (
    KernelMatrix,
    alignment,
    cross_kernel,
    default_sigma,
    quantum_kernel,
    rbf_kernel,
)
from .kpca import PcaModel, center_kernel, fit, sweep, transform
from .metrics import accuracy, cohen_kappa, collapse_rate, f1_macro
from .saqk_train import TrainConfig, TrainHistory, train_saqk
from .statevector import (
    StateVector,
    apply_cx,
    apply_h,
    apply_phase,
    apply_rx,
    apply_rz,
    fidelity,
    new_zero_state,
)

__all__ = [
    "ClassifierKind",
    "Dataset",
    "EvalReport",
    "FeatureMapSpec",
    "KernelMatrix",
    "MapKind",
    "PcaModel",
    "SaqkParams",
    "SplitPlan",
    "StateVector",
    "SynthConfig",
    "TrainConfig",
    "TrainHistory",
    "accuracy",
    "alignment",
    "apply_cx",
    "apply_h",
    "apply_phase",
    "apply_rx",
    "apply_rz",
    "center_kernel",
    "cohen_kappa",
    "collapse_rate",
    "cross_kernel",
    "default_sigma",
    "encode",
    "f1_macro",
    "fidelity",
    "fit",
    "fit_predict",
    "load_csa_csv",
    "new_zero_state",
    "preprocess",
    "quantum_kernel",
    "rbf_kernel",
    "run_benchmark",
    "stratified_split",
    "sweep",
    "synth_linear",
    "synth_nonlinear",
    "train_saqk",
    "transform",
]
