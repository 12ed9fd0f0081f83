"""Quantum feature maps: encode a feature vector into a register state.

Four circuit families are supported, one qubit per feature:

* ``pauli-x``: Rx(x_i) on every qubit.
* ``z-map``: per repetition, H on every qubit, then P(2 x_i).
* ``zz-map``: the z-map layer plus CX-conjugated phases
  P(2 (pi - x_i)(pi - x_j)) on adjacent qubit pairs.
* ``saqk``: trainable layer Rx(theta_i * x_i) followed by Rz(x_i);
  theta is fitted by kernel-target alignment (see saqk_train).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .statevector import (
    StateVector,
    apply_cx,
    apply_h,
    apply_phase,
    apply_rx,
    apply_rz,
    new_zero_state,
)


class MapKind(str, Enum):
    PAULI_X = "pauli-x"
    Z_MAP = "z-map"
    ZZ_MAP = "zz-map"
    SAQK = "saqk"


@dataclass(frozen=True)
class SaqkParams:
    """Per-qubit rotation multipliers of the self-adaptive layer."""

    theta: tuple[float, ...]

    def __post_init__(self):
        theta = tuple(float(t) for t in self.theta)
        if not all(np.isfinite(theta)):
            raise ValueError("theta contains non-finite values")
        object.__setattr__(self, "theta", theta)

    @property
    def dim(self) -> int:
        return len(self.theta)

    def to_json(self) -> str:
        return json.dumps({"theta": list(self.theta)})

    @classmethod
    def from_json(cls, text: str) -> "SaqkParams":
        data = json.loads(text)
        return cls(theta=tuple(data["theta"]))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "SaqkParams":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class FeatureMapSpec:
    """Which circuit family to encode with, plus its static configuration.

    ``reps`` applies to the z-map/zz-map families only; ``params`` is
    required iff ``kind`` is saqk and must match the feature dimension.
    """

    kind: MapKind
    reps: int = 2
    params: SaqkParams | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", MapKind(self.kind))
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if self.kind is MapKind.SAQK and self.params is None:
            raise ValueError("saqk feature map requires params")
        if self.kind is not MapKind.SAQK and self.params is not None:
            raise ValueError(f"{self.kind.value} feature map takes no params")

    def describe(self) -> dict:
        out = {"kind": self.kind.value}
        if self.kind in (MapKind.Z_MAP, MapKind.ZZ_MAP):
            out["reps"] = self.reps
        if self.params is not None:
            out["theta"] = list(self.params.theta)
        return out


def encode(x: np.ndarray, spec: FeatureMapSpec) -> StateVector:
    """Prepare the register state for one feature vector.

    Features are expected to be preprocessed to a bounded angle range
    (see ``datasets.preprocess``); one qubit per feature.
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    d = x.shape[0]
    if spec.params is not None and spec.params.dim != d:
        raise ValueError(
            f"params dimension {spec.params.dim} != feature dimension {d}"
        )
    state = new_zero_state(d)
    if spec.kind is MapKind.PAULI_X:
        for i in range(d):
            state = apply_rx(state, i, x[i])
    elif spec.kind is MapKind.Z_MAP:
        for _ in range(spec.reps):
            state = _z_layer(state, x)
    elif spec.kind is MapKind.ZZ_MAP:
        for _ in range(spec.reps):
            state = _z_layer(state, x)
            for i in range(d - 1):
                angle = 2.0 * (np.pi - x[i]) * (np.pi - x[i + 1])
                state = apply_cx(state, i, i + 1)
                state = apply_phase(state, i + 1, angle)
                state = apply_cx(state, i, i + 1)
    else:  # SAQK: variational Rx layer first, then the Pauli-Z encoding
        theta = spec.params.theta
        for i in range(d):
            state = apply_rx(state, i, theta[i] * x[i])
        for i in range(d):
            state = apply_rz(state, i, x[i])
    return state


def _z_layer(state: StateVector, x: np.ndarray) -> StateVector:
    for i in range(x.shape[0]):
        state = apply_h(state, i)
    for i in range(x.shape[0]):
        state = apply_phase(state, i, 2.0 * x[i])
    return state
