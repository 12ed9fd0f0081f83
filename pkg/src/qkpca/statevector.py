"""Dense statevector simulation for small qubit registers.

Conventions used throughout the package:

* Basis ordering is little-endian: qubit 0 is the least-significant bit of
  the basis-state index, so ``|q2 q1 q0>`` maps to index ``q2*4 + q1*2 + q0``.
* Gate matrices::

      Rx(t) = [[cos(t/2), -i sin(t/2)], [-i sin(t/2), cos(t/2)]]
      Rz(t) = diag(exp(-i t/2), exp(+i t/2))
      H     = [[1, 1], [1, -1]] / sqrt(2)
      P(t)  = diag(1, exp(i t))

* All gate application functions are pure: they return a new StateVector
  and never touch the input, so states are safe to share across workers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 12


@dataclass
class StateVector:
    """Amplitudes of a pure state on ``num_qubits`` qubits (little-endian)."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise ValueError(
                f"num_qubits must be in 1..{MAX_QUBITS}, got {self.num_qubits}"
            )
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2**self.num_qubits,):
            raise ValueError(
                f"expected {2**self.num_qubits} amplitudes, got shape {amps.shape}"
            )
        self.amplitudes = amps

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def new_zero_state(num_qubits: int) -> StateVector:
    """All-qubits-|0> register."""
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ValueError(f"num_qubits must be in 1..{MAX_QUBITS}, got {num_qubits}")
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.num_qubits:
        raise ValueError(
            f"qubit index {qubit} out of range for {state.num_qubits}-qubit state"
        )


def _axis(state: StateVector, qubit: int) -> int:
    # reshape((2,)*n) puts the most significant bit on axis 0
    return state.num_qubits - 1 - qubit


def _apply_matrix(state: StateVector, matrix: np.ndarray, qubit: int) -> StateVector:
    n = state.num_qubits
    psi = state.amplitudes.reshape((2,) * n)
    ax = _axis(state, qubit)
    psi = np.moveaxis(psi, ax, 0)
    psi = np.tensordot(matrix, psi, axes=(1, 0))
    psi = np.moveaxis(psi, 0, ax)
    return StateVector(n, psi.reshape(-1))


def _apply_diagonal(state: StateVector, d0: complex, d1: complex, qubit: int) -> StateVector:
    n = state.num_qubits
    psi = state.amplitudes.reshape((2,) * n).copy()
    ax = _axis(state, qubit)
    view = np.moveaxis(psi, ax, 0)
    view[0] *= d0
    view[1] *= d1
    return StateVector(n, psi.reshape(-1))


def apply_rx(state: StateVector, qubit: int, angle: float) -> StateVector:
    _check_qubit(state, qubit)
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    m = np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    return _apply_matrix(state, m, qubit)


def apply_rz(state: StateVector, qubit: int, angle: float) -> StateVector:
    _check_qubit(state, qubit)
    return _apply_diagonal(
        state, np.exp(-0.5j * angle), np.exp(0.5j * angle), qubit
    )


def apply_h(state: StateVector, qubit: int) -> StateVector:
    _check_qubit(state, qubit)
    m = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)
    return _apply_matrix(state, m, qubit)


def apply_phase(state: StateVector, qubit: int, angle: float) -> StateVector:
    _check_qubit(state, qubit)
    return _apply_diagonal(state, 1.0, np.exp(1j * angle), qubit)


def apply_cx(state: StateVector, control: int, target: int) -> StateVector:
    _check_qubit(state, control)
    _check_qubit(state, target)
    if control == target:
        raise ValueError("control and target qubit must differ")
    n = state.num_qubits
    psi = state.amplitudes.reshape((2,) * n).copy()
    cax, tax = _axis(state, control), _axis(state, target)
    view = np.moveaxis(psi, (cax, tax), (0, 1))
    view[1] = view[1, ::-1].copy()
    return StateVector(n, psi.reshape(-1))


def fidelity(a: StateVector, b: StateVector) -> float:
    """Squared overlap |<a|b>|^2 of two pure states.

    Symmetric, global-phase invariant, and equal to 1 for identical states.
    """
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"register size mismatch: {a.num_qubits} vs {b.num_qubits} qubits"
        )
    overlap = np.vdot(a.amplitudes, b.amplitudes)
    return float(overlap.real**2 + overlap.imag**2)
