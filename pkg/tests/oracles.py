"""Independent reference implementations used to cross-check the fast paths.

The gate oracle builds explicit 2^n x 2^n operators by Kronecker products
(little-endian: qubit 0 embeds closest to the identity on the right) and
applies them with a dense matrix-vector product. Nothing here shares code
with the package's simulator.
"""
from __future__ import annotations

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
P0 = np.array([[1, 0], [0, 0]], dtype=complex)
P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def rx_matrix(angle: float) -> np.ndarray:
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def rz_matrix(angle: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])


def h_matrix() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def phase_matrix(angle: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * angle)])


def op_at(gate: np.ndarray, qubit: int, n: int) -> np.ndarray:
    return np.kron(np.eye(2 ** (n - 1 - qubit)), np.kron(gate, np.eye(2**qubit)))


def cx_matrix(control: int, target: int, n: int) -> np.ndarray:
    return op_at(P0, control, n) + op_at(P1, control, n) @ op_at(X, target, n)


def random_circuit(rng: np.random.Generator, num_qubits: int, num_gates: int) -> list[tuple]:
    """Gate list as (name, qubits..., angle?) tuples."""
    ops = []
    for _ in range(num_gates):
        name = rng.choice(["rx", "rz", "h", "p", "cx"])
        if name == "cx" and num_qubits < 2:
            name = "rx"
        if name == "cx":
            control, target = rng.choice(num_qubits, size=2, replace=False)
            ops.append(("cx", int(control), int(target)))
        elif name == "h":
            ops.append(("h", int(rng.integers(num_qubits))))
        else:
            ops.append((name, int(rng.integers(num_qubits)), float(rng.uniform(-2 * np.pi, 2 * np.pi))))
    return ops


def apply_circuit_oracle(ops: list[tuple], num_qubits: int) -> np.ndarray:
    """Run the gate list on |0...0> with explicit full matrices."""
    state = np.zeros(2**num_qubits, dtype=complex)
    state[0] = 1.0
    for op in ops:
        if op[0] == "cx":
            matrix = cx_matrix(op[1], op[2], num_qubits)
        elif op[0] == "h":
            matrix = op_at(h_matrix(), op[1], num_qubits)
        elif op[0] == "rx":
            matrix = op_at(rx_matrix(op[2]), op[1], num_qubits)
        elif op[0] == "rz":
            matrix = op_at(rz_matrix(op[2]), op[1], num_qubits)
        else:
            matrix = op_at(phase_matrix(op[2]), op[1], num_qubits)
        state = matrix @ state
    return state


def apply_circuit_simulator(ops: list[tuple], num_qubits: int):
    """Run the same gate list through the package simulator."""
    from qkpca import statevector as sv

    state = sv.new_zero_state(num_qubits)
    for op in ops:
        if op[0] == "cx":
            state = sv.apply_cx(state, op[1], op[2])
        elif op[0] == "h":
            state = sv.apply_h(state, op[1])
        elif op[0] == "rx":
            state = sv.apply_rx(state, op[1], op[2])
        elif op[0] == "rz":
            state = sv.apply_rz(state, op[1], op[2])
        else:
            state = sv.apply_phase(state, op[1], op[2])
    return state
