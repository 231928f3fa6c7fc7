"""Named single- and two-system gates used throughout the package."""

from __future__ import annotations

import numpy as np

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
P = np.diag([1, 1j]).astype(np.complex128)
T = np.diag([1, np.exp(1j * np.pi / 4)]).astype(np.complex128)
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)

QUBIT_PAULIS = {"I": I2, "X": X, "Y": Y, "Z": Z}

for _m in (I2, X, Y, Z, H, P, T, CNOT):
    _m.setflags(write=False)


def omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def shift(d: int, x: int = 1) -> np.ndarray:
    """Generalized Pauli shift ``X(x) = sum_k |k + x><k|``."""
    out = np.zeros((d, d), dtype=np.complex128)
    for k in range(d):
        out[(k + x) % d, k] = 1
    return out


def clock(d: int, p: int = 1) -> np.ndarray:
    """Generalized Pauli clock ``Z(p) = sum_k chi(p k) |k><k|``."""
    if d == 2:
        return np.diag([(-1.0) ** ((p * k) % 2) for k in range(2)]).astype(np.complex128)
    return np.diag([omega(d) ** ((p * k) % d) for k in range(d)])


def fourier(d: int) -> np.ndarray:
    j, k = np.meshgrid(range(d), range(d), indexing="ij")
    return omega(d) ** ((j * k) % d) / np.sqrt(d)


def qudit_phase(d: int) -> np.ndarray:
    """Phase gate diag(1, ..., 1, w) used as the qutrit Clifford generator."""
    diag = np.ones(d, dtype=np.complex128)
    diag[-1] = omega(d)
    return np.diag(diag)


NAMED = {
    "identity": I2,
    "hadamard": H,
    "phase": P,
    "t-gate": T,
    "pauli-x": X,
    "pauli-y": Y,
    "pauli-z": Z,
    "cnot": CNOT,
    "fourier3": fourier(3),
    "phase3": qudit_phase(3),
    "shift3": shift(3),
    "clock3": clock(3),
}
