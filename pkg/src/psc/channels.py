"""CPTP maps as Kraus decompositions and their Choi fingerprints."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import gates
from .linalg import DEFAULT_TOL, ShapeError, as_matrix, is_psd, is_unitary


class ChannelError(ValueError):
    """Raised for invalid channels or channel inputs."""


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """``rho -> sum_k E_k rho E_k^dagger`` for a fixed list of Kraus operators."""

    kraus_ops: tuple[np.ndarray, ...]
    label: str = "channel"
    dim: int = field(init=False)

    def __init__(self, kraus_ops, label: str = "channel", validate: bool = True,
                 tol: float = DEFAULT_TOL):
        ops = tuple(as_matrix(E) for E in kraus_ops)
        if not ops:
            raise ChannelError("a channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        for E in ops:
            if E.shape != (dim, dim):
                raise ShapeError("Kraus operators must be square and equally sized")
            E.setflags(write=False)
        object.__setattr__(self, "kraus_ops", ops)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "dim", dim)
        if validate and completeness_error(self) > tol:
            raise ChannelError(
                f"channel '{label}' is not trace preserving: "
                f"|sum E^dag E - I| = {completeness_error(self):.3g}"
            )

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)

    def __len__(self) -> int:
        return len(self.kraus_ops)

    def __repr__(self) -> str:
        return f"KrausChannel(label={self.label!r}, dim={self.dim}, n_kraus={len(self)})"

    @property
    def stacked(self) -> np.ndarray:
        return np.stack(self.kraus_ops)

    def relabel(self, label: str) -> KrausChannel:
        return KrausChannel(self.kraus_ops, label, validate=False)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    dim: int
    matrix: np.ndarray

    def distance(self, other: ChoiMatrix) -> float:
        if self.dim != other.dim:
            return float("inf")
        return float(np.linalg.norm(self.matrix - other.matrix))

    def is_cp(self, tol: float = DEFAULT_TOL) -> bool:
        return is_psd(self.matrix, tol)

    def is_tp(self, tol: float = DEFAULT_TOL) -> bool:
        # Input factor first: tracing the output leaves the identity.
        d = self.dim
        reduced = np.trace(self.matrix.reshape(d, d, d, d), axis1=1, axis2=3)
        return bool(np.max(np.abs(reduced - np.eye(d))) <= tol)


def completeness_error(channel: KrausChannel) -> float:
    E = channel.stacked
    total = np.einsum("kji,kjl->il", E.conj(), E)
    return float(np.max(np.abs(total - np.eye(channel.dim))))


def is_cptp(channel: KrausChannel, tol: float = DEFAULT_TOL) -> bool:
    return completeness_error(channel) <= tol


def apply(channel: KrausChannel, rho) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape[-2:] != (channel.dim, channel.dim):
        raise ShapeError(f"operator of shape {rho.shape} does not match channel dim {channel.dim}")
    E = channel.stacked
    return np.einsum("kij,jl,kml->im", E, rho, E.conj())


def apply_many(channel: KrausChannel, ops: np.ndarray) -> np.ndarray:
    """Apply to a stack of operators with shape ``(m, dim, dim)``."""
    E = channel.stacked
    return np.einsum("kij,mjl,knl->min", E, ops, E.conj())


def choi(channel: KrausChannel) -> ChoiMatrix:
    """Unnormalized Choi matrix ``sum_ij |i><j| (x) eps(|i><j|)``."""
    d = channel.dim
    units = np.zeros((d * d, d, d), dtype=np.complex128)
    for i, j in product(range(d), repeat=2):
        units[i * d + j, i, j] = 1
    images = apply_many(channel, units).reshape(d, d, d, d)
    return ChoiMatrix(d, images.transpose(0, 2, 1, 3).reshape(d * d, d * d))


def apply_via_choi(c: ChoiMatrix, rho) -> np.ndarray:
    d = c.dim
    blocks = c.matrix.reshape(d, d, d, d)  # [i, a, j, b] = <a| eps(|i><j|) |b>
    return np.einsum("iajb,ij->ab", blocks, as_matrix(rho))


def choi_distance(a: KrausChannel, b: KrausChannel) -> float:
    return choi(a).distance(choi(b))


def channels_equal(a: KrausChannel, b: KrausChannel, tol: float = DEFAULT_TOL) -> bool:
    """Operational equivalence: Choi matrices closer than ``tol`` in Frobenius norm."""
    return a.dim == b.dim and choi_distance(a, b) < tol


def remix_kraus(channel: KrausChannel, V, label: str | None = None) -> KrausChannel:
    """Kraus operators ``F_j = sum_k V_jk E_k`` for a unitary mixing matrix ``V``.

    The operator list is zero-padded to the size of ``V``; resulting operators
    with Frobenius norm below 1e-12 are dropped.
    """
    V = as_matrix(V)
    if V.shape[0] != V.shape[1] or not is_unitary(V):
        raise ChannelError("mixing matrix must be unitary")
    k = len(channel)
    if V.shape[0] < k:
        raise ChannelError(f"mixing matrix of size {V.shape[0]} is smaller than {k} Kraus operators")
    E = np.zeros((V.shape[0], channel.dim, channel.dim), dtype=np.complex128)
    E[:k] = channel.stacked
    F = np.einsum("jk,kab->jab", V, E)
    keep = [f for f in F if np.linalg.norm(f) >= 1e-12]
    return KrausChannel(keep, label or f"{channel.label}~remix", validate=False)


def compose(second: KrausChannel, first: KrausChannel, label: str | None = None) -> KrausChannel:
    """``second o first``."""
    if second.dim != first.dim:
        raise ShapeError("cannot compose channels of different dimension")
    ops = [F @ E for F in second.kraus_ops for E in first.kraus_ops]
    return KrausChannel(ops, label or f"{second.label}*{first.label}", validate=False)


def identity_channel(dim: int = 2) -> KrausChannel:
    return KrausChannel([np.eye(dim)], "id")


def unitary_channel(U, label: str = "unitary") -> KrausChannel:
    U = as_matrix(U)
    if U.shape[0] != U.shape[1] or not is_unitary(U):
        raise ChannelError(f"'{label}' is not unitary")
    return KrausChannel([U], label)


def pauli_basis(d: int, n: int = 1) -> list[np.ndarray]:
    """Pauli operators in mixture order.

    Qubits use ``I, X, Y, Z`` per system; odd d uses ``X(x) Z(p)`` ordered by
    ``(x, p)``. Multi-system operators are tensor products in lexicographic
    order of the per-system labels.
    """
    if d == 2:
        single = [gates.I2, gates.X, gates.Y, gates.Z]
    else:
        single = [gates.shift(d, x) @ gates.clock(d, p) for x in range(d) for p in range(d)]
    out = []
    for combo in product(single, repeat=n):
        m = np.ones((1, 1), dtype=np.complex128)
        for s in combo:
            m = np.kron(m, s)
        out.append(m)
    return out


def pauli_mixture(weights, d: int | None = None, label: str = "pauli-mix") -> KrausChannel:
    """Random Pauli channel with Kraus operators ``sqrt(w_R) R``."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or np.any(w < -1e-12) or abs(w.sum() - 1) > 1e-9:
        raise ChannelError("weights must be non-negative and sum to 1")
    if d is None:
        d = int(round(np.sqrt(w.size)))
    n = 1
    while d ** (2 * n) < w.size:
        n += 1
    if d ** (2 * n) != w.size:
        raise ChannelError(f"{w.size} weights do not match a Pauli group over d={d}")
    basis = pauli_basis(d, n)
    ops = [np.sqrt(max(wi, 0.0)) * R for wi, R in zip(w, basis) if wi > 1e-15]
    return KrausChannel(ops, label)


def depolarizing_eps1() -> KrausChannel:
    """Completely depolarizing qubit channel as the uniform Pauli mixture."""
    return pauli_mixture([0.25] * 4, d=2, label="depol-eps1")


def depolarizing_eps2() -> KrausChannel:
    """Completely depolarizing qubit channel with Kraus operators ``H R / 2``."""
    ops = [0.5 * gates.H @ R for R in (gates.I2, gates.X, gates.Y, gates.Z)]
    return KrausChannel(ops, "depol-eps2")


@dataclass(frozen=True)
class UnitaryDecomposition:
    """Whether every Kraus operator is ``c_k U_k`` with ``c_k > 0`` and ``U_k`` unitary."""

    proportional_unitary: bool
    factors: tuple[tuple[float, np.ndarray], ...] = ()
    failing_index: int | None = None


def unitary_kraus_decompositions(channel: KrausChannel,
                                 tol: float = DEFAULT_TOL) -> UnitaryDecomposition:
    factors = []
    for k, E in enumerate(channel.kraus_ops):
        gram = E.conj().T @ E
        c2 = np.trace(gram).real / channel.dim
        if c2 <= tol or np.max(np.abs(gram - c2 * np.eye(channel.dim))) > tol:
            return UnitaryDecomposition(False, failing_index=k)
        c = float(np.sqrt(c2))
        factors.append((c, E / c))
    return UnitaryDecomposition(True, tuple(factors))
