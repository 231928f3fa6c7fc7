"""Finite subtheories: stabilizer states, Clifford groups, Pauli measurements."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path

import numpy as np
from scipy.optimize import linprog

from . import gates
from .channels import KrausChannel, apply, depolarizing_eps1, depolarizing_eps2, pauli_basis, unitary_channel
from .frames import WignerFrame, wigner_of_effect, wigner_of_operator
from .linalg import DEFAULT_TOL, as_matrix, matrix_from_json, projector

SUPPORTED = {(2, 1), (3, 1), (2, 2)}
HULL_TOL = 1e-7


class SubtheoryError(ValueError):
    pass


def _check_supported(d: int, n: int):
    if (d, n) not in SUPPORTED:
        raise SubtheoryError(f"(d, n) = ({d}, {n}) not supported; choose from {sorted(SUPPORTED)}")


# Clifford groups -------------------------------------------------------------

def clifford_generators(d: int, n: int) -> dict[str, np.ndarray]:
    _check_supported(d, n)
    if (d, n) == (2, 1):
        return {"H": gates.H, "P": gates.P}
    if (d, n) == (3, 1):
        return {"F": gates.fourier(3), "S": gates.qudit_phase(3)}
    return {
        "H1": np.kron(gates.H, gates.I2),
        "H2": np.kron(gates.I2, gates.H),
        "P1": np.kron(gates.P, gates.I2),
        "P2": np.kron(gates.I2, gates.P),
        "CNOT": gates.CNOT,
    }


def canonical_phase(U: np.ndarray) -> np.ndarray:
    """``U`` divided by the phase of its first non-negligible entry."""
    flat = U.ravel()
    k = int(np.argmax(np.abs(flat) > 1e-6))
    return U * (abs(flat[k]) / flat[k])


def phase_key(U: np.ndarray) -> bytes:
    V = canonical_phase(U)
    grid = np.round(np.concatenate([V.real.ravel(), V.imag.ravel()]), 9) + 0.0
    return grid.tobytes()


@lru_cache(maxsize=None)
def _clifford_closure(d: int, n: int) -> tuple[tuple[str, np.ndarray], ...]:
    gens = clifford_generators(d, n)
    ident = np.eye(d**n, dtype=np.complex128)
    seen = {phase_key(ident): None}
    out = [("id", ident)]
    queue = deque(out)
    while queue:
        word, U = queue.popleft()
        for name, g in gens.items():
            V = canonical_phase(g @ U)
            key = phase_key(V)
            if key in seen:
                continue
            seen[key] = None
            label = name if word == "id" else f"{name}*{word}"
            V.setflags(write=False)
            out.append((label, V))
            queue.append((label, V))
    return tuple(out)


def generate_clifford(d: int, n: int) -> list[np.ndarray]:
    """Clifford group modulo global phase, in breadth-first order from the identity."""
    return [U for _, U in _clifford_closure(d, n)]


def labeled_clifford(d: int, n: int) -> list[tuple[str, np.ndarray]]:
    """As :func:`generate_clifford`, with each element's generator word as label."""
    return list(_clifford_closure(d, n))


# Stabilizer states -----------------------------------------------------------

def pauli_names(d: int, n: int) -> list[str]:
    if d == 2:
        single = ["I", "X", "Y", "Z"]
    else:
        single = [f"X{x}Z{p}" for x in range(d) for p in range(d)]
    return ["".join(c) if d == 2 else ".".join(c) for c in product(single, repeat=n)]


def _stabilizer_label(rho: np.ndarray, d: int, n: int) -> tuple[tuple, str]:
    basis = pauli_basis(d, n)
    names = pauli_names(d, n)
    parts, key = [], []
    for idx, (name, R) in enumerate(zip(names[1:], basis[1:]), start=1):
        val = np.trace(R @ rho)
        if abs(abs(val) - 1) < 1e-6:
            k = int(round(np.angle(val) / (2 * np.pi / d))) % d
            sign = ("+" if k == 0 else "-") if d == 2 else f"w{k}:"
            parts.append(f"{sign}{name}")
            key.append((idx, k))
            if len(parts) == n:
                break
    return tuple(key), " ".join(parts)


@lru_cache(maxsize=None)
def _stabilizer_states(d: int, n: int) -> tuple[tuple[str, np.ndarray], ...]:
    zero = np.zeros((d**n, d**n), dtype=np.complex128)
    zero[0, 0] = 1
    seen, states = set(), []
    for U in generate_clifford(d, n):
        rho = U @ zero @ U.conj().T
        key = phase_key(rho)
        if key not in seen:
            seen.add(key)
            states.append(rho)
    labeled = sorted((_stabilizer_label(r, d, n) + (r,) for r in states), key=lambda t: t[0])
    out = []
    for _, label, rho in labeled:
        rho.setflags(write=False)
        out.append((label, rho))
    return tuple(out)


def enumerate_stabilizer_states(d: int, n: int) -> dict[str, np.ndarray]:
    """All pure stabilizer states, labelled by their stabilizer generators.

    Obtained as the Clifford orbit of ``|0...0>``; ordered by the Pauli order
    of the generators (``X, Y, Z`` for a qubit) and then by eigenvalue.
    """
    _check_supported(d, n)
    return dict(_stabilizer_states(d, n))


def pauli_povms(d: int, n: int) -> dict[str, tuple[np.ndarray, ...]]:
    """Projective measurements of the Pauli operators up to powers.

    One POVM per cyclic subgroup; outcome ``k`` is the eigenvalue ``w^k``
    (``+1`` then ``-1`` for qubits).
    """
    _check_supported(d, n)
    out = {}
    seen = set()
    for name, R in zip(pauli_names(d, n)[1:], pauli_basis(d, n)[1:]):
        key = phase_key(R)
        if key in seen:
            continue
        # Skip nontrivial powers of operators already used (same eigenbasis).
        for m in range(2, d):
            seen.add(phase_key(np.linalg.matrix_power(R, m)))
        seen.add(key)
        vals, vecs = np.linalg.eig(R)
        effects = []
        for k in range(d):
            target = np.exp(2j * np.pi * k / d) if d > 2 else (1 if k == 0 else -1)
            cols = np.abs(vals - target) < 1e-6
            # Degenerate eigenspaces (n > 1): build the projector from the operator itself.
            proj = sum(
                np.linalg.matrix_power(R, m) * np.conj(target) ** m for m in range(d)
            ) / d
            effects.append(proj if cols.sum() != 1 else projector(vecs[:, cols][:, 0]))
        out[name] = tuple(effects)
    return out


# Subtheory -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subtheory:
    label: str
    dim: int
    states: dict[str, np.ndarray]
    transformations: dict[str, KrausChannel]
    effects: dict[str, tuple[np.ndarray, ...]]
    frame_tag: str | None = None
    d: int = field(default=0)
    n: int = field(default=0)

    def __post_init__(self):
        for name, rho in self.states.items():
            if rho.shape != (self.dim, self.dim):
                raise SubtheoryError(f"state '{name}' has shape {rho.shape}, expected dim {self.dim}")
        for name, ch in self.transformations.items():
            if ch.dim != self.dim:
                raise SubtheoryError(f"transformation '{name}' acts on dim {ch.dim}, expected {self.dim}")
        for name, povm in self.effects.items():
            total = sum(povm)
            if np.max(np.abs(total - np.eye(self.dim))) > DEFAULT_TOL:
                raise SubtheoryError(f"POVM '{name}' does not sum to the identity")

    def with_transformations(self, extra: dict[str, KrausChannel], label: str | None = None) -> Subtheory:
        return Subtheory(label or self.label, self.dim, dict(self.states),
                         {**self.transformations, **extra}, dict(self.effects),
                         self.frame_tag, self.d, self.n)

    def restrict(self, transformations: list[str], label: str | None = None) -> Subtheory:
        keep = {k: self.transformations[k] for k in transformations}
        return Subtheory(label or self.label, self.dim, dict(self.states), keep,
                         dict(self.effects), self.frame_tag, self.d, self.n)


def _stabilizer_subtheory(d: int, n: int, label: str, frame_tag: str | None) -> Subtheory:
    states = enumerate_stabilizer_states(d, n)
    channels = {name: unitary_channel(U, name) for name, U in labeled_clifford(d, n)}
    return Subtheory(label, d**n, states, channels, pauli_povms(d, n), frame_tag, d, n)


def build_single_qubit_stabilizer() -> Subtheory:
    return _stabilizer_subtheory(2, 1, "qubit-stab", None)


def build_qutrit_stabilizer() -> Subtheory:
    return _stabilizer_subtheory(3, 1, "qutrit-stab", "gross")


def build_two_qubit_stabilizer() -> Subtheory:
    return _stabilizer_subtheory(2, 2, "2qubit-stab", "wg-multi")


def build_pauli_qubit() -> Subtheory:
    """Single-qubit stabilizer states and measurements with Pauli gates only."""
    base = build_single_qubit_stabilizer()
    paulis = {k: unitary_channel(gates.QUBIT_PAULIS[k], k) for k in "IXYZ"}
    return Subtheory("pauli-qubit", 2, dict(base.states), paulis, dict(base.effects), None, 2, 1)


def with_depolarizing(sub: Subtheory) -> Subtheory:
    """Add the two completely depolarizing decompositions to a qubit subtheory."""
    return sub.with_transformations({"depol-eps1": depolarizing_eps1(), "depol-eps2": depolarizing_eps2()})


# Non-negativity and closure --------------------------------------------------

@dataclass(frozen=True)
class Partition:
    nonnegative: tuple[str, ...]
    negative: tuple[str, ...]
    minima: dict[str, float]


def filter_nonnegative(frame: WignerFrame, candidates: dict[str, np.ndarray],
                       kind: str = "state", tol: float = DEFAULT_TOL) -> Partition:
    """Split states (``kind='state'``) or effects (``kind='effect'``) by Wigner sign."""
    if kind not in ("state", "effect"):
        raise ValueError("kind must be 'state' or 'effect'")
    minima = {}
    for name, op in candidates.items():
        vals = wigner_of_operator(frame, op).real if kind == "state" else wigner_of_effect(frame, op).values
        minima[name] = float(vals.min())
    nonneg = tuple(k for k, v in minima.items() if v >= -tol)
    neg = tuple(k for k, v in minima.items() if v < -tol)
    return Partition(nonneg, neg, minima)


def _hermitian_vector(ops: np.ndarray) -> np.ndarray:
    """Real coordinates of Hermitian matrices (upper triangle, real and imaginary parts)."""
    dim = ops.shape[-1]
    iu = np.triu_indices(dim)
    flat = ops[..., iu[0], iu[1]]
    return np.concatenate([flat.real, flat.imag], axis=-1)


def hull_residual(target: np.ndarray, vertices: np.ndarray) -> float:
    """Minimal L1 distance from ``target`` to the convex hull of ``vertices``."""
    A = _hermitian_vector(vertices).T
    b = _hermitian_vector(target[None])[0]
    m, k = A.shape
    # variables: weights (k), positive slack (m), negative slack (m)
    c = np.concatenate([np.zeros(k), np.ones(2 * m)])
    A_eq = np.vstack([
        np.hstack([A, np.eye(m), -np.eye(m)]),
        np.concatenate([np.ones(k), np.zeros(2 * m)])[None],
    ])
    b_eq = np.concatenate([b, [1.0]])
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        return float("inf")
    return float(res.fun)


@dataclass(frozen=True)
class ClosureReport:
    valid: bool
    violations: tuple[tuple[str, str, float], ...]
    checked: int


def validate_closure(sub: Subtheory, tol: float = HULL_TOL) -> ClosureReport:
    """Check every image ``eps(rho)`` lies in the convex hull of the states."""
    names = list(sub.states)
    verts = np.array([sub.states[k] for k in names]) if names else np.zeros((0, sub.dim, sub.dim))
    violations, checked = [], 0
    for tname, ch in sub.transformations.items():
        for sname in names:
            img = apply(ch, sub.states[sname])
            checked += 1
            if np.min(np.linalg.norm(verts - img, axis=(1, 2))) <= tol:
                continue
            r = hull_residual(img, verts)
            if r > tol:
                violations.append((tname, sname, r))
    return ClosureReport(not violations, tuple(violations), checked)


# Custom subtheories ----------------------------------------------------------

def _read_json(path: Path):
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SubtheoryError(f"{path}: invalid JSON ({exc.msg})") from None


def load_subtheory_dir(path) -> Subtheory:
    """Load ``states/*.json``, ``channels/*.json`` and ``povms/*.json`` from a directory.

    States are matrix objects; channels and POVMs are JSON arrays of matrix objects.
    """
    root = Path(path)
    if not root.is_dir():
        raise SubtheoryError(f"{root}: not a directory")

    def load_all(sub, many):
        out = {}
        for f in sorted((root / sub).glob("*.json")):
            obj = _read_json(f)
            try:
                if many:
                    if not isinstance(obj, list) or not obj:
                        raise ValueError("expected a non-empty array of matrix objects")
                    out[f.stem] = tuple(matrix_from_json(m) for m in obj)
                else:
                    out[f.stem] = matrix_from_json(obj)
            except ValueError as exc:
                raise SubtheoryError(f"{f}: {exc}") from None
        return out

    states = load_all("states", False)
    if not states:
        raise SubtheoryError(f"{root}: no states/*.json found")
    dim = next(iter(states.values())).shape[0]
    channels = {}
    for name, ops in load_all("channels", True).items():
        try:
            channels[name] = KrausChannel(ops, name)
        except ValueError as exc:
            raise SubtheoryError(f"{root / 'channels' / name}.json: {exc}") from None
    povms = {k: tuple(as_matrix(e) for e in v) for k, v in load_all("povms", True).items()}
    d = next((p for p in (2, 3, 5, 7) if any(p**k == dim for k in range(1, 7))), dim)
    n = int(round(np.log(dim) / np.log(d)))
    return Subtheory(f"custom:{root}", dim, states, channels, povms, None, d, n)


def subtheory_from_label(label: str) -> Subtheory:
    builders = {
        "qubit-stab": build_single_qubit_stabilizer,
        "qutrit-stab": build_qutrit_stabilizer,
        "2qubit-stab": build_two_qubit_stabilizer,
        "pauli-qubit": build_pauli_qubit,
    }
    if label in builders:
        return builders[label]()
    if label.startswith("custom:"):
        return load_subtheory_dir(label[len("custom:"):])
    raise SubtheoryError(f"unknown subtheory '{label}'")


SUBTHEORY_LABELS = ("qubit-stab", "qutrit-stab", "2qubit-stab", "pauli-qubit")
