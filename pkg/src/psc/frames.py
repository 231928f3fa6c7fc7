"""Weyl operators, phase-point operators and Wigner representations.

Normalization used throughout (``N = d**n``)::

    Tr A(u) = 1,   Tr[A(u) A(v)] = N delta_uv,   sum_u A(u) = N I
    W_rho(u)   = Tr[A(u) rho] / N          (sums to 1)
    xi_Pi(u)   = Tr[A(u) Pi]               (sums to 1 over a POVM)
    W_eps(v|u) = Tr[eps(A(u)) A(v)] / N    (column stochastic)
    rho        = sum_u W_rho(u) A(u)

With these conventions the total-probability sum
``sum_{u,v} xi(v) W_eps(v|u) W_rho(u)`` equals ``Tr[eps(rho) Pi]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from pathlib import Path

import numpy as np

from . import gates
from .channels import ChannelError, KrausChannel, apply_many, is_cptp
from .linalg import DEFAULT_TOL, as_matrix
from .phase_space import PhaseSpace, symplectic_form_table


class FrameError(ValueError):
    """Raised for an invalid phase convention or frame input."""


def chi(d: int, a) -> complex:
    """Character of Z_d: ``(-1)^a`` for qubits, ``exp(2 pi i a / d)`` otherwise."""
    a = np.asarray(a) % d
    return np.exp(2j * np.pi * a / d)


def phase_modulus(d: int) -> int:
    return 4 if d == 2 else d


def weyl_phase(d: int, g):
    """``w^g``: ``i^g`` for qubits, ``chi(-2^{-1} g)`` for odd d."""
    g = np.asarray(g)
    if d == 2:
        return 1j ** (g % 4)
    inv2 = pow(2, -1, d)
    return chi(d, -inv2 * g)


def pauli_X(d: int, x: int) -> np.ndarray:
    """Shift ``|k> -> |k + x>``.

    For odd d this direction is the one that makes ``W(u)^dagger = W(-u)``
    with the phase ``chi(-2^{-1} gamma)``, so the ``A(u)`` come out Hermitian.
    """
    return gates.shift(d, x % d)


def pauli_Z(d: int, p: int) -> np.ndarray:
    return gates.clock(d, p % d)


@dataclass(frozen=True)
class GammaFunction:
    """Integer phase convention ``gamma: Lambda -> Z_q`` stored by point index."""

    space: PhaseSpace
    q: int
    table: tuple[int, ...]
    label: str = "custom"

    def __post_init__(self):
        if self.q != phase_modulus(self.space.d):
            raise FrameError(f"q must be {phase_modulus(self.space.d)} for d={self.space.d}")
        if len(self.table) != self.space.size:
            raise FrameError(f"gamma table has {len(self.table)} entries, need {self.space.size}")
        if any(not 0 <= v < self.q for v in self.table):
            raise FrameError(f"gamma values must lie in [0, {self.q})")

    def __call__(self, point) -> int:
        return self.table[self.space.index(point)]

    @classmethod
    def from_function(cls, space: PhaseSpace, fn, label: str = "custom") -> GammaFunction:
        q = phase_modulus(space.d)
        return cls(space, q, tuple(int(fn(pt)) % q for pt in space.points), label)

    @classmethod
    def xp(cls, space: PhaseSpace) -> GammaFunction:
        """``gamma = sum_j x_j p_j`` (mod 4 for qubits, mod d otherwise)."""
        return cls.from_function(space, lambda pt: sum(pt[0::2][j] * pt[1::2][j]
                                                       for j in range(space.n)), "x.p")

    def to_json(self) -> dict:
        return {
            "d": self.space.d,
            "n": self.space.n,
            "q": self.q,
            "table": [[list(pt), v] for pt, v in zip(self.space.points, self.table)],
        }

    @classmethod
    def from_json(cls, obj, label: str = "custom") -> GammaFunction:
        try:
            d, n, q, rows = obj["d"], obj["n"], obj["q"], obj["table"]
        except (KeyError, TypeError) as exc:
            raise FrameError(f"gamma JSON missing field {exc}") from None
        space = PhaseSpace(d, n)
        values = {}
        for entry in rows:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise FrameError(f"gamma table entry {entry!r} is not [coords, value]")
            coords, v = entry
            if not isinstance(coords, list) or len(coords) != 2 * n:
                raise FrameError(f"gamma table coords {coords!r} need {2 * n} integers")
            values[space.index(coords)] = int(v)
        if len(values) != space.size:
            raise FrameError(f"gamma table covers {len(values)} of {space.size} points")
        return cls(space, q, tuple(values[i] for i in range(space.size)), label)


def _base_weyl(gamma: GammaFunction) -> np.ndarray:
    space = gamma.space
    d = space.d
    out = []
    for pt, g in zip(space.points, gamma.table):
        factors = [pauli_Z(d, p) @ pauli_X(d, x) for x, p in space.split(pt)]
        out.append(weyl_phase(d, g) * reduce(np.kron, factors))
    return np.array(out)


class WignerFrame:
    """Phase-point operators ``A(u)`` for a phase convention ``gamma``.

    ``relabel`` is an optional symplectic matrix ``M``; the frame then uses
    ``A(u) = A_gamma(M u)``, i.e. the same operator set in other coordinates.
    """

    def __init__(self, gamma: GammaFunction, label: str | None = None, relabel=None,
                 tol: float = DEFAULT_TOL):
        self.gamma = gamma
        self.space = gamma.space
        self.label = label or f"gamma[{gamma.label}]"
        self.d, self.n = self.space.d, self.space.n
        self.dim = self.space.dim
        self.norm = self.space.dim
        if gamma.table[0] != 0:
            raise FrameError("gamma(0) must be 0 so that Tr A = 1")

        weyl = _base_weyl(gamma)
        if relabel is not None:
            M = np.asarray(relabel, dtype=np.int64)
            order = [self.space.index(M @ np.array(pt)) for pt in self.space.points]
            weyl = weyl[order]
            self.relabel = M
        else:
            self.relabel = None
        # chi([v, u]) rather than chi([u, v]): with the up-shift X this orients
        # the frame so that X(x) translates A by +x and summing over p gives
        # <x|rho|x>. For qubits the two orders coincide.
        form = symplectic_form_table(self.space).T
        A = np.einsum("uv,vij->uij", chi(self.d, form), weyl) / self.norm
        bad = np.max(np.abs(A - A.conj().transpose(0, 2, 1)))
        if bad > tol:
            raise FrameError(f"gamma '{gamma.label}' gives non-Hermitian phase-point operators")
        A = 0.5 * (A + A.conj().transpose(0, 2, 1))
        weyl.setflags(write=False)
        A.setflags(write=False)
        self.weyl_operators = weyl
        self.operators = A

    def __repr__(self) -> str:
        return f"WignerFrame({self.label!r}, d={self.d}, n={self.n})"

    @property
    def points(self):
        return self.space.points

    def index(self, point) -> int:
        return self.space.index(point)

    def __getitem__(self, point) -> np.ndarray:
        return self.operators[self.index(point)]

    def expand(self, op) -> np.ndarray:
        """Coefficients ``c`` with ``op = sum_u c(u) A(u)``."""
        return np.einsum("uij,ji->u", self.operators, as_matrix(op)) / self.norm

    def expand_many(self, ops: np.ndarray) -> np.ndarray:
        """Coefficients for a stack; result is indexed ``[output point, input]``."""
        return np.einsum("vij,uji->vu", self.operators, ops) / self.norm


def weyl(frame: WignerFrame, point) -> np.ndarray:
    return frame.weyl_operators[frame.index(point)]


def phase_point_operator(frame: WignerFrame, point) -> np.ndarray:
    return frame[point]


@dataclass(frozen=True, eq=False)
class _PhaseSpaceFunction:
    frame: str
    space: PhaseSpace
    values: np.ndarray

    def __getitem__(self, point):
        return self.values[self.space.index(point)]

    def as_dict(self) -> dict:
        return {pt: float(v) for pt, v in zip(self.space.points, self.values)}

    @property
    def min(self) -> float:
        return float(self.values.min())


class WignerState(_PhaseSpaceFunction):
    """Quasiprobability distribution of a state; sums to one."""


class WignerEffect(_PhaseSpaceFunction):
    """Response function of a POVM element."""


@dataclass(frozen=True, eq=False)
class WignerChannelMatrix:
    """``values[v, u] = W_eps(v | u)``; each column sums to one."""

    frame: str
    space: PhaseSpace
    values: np.ndarray

    def __getitem__(self, pair):
        out, inp = pair
        return self.values[self.space.index(out), self.space.index(inp)]

    @property
    def min(self) -> float:
        return float(self.values.min())

    def __matmul__(self, other: WignerChannelMatrix) -> WignerChannelMatrix:
        return WignerChannelMatrix(self.frame, self.space, self.values @ other.values)


def _check_dim(frame: WignerFrame, op: np.ndarray):
    if op.shape != (frame.dim, frame.dim):
        raise FrameError(f"operator of shape {op.shape} does not act on dimension {frame.dim}")


def wigner_of_state(frame: WignerFrame, rho, tol: float = DEFAULT_TOL) -> WignerState:
    rho = as_matrix(rho)
    _check_dim(frame, rho)
    if abs(np.trace(rho) - 1) > tol:
        raise FrameError(f"state has trace {np.trace(rho):.6g}, expected 1")
    return WignerState(frame.label, frame.space, frame.expand(rho).real)


def wigner_of_operator(frame: WignerFrame, op) -> np.ndarray:
    """Expansion coefficients of an arbitrary operator, without trace checks."""
    op = as_matrix(op)
    _check_dim(frame, op)
    return frame.expand(op)


def wigner_of_effect(frame: WignerFrame, effect) -> WignerEffect:
    effect = as_matrix(effect)
    _check_dim(frame, effect)
    vals = np.einsum("uij,ji->u", frame.operators, effect).real
    return WignerEffect(frame.label, frame.space, vals)


def wigner_of_channel(frame: WignerFrame, channel: KrausChannel,
                      tol: float = DEFAULT_TOL) -> WignerChannelMatrix:
    if channel.dim != frame.dim:
        raise FrameError(f"channel on dimension {channel.dim} does not match frame dimension {frame.dim}")
    if not is_cptp(channel, tol):
        raise ChannelError(f"channel '{channel.label}' is not CPTP")
    images = apply_many(channel, np.asarray(frame.operators))
    return WignerChannelMatrix(frame.label, frame.space, frame.expand_many(images).real)


def reconstruct_state(frame: WignerFrame, W) -> np.ndarray:
    values = W.values if isinstance(W, _PhaseSpaceFunction) else np.asarray(W, dtype=float)
    if values.shape != (frame.space.size,):
        raise FrameError(f"need {frame.space.size} values, got shape {values.shape}")
    return np.einsum("u,uij->ij", values, frame.operators)


def negativity(values) -> float:
    """Total weight of negative entries."""
    arr = values.values if hasattr(values, "values") else np.asarray(values, dtype=float)
    return float(np.sum(np.maximum(0.0, -arr)))


# Built-in conventions ----------------------------------------------------

QUBIT = PhaseSpace(2, 1)

# Coordinates in which Pauli conjugation by X, Y, Z translates a qubit point
# by (0, 1), (1, 0), (1, 1) respectively.
PAULI_TRANSLATE_COORDS = ((1, 1), (1, 0))


def qubit_gamma(g10: int, g01: int, g11: int, label: str | None = None) -> GammaFunction:
    """Single-qubit gamma with ``gamma(0,0) = 0`` and the given remaining values."""
    table = {(0, 0): 0, (0, 1): g01, (1, 0): g10, (1, 1): g11}
    return GammaFunction(QUBIT, 4, tuple(table[pt] for pt in QUBIT.points),
                         label or f"{g10}{g01}{g11}")


def wootters_gibbons_family() -> list[WignerFrame]:
    """The eight Hermitian single-qubit conventions, A(0,0) = (I +/- X +/- Y +/- Z)/2."""
    out = []
    for g10 in (0, 2):
        for g01 in (0, 2):
            for g11 in (1, 3):
                g = qubit_gamma(g10, g01, g11)
                out.append(WignerFrame(g, label=f"wg-{g.label}"))
    return out


def wg_plus() -> WignerFrame:
    """Frame whose origin operator is ``(I + X + Y + Z)/2``."""
    return WignerFrame(qubit_gamma(0, 0, 3, "plus"), "wg-plus", relabel=PAULI_TRANSLATE_COORDS)


def wg_minus() -> WignerFrame:
    """Frame whose origin operator is ``(I + X + Y - Z)/2``."""
    return WignerFrame(qubit_gamma(0, 2, 3, "minus"), "wg-minus", relabel=PAULI_TRANSLATE_COORDS)


def gross(d: int = 3, n: int = 1) -> WignerFrame:
    if d == 2:
        raise FrameError("Gross' Wigner function needs odd d")
    space = PhaseSpace(d, n)
    return WignerFrame(GammaFunction.xp(space), "gross" if n == 1 else f"gross:{n}")


def wg_multi(n: int = 2) -> WignerFrame:
    """Gibbons-Wootters frame, ``gamma = sum x_j p_j mod 4``."""
    space = PhaseSpace(2, n)
    return WignerFrame(GammaFunction.xp(space), "wg-multi" if n == 2 else f"wg-multi:{n}")


def load_gamma(path) -> GammaFunction:
    path = Path(path)
    try:
        obj = json.loads(path.read_text())
    except OSError as exc:
        raise FrameError(f"{path}: cannot read gamma file ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise FrameError(f"{path}: invalid JSON ({exc.msg})") from None
    try:
        return GammaFunction.from_json(obj, label=path.stem)
    except (FrameError, ValueError) as exc:
        raise FrameError(f"{path}: {exc}") from None


def frame_from_label(label: str) -> WignerFrame:
    """Resolve ``wg-plus``, ``wg-minus``, ``gross[:n]``, ``wg-multi[:n]`` or ``custom:<path>``."""
    name, _, arg = label.partition(":")
    if name == "custom":
        return WignerFrame(load_gamma(arg), label=label)
    if name in ("wg-plus", "wg-minus") and not arg:
        return wg_plus() if name == "wg-plus" else wg_minus()
    if name in ("gross", "wg-multi"):
        try:
            n = int(arg) if arg else (1 if name == "gross" else 2)
        except ValueError:
            raise FrameError(f"bad system count in frame label '{label}'") from None
        if not 1 <= n <= 2:
            raise FrameError(f"frame '{label}': only n = 1 or 2 systems are supported")
        return gross(3, n) if name == "gross" else wg_multi(n)
    for f in wootters_gibbons_family():
        if f.label == label:
            return f
    raise FrameError(f"unknown frame '{label}'")


FRAME_LABELS = ("wg-plus", "wg-minus", "gross", "gross:2", "wg-multi", "wg-multi:1")
