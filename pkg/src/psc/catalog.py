"""Resolve textual specifiers for frames, channels, states and subtheories."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import gates
from .channels import (
    KrausChannel,
    depolarizing_eps1,
    depolarizing_eps2,
    identity_channel,
    pauli_mixture,
    unitary_channel,
)
from .frames import FRAME_LABELS, FrameError, frame_from_label  # noqa: F401
from .linalg import ket, matrix_from_json, projector
from .subtheory import SUBTHEORY_LABELS, enumerate_stabilizer_states, subtheory_from_label  # noqa: F401


class SpecError(ValueError):
    """A specifier or input file could not be resolved."""


def read_json(path) -> object:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise SpecError(f"{path}: cannot read ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno} ({exc.msg})") from None


def load_matrix(path) -> np.ndarray:
    try:
        return matrix_from_json(read_json(path))
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(f"{path}: {exc}") from None


def named_matrix(name: str) -> np.ndarray:
    if name in gates.NAMED:
        return gates.NAMED[name]
    if name.endswith(".json"):
        return load_matrix(name)
    raise SpecError(f"unknown matrix '{name}' (built-ins: {', '.join(sorted(gates.NAMED))})")


def channel_from_spec(spec: str, dim: int) -> KrausChannel:
    kind, _, arg = spec.partition(":")
    try:
        if spec == "id":
            ch = identity_channel(dim)
        elif spec == "depol-eps1":
            ch = depolarizing_eps1()
        elif spec == "depol-eps2":
            ch = depolarizing_eps2()
        elif kind == "unitary" and arg:
            ch = unitary_channel(named_matrix(arg), arg if arg in gates.NAMED else Path(arg).stem)
        elif kind == "pauli-mix" and arg:
            weights = [float(w) for w in arg.split(",")]
            d = 2 if dim % 2 == 0 else 3
            ch = pauli_mixture(weights, d=d, label=spec)
        elif kind == "kraus" and arg:
            obj = read_json(arg)
            if not isinstance(obj, list) or not obj:
                raise SpecError(f"{arg}: expected a non-empty JSON array of matrix objects")
            try:
                ops = [matrix_from_json(m) for m in obj]
            except ValueError as exc:
                raise SpecError(f"{arg}: {exc}") from None
            ch = KrausChannel(ops, Path(arg).stem)
        else:
            raise SpecError(f"unknown channel specifier '{spec}'")
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(f"channel '{spec}': {exc}") from None
    if ch.dim != dim:
        raise SpecError(f"channel '{spec}' acts on dimension {ch.dim}, frame needs {dim}")
    return ch if kind == "unitary" else ch.relabel(spec)


_QUBIT_STATES = {
    "zero": ket(1, 0),
    "one": ket(0, 1),
    "plus": ket(1, 1),
    "minus": ket(1, -1),
    "plus-i": ket(1, 1j),
    "minus-i": ket(1, -1j),
    "h-magic": ket(np.cos(np.pi / 8), np.sin(np.pi / 8)),
    "t-magic": ket(1, np.exp(1j * np.pi / 4)),
}


def state_from_spec(spec: str, d: int, n: int) -> np.ndarray:
    dim = d**n
    kind, _, arg = spec.partition(":")
    if spec == "mixed":
        rho = np.eye(dim) / dim
    elif dim == 2 and spec in _QUBIT_STATES:
        rho = projector(_QUBIT_STATES[spec])
    elif kind == "stab" and arg:
        states = enumerate_stabilizer_states(d, n)
        if arg not in states:
            raise SpecError(f"unknown stabilizer state '{arg}' (have: {', '.join(states)})")
        rho = states[arg]
    elif kind == "basis" and arg.isdigit() and int(arg) < dim:
        rho = np.zeros((dim, dim), dtype=complex)
        rho[int(arg), int(arg)] = 1
    elif spec.endswith(".json"):
        rho = load_matrix(spec)
    else:
        raise SpecError(f"unknown state specifier '{spec}'")
    if rho.shape != (dim, dim):
        raise SpecError(f"state '{spec}' has shape {rho.shape}, frame needs dimension {dim}")
    return np.asarray(rho, dtype=complex)


def frame_spec(label: str):
    try:
        return frame_from_label(label)
    except (FrameError, ValueError) as exc:
        raise SpecError(str(exc)) from None


def subtheory_spec(label: str):
    try:
        return subtheory_from_label(label)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
