"""Positivity preservation of a subtheory's transformations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..channels import apply_many
from ..frames import WignerFrame
from ..linalg import DEFAULT_TOL
from ..subtheory import Subtheory
from .models import PreconditionError


@dataclass(frozen=True)
class PositivityVerdict:
    preserving: bool
    min_value: float
    worst: tuple[str, str, tuple[int, ...], float] | None  # (transformation, state, point, value)
    checked: int

    def to_json(self) -> dict:
        w = self.worst
        return {
            "preserving": self.preserving,
            "min_value": self.min_value,
            "worst": None if w is None else {
                "transformation": w[0], "state": w[1], "point": list(w[2]), "value": w[3]},
            "checked": self.checked,
        }


def check_positivity_preservation(frame: WignerFrame, sub: Subtheory,
                                  tol: float = DEFAULT_TOL) -> PositivityVerdict:
    """Do all transformations keep every non-negative state non-negative?"""
    names = list(sub.states)
    rhos = np.array([sub.states[k] for k in names])
    for name, rho in zip(names, rhos):
        if frame.expand(rho).real.min() < -tol:
            raise PreconditionError(f"state '{name}' is negatively represented in {frame.label}")
    worst, min_val, checked = None, np.inf, 0
    for tname, ch in sub.transformations.items():
        W = np.einsum("uij,sji->su", frame.operators, apply_many(ch, rhos)).real / frame.norm
        checked += len(names)
        s, u = np.unravel_index(int(np.argmin(W)), W.shape)
        if W[s, u] < min_val:
            min_val = float(W[s, u])
            worst = (tname, names[s], frame.points[u], min_val)
    if worst is None:
        return PositivityVerdict(True, 0.0, None, 0)
    return PositivityVerdict(bool(min_val >= -tol), min_val, worst, checked)
