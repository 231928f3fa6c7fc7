"""Ontological models built from Wigner frames, and transformation noncontextuality."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..channels import KrausChannel, apply_many, channels_equal, unitary_kraus_decompositions
from ..frames import WignerFrame, wg_minus, wg_plus, wigner_of_channel
from ..linalg import DEFAULT_TOL
from ..subtheory import Subtheory

CLAMP = 1e-12


class PreconditionError(ValueError):
    """Raised when an analysis is asked a question its inputs cannot support."""


class UnsupportedTransformation(ValueError):
    pass


@dataclass(frozen=True)
class Obstruction:
    kind: str  # "state" | "transformation" | "effect"
    label: str
    min_value: float
    location: tuple

    def to_json(self) -> dict:
        return {"kind": self.kind, "label": self.label, "min_value": self.min_value,
                "location": [list(x) if isinstance(x, tuple) else x for x in self.location]}


class NegativityObstruction(Exception):
    """The frame assigns negative quasiprobabilities; no model can be read off."""

    def __init__(self, obstructions: list[Obstruction]):
        self.obstructions = obstructions
        worst = min(obstructions, key=lambda o: o.min_value)
        super().__init__(f"{len(obstructions)} negative representations; worst: "
                         f"{worst.kind} '{worst.label}' = {worst.min_value:.4g}")


@dataclass(eq=False)
class OntologicalModel:
    """Distributions ``mu``, column-stochastic ``Gamma[out, in]`` and responses ``xi``."""

    name: str
    ontic_labels: list
    state_dists: dict[str, np.ndarray]
    transition_mats: dict[str, np.ndarray]
    response_fns: dict[tuple[str, int], np.ndarray]
    channels: dict[str, KrausChannel] = field(default_factory=dict)

    @property
    def ontic_size(self) -> int:
        return len(self.ontic_labels)

    def probability(self, state: str, transformation: str, povm: str, outcome: int) -> float:
        """Law of total probability ``sum xi(v) Gamma(v, u) mu(u)``."""
        return float(self.response_fns[povm, outcome] @ self.transition_mats[transformation]
                     @ self.state_dists[state])

    def validate(self, tol: float = DEFAULT_TOL):
        for k, mu in self.state_dists.items():
            if mu.min() < -CLAMP or abs(mu.sum() - 1) > tol:
                raise ValueError(f"state distribution '{k}' is not a probability vector")
        for k, G in self.transition_mats.items():
            if G.min() < -CLAMP or np.max(np.abs(G.sum(axis=0) - 1)) > tol:
                raise ValueError(f"transition matrix '{k}' is not column stochastic")
        povms = {p for p, _ in self.response_fns}
        for p in povms:
            total = sum(v for (q, _), v in self.response_fns.items() if q == p)
            if np.max(np.abs(total - 1)) > tol:
                raise ValueError(f"responses of '{p}' do not sum to one")


def _clamp(v: np.ndarray, tol: float) -> np.ndarray:
    v = np.where((v < 0) & (v >= -tol), 0.0, v)
    return v


def _effects_items(sub: Subtheory):
    for name, povm in sub.effects.items():
        for k, E in enumerate(povm):
            yield (name, k), E


def build_wigner_model(frame: WignerFrame, sub: Subtheory, tol: float = DEFAULT_TOL) -> OntologicalModel:
    """Read an ontological model off the frame, or raise :class:`NegativityObstruction`."""
    if frame.dim != sub.dim:
        raise PreconditionError(f"frame dim {frame.dim} does not match subtheory dim {sub.dim}")
    if sub.frame_tag and sub.frame_tag.split(":")[0] != frame.label.split(":")[0]:
        raise PreconditionError(f"subtheory is defined for frame '{sub.frame_tag}', not '{frame.label}'")
    pts = frame.points
    obstructions = []
    states, trans, resp = {}, {}, {}
    for name, rho in sub.states.items():
        v = frame.expand(rho).real
        if v.min() < -tol:
            obstructions.append(Obstruction("state", name, float(v.min()), (pts[int(np.argmin(v))],)))
        states[name] = _clamp(v, tol)
    for name, ch in sub.transformations.items():
        G = wigner_of_channel(frame, ch, tol).values
        if G.min() < -tol:
            out, inp = np.unravel_index(int(np.argmin(G)), G.shape)
            obstructions.append(Obstruction("transformation", name, float(G.min()), (pts[out], pts[inp])))
        trans[name] = _clamp(G, tol)
    for key, E in _effects_items(sub):
        v = np.einsum("uij,ji->u", frame.operators, E).real
        if v.min() < -tol:
            obstructions.append(Obstruction("effect", f"{key[0]}[{key[1]}]", float(v.min()),
                                            (pts[int(np.argmin(v))],)))
        resp[key] = _clamp(v, tol)
    if obstructions:
        raise NegativityObstruction(obstructions)
    return OntologicalModel(f"wigner[{frame.label}]", list(pts), states, trans, resp,
                            dict(sub.transformations))


def _sector_permutation(U: np.ndarray, ops: np.ndarray, tol: float) -> np.ndarray | None:
    images = np.einsum("ij,ujk,lk->uil", U, ops, U.conj())
    perm = []
    for img in images:
        dist = np.max(np.abs(ops - img), axis=(1, 2))
        k = int(np.argmin(dist))
        if dist[k] > tol:
            return None
        perm.append(k)
    return np.array(perm)


def build_8state_model(sub: Subtheory, tol: float = DEFAULT_TOL) -> OntologicalModel:
    """Ontic space ``Lambda x {+, -}`` stitching the two non-negative qubit frames.

    States get ``mu(u, j) = W_j(u) / 2``, effects ``xi(u, j) = xi_j(u)``. A
    transformation must have Kraus operators ``c_k U_k`` with each ``U_k``
    permuting the eight phase-point operators; it is represented by
    ``sum_k c_k^2 P(U_k)``, so the representation depends on the decomposition.
    """
    if sub.dim != 2:
        raise PreconditionError("the 8-state model is defined for a single qubit")
    frames = (wg_plus(), wg_minus())
    ops = np.concatenate([f.operators for f in frames])
    labels = [(pt, s) for s in "+-" for pt in frames[0].points]
    states = {}
    for name, rho in sub.states.items():
        mu = 0.5 * np.concatenate([f.expand(rho).real for f in frames])
        if mu.min() < -tol:
            raise PreconditionError(f"state '{name}' is not a stabilizer state (negative in the 8-state model)")
        states[name] = _clamp(mu, tol)
    resp = {}
    for key, E in _effects_items(sub):
        xi = np.einsum("uij,ji->u", ops, E).real
        if xi.min() < -tol:
            raise PreconditionError(f"effect {key} is negative in the 8-state model")
        resp[key] = _clamp(xi, tol)
    trans = {}
    for name, ch in sub.transformations.items():
        dec = unitary_kraus_decompositions(ch, tol)
        if not dec.proportional_unitary:
            raise UnsupportedTransformation(f"'{name}': Kraus operator {dec.failing_index} is not "
                                            "proportional to a unitary")
        G = np.zeros((8, 8))
        for k, (c, U) in enumerate(dec.factors):
            perm = _sector_permutation(U, ops, tol)
            if perm is None:
                raise UnsupportedTransformation(f"'{name}': Kraus operator {k} is not a Clifford unitary")
            G[perm, np.arange(8)] += c * c
        trans[name] = G
    return OntologicalModel("8-state", labels, states, trans, resp, dict(sub.transformations))


@dataclass(frozen=True)
class TNCVerdict:
    noncontextual: bool
    max_discrepancy: float
    distinguishing_pair: tuple[str, str] | None
    discrepancies: dict[tuple[str, str], float]

    def to_json(self) -> dict:
        return {
            "noncontextual": self.noncontextual,
            "max_discrepancy": self.max_discrepancy,
            "distinguishing_pair": list(self.distinguishing_pair) if self.distinguishing_pair else None,
            "pairs": [{"pair": list(k), "discrepancy": v} for k, v in self.discrepancies.items()],
        }


def check_transformation_noncontextuality(model: OntologicalModel, equivalence_pairs,
                                          tol: float = DEFAULT_TOL) -> TNCVerdict:
    """Operationally equivalent procedures must get equal transition matrices."""
    disc = {}
    for a, b in equivalence_pairs:
        for lab in (a, b):
            if lab not in model.transition_mats:
                raise PreconditionError(f"transformation '{lab}' is not part of model {model.name}")
        ca, cb = model.channels.get(a), model.channels.get(b)
        if ca is None or cb is None or not channels_equal(ca, cb, tol):
            raise PreconditionError(f"'{a}' and '{b}' are not operationally equivalent")
        disc[a, b] = float(np.max(np.abs(model.transition_mats[a] - model.transition_mats[b])))
    worst = max(disc, key=disc.get) if disc else None
    worst_val = disc[worst] if worst else 0.0
    contextual = worst_val > tol
    return TNCVerdict(not contextual, worst_val, worst if contextual else None, disc)


def statistics_error(model: OntologicalModel, sub: Subtheory) -> float:
    """Largest gap between model statistics and the Born rule over all triples."""
    names = list(sub.states)
    rhos = np.array([sub.states[k] for k in names])
    M = np.array([model.state_dists[k] for k in names]).T
    keys, effs = zip(*_effects_items(sub)) if sub.effects else ((), ())
    if not keys:
        return 0.0
    Xi = np.array([model.response_fns[k] for k in keys])
    E = np.array(effs)
    worst = 0.0
    for tname, ch in sub.transformations.items():
        images = apply_many(ch, rhos)
        born = np.einsum("kij,sji->ks", E, images).real
        pred = Xi @ model.transition_mats[tname] @ M
        worst = max(worst, float(np.max(np.abs(born - pred))))
    return worst
