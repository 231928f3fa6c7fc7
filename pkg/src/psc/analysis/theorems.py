"""Executable checks of the covariance / noncontextuality / positivity chain.

The three notions are related by

    covariant  =>  Wigner model transformation noncontextual  =>  positivity preserving

and the first arrow reverses when the ontological model is the one given by
the Wigner representation. The functions here evaluate each notion on a
concrete subtheory and report whether the implications hold there, plus the
single-qubit counterexamples to the converses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .._parallel import parallel_map
from ..channels import depolarizing_eps1, depolarizing_eps2, unitary_channel, unitary_kraus_decompositions
from ..frames import WignerFrame
from ..linalg import DEFAULT_TOL
from ..subtheory import Subtheory
from .covariance import CovarianceCertificate, check_channel_covariance, sibling_frames
from .models import (
    NegativityObstruction,
    Obstruction,
    PreconditionError,
    build_8state_model,
    build_wigner_model,
    check_transformation_noncontextuality,
)
from .positivity import PositivityVerdict, check_positivity_preservation


def covariance_sweep(frame: WignerFrame, sub: Subtheory, tol: float = DEFAULT_TOL,
                     n_remix: int = 8, seed: int = 0) -> dict[str, CovarianceCertificate]:
    siblings = sibling_frames(frame)
    names = list(sub.transformations)
    certs = parallel_map(
        lambda k: check_channel_covariance(frame, sub.transformations[k], tol, n_remix, seed, siblings),
        names,
    )
    return dict(zip(names, certs))


def _kraus_augmented(sub: Subtheory, tol: float) -> Subtheory:
    """Add the unitary Kraus factors of every channel as transformations."""
    extra = {}
    for name, ch in sub.transformations.items():
        if len(ch) == 1:
            continue
        dec = unitary_kraus_decompositions(ch, tol)
        if dec.proportional_unitary:
            for k, (_, U) in enumerate(dec.factors):
                extra[f"{name}#{k}"] = unitary_channel(U, f"{name}#{k}")
    return sub.with_transformations(extra) if extra else sub


def _representation_scope(frame: WignerFrame, sub: Subtheory, tol: float) -> list[str]:
    """States and effects that are negative (outside the non-negative setting the check assumes)."""
    bad = []
    for name, rho in sub.states.items():
        if frame.expand(rho).real.min() < -tol:
            bad.append(f"state:{name}")
    for name, povm in sub.effects.items():
        for k, E in enumerate(povm):
            if (frame.operators @ E).trace(axis1=1, axis2=2).real.min() < -tol:
                bad.append(f"effect:{name}[{k}]")
    return bad


@dataclass
class EquivalenceReport:
    covariant: bool
    wigner_model_noncontextual: bool
    agree: bool
    in_scope: bool
    out_of_scope: list[str]
    certificates: dict[str, CovarianceCertificate]
    obstructions: list[Obstruction] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "covariant": self.covariant,
            "wigner_model_noncontextual": self.wigner_model_noncontextual,
            "agree": self.agree,
            "in_scope": self.in_scope,
            "out_of_scope": self.out_of_scope,
            "obstructions": [o.to_json() for o in self.obstructions[:16]],
        }


def verify_theorem1(frame: WignerFrame, sub: Subtheory, tol: float = DEFAULT_TOL,
                    n_remix: int = 8, seed: int = 0,
                    certificates: dict[str, CovarianceCertificate] | None = None) -> EquivalenceReport:
    """Covariance of every transformation versus a noncontextual Wigner model.

    The unitary Kraus factors of each channel count as transformations of the
    subtheory, so the Wigner model must also represent them non-negatively.
    Only the conditional converse (model given by the frame) is tested.
    """
    certs = certificates or covariance_sweep(frame, sub, tol, n_remix, seed)
    covariant = all(c.covariant for c in certs.values())
    out_of_scope = _representation_scope(frame, sub, tol)
    for name, ch in sub.transformations.items():
        if not unitary_kraus_decompositions(ch, tol).proportional_unitary:
            out_of_scope.append(f"transformation:{name}")
    obstructions = []
    try:
        build_wigner_model(frame, _kraus_augmented(sub, tol), tol)
        tnc = True
    except NegativityObstruction as exc:
        tnc = False
        obstructions = exc.obstructions
    return EquivalenceReport(covariant, tnc, covariant == tnc, not out_of_scope, out_of_scope,
                          certs, obstructions)


@dataclass
class ImplicationReport:
    premise: bool
    positivity_preserving: bool
    implication_holds: bool
    converse_counterexample: bool
    positivity: PositivityVerdict | None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "premise": self.premise,
            "positivity_preserving": self.positivity_preserving,
            "implication_holds": self.implication_holds,
            "converse_counterexample": self.converse_counterexample,
            **self.extra,
        }


def _positivity(frame, sub, tol):
    try:
        return check_positivity_preservation(frame, sub, tol)
    except PreconditionError:
        return None


def verify_theorem2(sub: Subtheory, frame: WignerFrame, tol: float = DEFAULT_TOL,
                    certificates: dict[str, CovarianceCertificate] | None = None,
                    n_remix: int = 8, seed: int = 0) -> ImplicationReport:
    """Covariance implies positivity preservation; report a converse counterexample if present."""
    certs = certificates or covariance_sweep(frame, sub, tol, n_remix, seed)
    covariant = all(c.covariant for c in certs.values())
    pp = _positivity(frame, sub, tol)
    preserving = bool(pp and pp.preserving)
    return ImplicationReport(covariant, preserving, (not covariant) or preserving,
                             preserving and not covariant, pp,
                             {"premise_name": "covariant"})


def eight_state_contextuality(sub: Subtheory, tol: float = DEFAULT_TOL):
    """TNC verdict of the 8-state model on the two depolarizing decompositions."""
    extended = sub.with_transformations({"depol-eps1": depolarizing_eps1(),
                                         "depol-eps2": depolarizing_eps2()})
    model = build_8state_model(extended, tol)
    return check_transformation_noncontextuality(model, [("depol-eps1", "depol-eps2")], tol)


def verify_theorem3(sub: Subtheory, frame: WignerFrame, tol: float = DEFAULT_TOL) -> ImplicationReport:
    """A noncontextual model implies positivity preservation.

    The premise is evaluated on the Wigner model of ``frame``. For a single
    qubit the 8-state model is also tested on the depolarizing pair, which
    gives the counterexample to the converse.
    """
    try:
        build_wigner_model(frame, _kraus_augmented(sub, tol), tol)
        tnc = True
    except NegativityObstruction:
        tnc = False
    pp = _positivity(frame, sub, tol)
    preserving = bool(pp and pp.preserving)
    extra = {"premise_name": "wigner_model_noncontextual"}
    counterexample = preserving and not tnc
    if sub.dim == 2:
        try:
            verdict = eight_state_contextuality(sub, tol)
            extra["eight_state"] = verdict.to_json()
            counterexample = counterexample or (preserving and not verdict.noncontextual)
        except (PreconditionError, ValueError) as exc:
            extra["eight_state"] = {"error": str(exc)}
    return ImplicationReport(tnc, preserving, (not tnc) or preserving, counterexample, pp, extra)
