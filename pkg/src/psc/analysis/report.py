"""Assemble a JSON-ready classicality report for a subtheory and frame."""

from __future__ import annotations

from ..frames import WignerFrame, negativity, wigner_of_channel
from ..linalg import DEFAULT_TOL
from ..subtheory import Subtheory
from .covariance import CovarianceCertificate
from .theorems import covariance_sweep, verify_theorem1, verify_theorem2, verify_theorem3

REPORT_KEYS = ("subtheory", "frame", "covariance", "tnc", "positivity", "theorems", "tolerances")


class ImplicationViolation(AssertionError):
    """A verdict combination contradicting covariant => TNC => PP."""


def _cert_entry(name: str, cert: CovarianceCertificate) -> dict:
    return {"transformation": name, **cert.to_json()}


def classicality_report(frame: WignerFrame, sub: Subtheory, tol: float = DEFAULT_TOL,
                        n_remix: int = 8, seed: int = 0) -> dict:
    certs = covariance_sweep(frame, sub, tol, n_remix, seed)
    t1 = verify_theorem1(frame, sub, tol, certificates=certs)
    t2 = verify_theorem2(sub, frame, tol, certificates=certs)
    t3 = verify_theorem3(sub, frame, tol)

    covariant = t1.covariant
    tnc = t1.wigner_model_noncontextual
    pp = t2.positivity_preserving
    if t1.in_scope and t2.positivity is not None:
        if covariant and not tnc:
            raise ImplicationViolation("covariant but the Wigner model is contextual")
        if tnc and not pp:
            raise ImplicationViolation("noncontextual Wigner model but positivity is not preserved")

    negativity_totals = {
        name: negativity(wigner_of_channel(frame, ch, tol))
        for name, ch in sub.transformations.items()
    }
    tnc_section = {
        "wigner_model_noncontextual": tnc,
        "obstructions": [o.to_json() for o in t1.obstructions[:16]],
    }
    if "eight_state" in t3.extra:
        tnc_section["eight_state"] = t3.extra["eight_state"]
    positivity = t2.positivity.to_json() if t2.positivity else {
        "preserving": None, "error": "some states are negatively represented"}
    positivity["negativity_totals"] = negativity_totals
    classical = covariant and tnc and pp
    report = {
        "subtheory": sub.label,
        "frame": frame.label,
        "covariance": [_cert_entry(k, c) for k, c in certs.items()],
        "tnc": tnc_section,
        "positivity": positivity,
        "theorems": {
            "covariance_vs_wigner_tnc": t1.to_json(),
            "covariance_implies_positivity": t2.to_json(),
            "tnc_implies_positivity": t3.to_json(),
            "classical": classical,
        },
        "tolerances": {"negativity": tol, "remix_spot_checks": n_remix, "seed": seed},
    }
    return report
