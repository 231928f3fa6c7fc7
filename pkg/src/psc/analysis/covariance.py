"""Covariance of unitaries and channels under a Wigner frame."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group

from ..channels import KrausChannel, remix_kraus, unitary_kraus_decompositions
from ..frames import WignerFrame, wg_minus, wg_plus, wigner_of_channel, wootters_gibbons_family
from ..linalg import DEFAULT_TOL, as_matrix, is_unitary
from ..phase_space import AffineSymplectic, enumerate_affine, is_symplectic


@dataclass(frozen=True)
class CovarianceCertificate:
    status: str  # "covariant" | "non-covariant"
    affine: AffineSymplectic | None = None
    witness: tuple[int, ...] | None = None
    reason: str = ""
    per_kraus: tuple[tuple[int, str, AffineSymplectic | None], ...] = ()
    method: str = "unitary-fit"
    details: dict = field(default_factory=dict)

    @property
    def covariant(self) -> bool:
        return self.status == "covariant"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "method": self.method,
            "affine": self.affine.to_json() if self.affine else None,
            "witness": list(self.witness) if self.witness is not None else None,
            "reason": self.reason,
            "per_kraus": [
                {"index": k, "status": s, "affine": a.to_json() if a else None}
                for k, s, a in self.per_kraus
            ],
            "details": self.details,
        }


def conjugated_coefficients(frame: WignerFrame, U) -> np.ndarray:
    """``C[v, u]``: coefficient of ``A(v)`` in ``U A(u) U^dagger``."""
    U = as_matrix(U)
    images = np.einsum("ij,ujk,lk->uil", U, frame.operators, U.conj())
    return frame.expand_many(images)


def identify_operator(op, frames, tol: float = DEFAULT_TOL) -> tuple[str, tuple[int, ...]] | None:
    """Find ``(frame label, point)`` whose phase-point operator equals ``op``."""
    op = as_matrix(op)
    for f in frames:
        if f.dim != op.shape[0]:
            continue
        dist = np.max(np.abs(f.operators - op), axis=(1, 2))
        k = int(np.argmin(dist))
        if dist[k] <= tol:
            return f.label, f.points[k]
    return None


def sibling_frames(frame: WignerFrame) -> list[WignerFrame]:
    """Other built-in frames on the same space, used to name stray images."""
    if (frame.d, frame.n) != (2, 1):
        return []
    return [f for f in [wg_plus(), wg_minus(), *wootters_gibbons_family()] if f.label != frame.label]


def fit_affine(frame: WignerFrame, perm: np.ndarray) -> AffineSymplectic | None:
    """Affine symplectic map realizing the point permutation, if one exists."""
    space = frame.space
    pts = np.array(space.points, dtype=np.int64)
    a = pts[perm[0]]
    cols = []
    for k in range(2 * space.n):
        e = np.zeros(2 * space.n, dtype=np.int64)
        e[k] = 1
        cols.append((pts[perm[space.index(e)]] - a) % space.d)
    S = np.array(cols).T
    if not is_symplectic(S, space.d):
        return None
    if not np.array_equal((pts @ S.T + a) % space.d, pts[perm]):
        return None
    return AffineSymplectic.build(S, a, space.d)


def check_unitary_covariance(frame: WignerFrame, U, tol: float = DEFAULT_TOL,
                             siblings=None, name: str = "U") -> CovarianceCertificate:
    """Decide whether ``U A(u) U^dagger = A(S u + a)`` for all points.

    Each conjugated operator is expanded in the frame; covariance requires every
    expansion to be a 0/1 point mass. The map ``(S, a)`` is then read off from
    the images of the origin and of the unit vectors and verified everywhere.
    ``siblings`` are other frames used to name an image that leaves the frame
    (defaults to the other built-in frames on the same space).
    """
    U = as_matrix(U)
    if U.shape != (frame.dim, frame.dim) or not is_unitary(U, tol):
        raise ValueError(f"expected a unitary of dimension {frame.dim}")
    C = conjugated_coefficients(frame, U)
    point_mass = (np.abs(C.imag).max(axis=0) <= tol) & (
        np.abs(C.real - np.round(C.real)).max(axis=0) <= tol
    ) & (np.abs(np.round(C.real)).sum(axis=0) == 1) & (np.round(C.real).max(axis=0) == 1)
    if not point_mass.all():
        u = int(np.argmin(point_mass))
        pt = frame.points[u]
        image = U @ frame.operators[u] @ U.conj().T
        if siblings is None:
            siblings = sibling_frames(frame)
        found = identify_operator(image, siblings, tol)
        where = f"A[{found[0]}]{found[1]}" if found else "no phase-point operator"
        return CovarianceCertificate(
            "non-covariant", witness=pt,
            reason=f"{name} A{pt} {name}^dag matches {where}, outside frame {frame.label}",
            details={"image": {"frame": found[0], "point": list(found[1])} if found else None},
        )
    perm = np.argmax(C.real, axis=0)
    affine = fit_affine(frame, perm)
    if affine is None:
        return CovarianceCertificate(
            "non-covariant", witness=frame.points[0],
            reason="phase-point operators are permuted, but not by an affine symplectic map",
        )
    return CovarianceCertificate("covariant", affine=affine)


def search_affine_covariance(frame: WignerFrame, U, tol: float = DEFAULT_TOL) -> list[AffineSymplectic]:
    """Brute force over every affine symplectic map; returns all that match."""
    U = as_matrix(U)
    images = np.einsum("ij,ujk,lk->uil", U, frame.operators, U.conj())
    out = []
    for m in enumerate_affine(frame.space):
        target = frame.operators[m.permutation(frame.space)]
        if np.max(np.abs(images - target)) <= tol:
            out.append(m)
    return out


def is_permutation_matrix(M: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    R = np.round(M)
    return bool(
        np.max(np.abs(M - R)) <= tol
        and np.all((R == 0) | (R == 1))
        and np.all(R.sum(axis=0) == 1)
        and np.all(R.sum(axis=1) == 1)
    )


def check_channel_covariance(frame: WignerFrame, channel: KrausChannel, tol: float = DEFAULT_TOL,
                             n_remix: int = 8, seed: int = 0, siblings=None) -> CovarianceCertificate:
    """Covariance of a CPTP map with a unitary Kraus decomposition.

    The verdict combines the per-operator covariance of the supplied
    decomposition with the channel's Wigner matrix being non-negative; both
    are required. ``n_remix`` random unitary remixings are spot-checked: the
    Wigner matrix must not depend on the decomposition, and any remixed
    decomposition that is again proportional-unitary is tested per operator.
    Spot checks are reported in ``details`` and do not change the verdict.
    """
    W = wigner_of_channel(frame, channel, tol)
    nonneg = bool(W.min >= -tol)
    decomposition = unitary_kraus_decompositions(channel, tol)
    details = {"channel_matrix_min": float(W.min), "channel_matrix_nonnegative": nonneg}

    rng = np.random.default_rng(seed)
    spot = []
    for _ in range(n_remix):
        k = len(channel)
        V = unitary_group.rvs(k, random_state=rng) if k > 1 else np.exp(2j * np.pi * rng.random()) * np.eye(1)
        remixed = remix_kraus(channel, V)
        dev = float(np.max(np.abs(wigner_of_channel(frame, remixed, tol).values - W.values)))
        rdec = unitary_kraus_decompositions(remixed, tol)
        cov = None
        if rdec.proportional_unitary:
            cov = all(check_unitary_covariance(frame, U, tol, siblings=[]).covariant
                      for _, U in rdec.factors)
        spot.append({"matrix_deviation": dev, "unitary": rdec.proportional_unitary, "covariant": cov})
    details["remix_spot_checks"] = spot

    if not decomposition.proportional_unitary:
        return CovarianceCertificate(
            "non-covariant", method="certificate",
            reason=f"Kraus operator {decomposition.failing_index} is not proportional to a unitary; "
                   "decomposition check skipped",
            details=details,
        )
    per_kraus, first_bad = [], None
    for k, (c, U) in enumerate(decomposition.factors):
        name = channel.label if len(channel) == 1 else f"{channel.label}#{k}"
        cert = check_unitary_covariance(frame, U, tol, siblings, name=name)
        per_kraus.append((k, cert.status, cert.affine))
        if not cert.covariant and first_bad is None:
            first_bad = (k, cert)
    if first_bad is not None:
        k, cert = first_bad
        return CovarianceCertificate(
            "non-covariant", witness=cert.witness, per_kraus=tuple(per_kraus), method="certificate",
            reason=cert.reason if len(channel) == 1 else f"Kraus operator {k}: {cert.reason}",
            details={**details, **cert.details},
        )
    if not nonneg:
        u = int(np.argmin(W.values.min(axis=0)))
        return CovarianceCertificate(
            "non-covariant", witness=frame.points[u], per_kraus=tuple(per_kraus), method="certificate",
            reason="channel Wigner matrix has negative entries", details=details,
        )
    affine = per_kraus[0][2] if len(per_kraus) == 1 else None
    return CovarianceCertificate("covariant", affine=affine, per_kraus=tuple(per_kraus),
                                 method="certificate", details=details)
