from __future__ import annotations

import numpy as np
import pytest
from scipy.stats import unitary_group

from psc import gates
from psc.analysis import (
    REPORT_KEYS,
    NegativityObstruction,
    PreconditionError,
    UnsupportedTransformation,
    build_8state_model,
    build_wigner_model,
    check_channel_covariance,
    check_positivity_preservation,
    check_transformation_noncontextuality,
    check_unitary_covariance,
    classicality_report,
    fit_affine,
    identify_operator,
    is_permutation_matrix,
    search_affine_covariance,
    statistics_error,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from psc.channels import (
    KrausChannel,
    depolarizing_eps1,
    depolarizing_eps2,
    identity_channel,
    pauli_mixture,
    remix_kraus,
    unitary_channel,
)
from psc.frames import gross, wg_minus, wg_plus, wigner_of_channel
from psc.subtheory import (
    build_pauli_qubit,
    build_qutrit_stabilizer,
    build_single_qubit_stabilizer,
    labeled_clifford,
    with_depolarizing,
)

from oracles import H, I2, X, Y, Z, eight_point_operators, eight_state_transition, sector


@pytest.fixture(scope="module")
def qubit():
    return build_single_qubit_stabilizer()


@pytest.fixture(scope="module")
def qutrit():
    return build_qutrit_stabilizer()


def test_identity_is_covariant():
    cert = check_unitary_covariance(wg_plus(), np.eye(2))
    assert cert.covariant
    assert cert.affine.S == ((1, 0), (0, 1)) and cert.affine.a == (0, 0)


def test_hadamard_leaves_the_frame():
    cert = check_unitary_covariance(wg_plus(), gates.H, name="H")
    assert not cert.covariant and cert.witness == (0, 0)
    assert "A[wg-minus](0, 1)" in cert.reason
    img = gates.H @ wg_plus()[(0, 0)] @ gates.H
    assert identify_operator(img, [wg_minus()]) == ("wg-minus", (0, 1))


def test_fourier_is_covariant_under_gross():
    cert = check_unitary_covariance(gross(), gates.fourier(3))
    assert cert.covariant
    assert cert.affine.S == ((0, 2), (1, 0)) and cert.affine.a == (0, 0)
    assert search_affine_covariance(gross(), gates.fourier(3)) == [cert.affine]


def test_fit_affine_rejects_non_affine_permutation():
    assert fit_affine(gross(), np.array([1, 0, 2, 3, 4, 5, 6, 7, 8])) is None


def test_non_clifford_not_covariant():
    cert = check_unitary_covariance(wg_plus(), gates.T)
    assert not cert.covariant and "no phase-point operator" in cert.reason


def test_channel_covariance_examples():
    f = wg_plus()
    c1 = check_channel_covariance(f, depolarizing_eps1())
    assert c1.covariant and len(c1.per_kraus) == 4
    translations = {k[2].a for k in c1.per_kraus}
    assert translations == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert all(k[2].S == ((1, 0), (0, 1)) for k in c1.per_kraus)
    c2 = check_channel_covariance(f, depolarizing_eps2())
    assert not c2.covariant and len(c2.per_kraus) == 4
    assert all(s == "non-covariant" for _, s, _ in c2.per_kraus)
    assert c2.reason.startswith("Kraus operator 0")
    assert check_channel_covariance(f, identity_channel(2)).covariant


def test_every_eps2_kraus_factor_fails():
    for R in (I2, X, Y, Z):
        assert not check_unitary_covariance(wg_plus(), H @ R).covariant


def test_remix_spot_checks_are_recorded():
    cert = check_channel_covariance(wg_plus(), depolarizing_eps1(), n_remix=3, seed=5)
    spot = cert.details["remix_spot_checks"]
    assert len(spot) == 3 and all(s["matrix_deviation"] < 1e-12 for s in spot)


def test_non_unitary_decomposition_skipped():
    g = 0.3
    damping = KrausChannel([np.diag([1, np.sqrt(1 - g)]), np.array([[0, np.sqrt(g)], [0, 0]])])
    cert = check_channel_covariance(wg_plus(), damping, n_remix=0)
    assert not cert.covariant and "not proportional to a unitary" in cert.reason
    assert "channel_matrix_min" in cert.details


def test_wigner_model_qutrit(qutrit):
    model = build_wigner_model(gross(), qutrit)
    model.validate()
    assert model.ontic_size == 9
    assert all(is_permutation_matrix(G) for G in model.transition_mats.values())
    assert statistics_error(model, qutrit) < 1e-9


def test_wigner_model_qubit_obstructed(qubit):
    with pytest.raises(NegativityObstruction) as info:
        build_wigner_model(wg_plus(), qubit)
    kinds = {(o.kind, o.label) for o in info.value.obstructions}
    assert ("transformation", "H") in kinds
    assert all(o.kind == "transformation" for o in info.value.obstructions)


def test_wigner_model_pauli_only():
    sub = build_pauli_qubit()
    model = build_wigner_model(wg_plus(), sub)
    assert statistics_error(model, sub) < 1e-9


def test_wigner_model_frame_tag_checked(qutrit):
    from psc.frames import frame_from_label
    from psc.frames import GammaFunction, WignerFrame
    from psc.phase_space import PhaseSpace
    other = WignerFrame(GammaFunction.xp(PhaseSpace(3)), "custom")
    with pytest.raises(PreconditionError):
        build_wigner_model(other, qutrit)
    with pytest.raises(PreconditionError):
        build_wigner_model(frame_from_label("wg-plus"), qutrit)


def test_eight_state_model(qubit):
    sub = with_depolarizing(qubit)
    model = build_8state_model(sub)
    model.validate()
    assert model.ontic_size == 8
    assert statistics_error(model, sub) < 1e-9
    # Oracle: the transitions on sign vectors, compared sector by sector.
    signs = eight_point_operators()
    order = []
    for (pt, s) in model.ontic_labels:
        f = wg_plus() if s == "+" else wg_minus()
        A = f[pt]
        order.append(tuple(int(round(np.trace(A @ P).real)) for P in (X, Y, Z)))
    idx = [signs.index(o) for o in order]
    for name, ch in (("depol-eps1", depolarizing_eps1()), ("depol-eps2", depolarizing_eps2())):
        G_or, _ = eight_state_transition([K / 0.5 for K in ch.kraus_ops], [0.25] * 4)
        G = model.transition_mats[name]
        assert np.allclose(G, G_or[np.ix_(idx, idx)])
    assert all(sector(order[k]) == (1 if k < 4 else -1) for k in range(8))


def test_eight_state_rejects_non_clifford(qubit):
    with pytest.raises(UnsupportedTransformation):
        build_8state_model(qubit.with_transformations({"T": unitary_channel(gates.T, "T")}))


def test_tnc_verdicts(qubit, qutrit):
    model = build_8state_model(with_depolarizing(qubit))
    v = check_transformation_noncontextuality(model, [("depol-eps1", "depol-eps2")])
    assert not v.noncontextual and v.max_discrepancy == pytest.approx(0.25, abs=1e-9)
    assert v.distinguishing_pair == ("depol-eps1", "depol-eps2")
    assert check_transformation_noncontextuality(model, [("id", "id")]).noncontextual
    with pytest.raises(PreconditionError):
        check_transformation_noncontextuality(model, [("H", "P")])

    eps = pauli_mixture([1 / 9] * 9, d=3, label="dep3")
    V = unitary_group.rvs(9, random_state=3)
    extended = qutrit.with_transformations({"dep3": eps, "dep3~": remix_kraus(eps, V, "dep3~")})
    wm = build_wigner_model(gross(), extended)
    assert check_transformation_noncontextuality(wm, [("dep3", "dep3~")]).noncontextual


def test_positivity(qubit, qutrit):
    v = check_positivity_preservation(wg_plus(), qubit)
    assert v.preserving and v.checked == 144 and v.min_value >= -1e-9
    assert check_positivity_preservation(gross(), qutrit).preserving
    bad = check_positivity_preservation(wg_plus(), qubit.with_transformations(
        {"T": unitary_channel(gates.T, "T")}))
    assert not bad.preserving
    assert bad.worst[0] == "T" and bad.worst[1] in ("+X", "-X", "+Y", "-Y")


def test_positivity_precondition(qubit):
    from psc.linalg import ket, projector
    from psc.subtheory import Subtheory
    magic = Subtheory("m", 2, {"h": projector(ket(np.cos(np.pi / 8), np.sin(np.pi / 8)))},
                      {}, {}, None, 2, 1)
    with pytest.raises(PreconditionError):
        check_positivity_preservation(wg_plus(), magic)


def test_theorem_verifiers(qubit, qutrit):
    t1 = verify_theorem1(gross(), qutrit, n_remix=0)
    assert t1.covariant and t1.wigner_model_noncontextual and t1.agree and t1.in_scope
    t1q = verify_theorem1(wg_plus(), qubit, n_remix=0)
    assert not t1q.covariant and not t1q.wigner_model_noncontextual and t1q.agree
    t1p = verify_theorem1(wg_plus(), build_pauli_qubit(), n_remix=0)
    assert t1p.covariant and t1p.wigner_model_noncontextual

    t2 = verify_theorem2(qubit, wg_plus(), n_remix=0)
    assert t2.positivity_preserving and not t2.premise and t2.converse_counterexample
    t3 = verify_theorem3(qubit, wg_plus())
    assert t3.positivity_preserving and t3.converse_counterexample
    assert t3.extra["eight_state"]["max_discrepancy"] == pytest.approx(0.25)

    for rep in (verify_theorem2(qutrit, gross(), n_remix=0), verify_theorem3(qutrit, gross())):
        assert rep.premise and rep.positivity_preserving and rep.implication_holds
        assert not rep.converse_counterexample


def test_theorem1_counts_kraus_factors(qubit):
    # eps2 has a non-negative (uniform) Wigner matrix, but its Kraus factors
    # H R are transformations of the theory and are negatively represented.
    sub = build_pauli_qubit().with_transformations({"depol-eps2": depolarizing_eps2()})
    assert wigner_of_channel(wg_plus(), depolarizing_eps2()).min > 0
    t1 = verify_theorem1(wg_plus(), sub, n_remix=0)
    assert not t1.covariant and not t1.wigner_model_noncontextual and t1.agree


def test_report_shape(qutrit):
    rep = classicality_report(gross(), qutrit, n_remix=1)
    assert tuple(rep) == REPORT_KEYS
    assert rep["theorems"]["classical"]
    assert len(rep["covariance"]) == 216
    assert max(rep["positivity"]["negativity_totals"].values()) < 1e-9


def test_clifford_labels_are_words(qubit):
    names = [n for n, _ in labeled_clifford(2, 1)]
    assert names[0] == "id" and "H" in names and "P" in names
    assert set(qubit.transformations) == set(names)
