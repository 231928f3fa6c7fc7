from __future__ import annotations

import json

import numpy as np
import pytest

from psc import gates
from psc.channels import ChannelError, KrausChannel, depolarizing_eps1, depolarizing_eps2, unitary_channel
from psc.frames import (
    FRAME_LABELS,
    FrameError,
    GammaFunction,
    WignerFrame,
    frame_from_label,
    gross,
    negativity,
    pauli_X,
    pauli_Z,
    qubit_gamma,
    reconstruct_state,
    weyl,
    wg_minus,
    wg_multi,
    wg_plus,
    wigner_of_channel,
    wigner_of_effect,
    wigner_of_state,
    wootters_gibbons_family,
)
from psc.linalg import ket, projector
from psc.phase_space import PhaseSpace

from oracles import X, Y, Z, qubit_point, qutrit_parity_point, random_density

# Pauli sign vectors (sx, sy, sz) of the wg-plus points: X, Y, Z conjugation
# translate by (0,1), (1,0), (1,1) and flip the two anticommuting signs.
PLUS_SIGNS = {(0, 0): (1, 1, 1), (0, 1): (1, -1, -1), (1, 0): (-1, 1, -1), (1, 1): (-1, -1, 1)}


def test_pauli_shift_clock():
    assert np.allclose(pauli_X(3, 0), np.eye(3))
    assert np.allclose(pauli_X(2, 1), X) and np.allclose(pauli_Z(2, 1), Z)
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(pauli_Z(3, 1), np.diag([1, w, w * w]))
    assert np.allclose(pauli_X(3, 1) @ ket(1, 0, 0), ket(0, 1, 0))


@pytest.mark.parametrize("label", FRAME_LABELS)
def test_weyl_origin_is_identity(label):
    f = frame_from_label(label)
    assert np.allclose(weyl(f, f.points[0]), np.eye(f.dim))


def test_wg_plus_matches_sign_table():
    f = wg_plus()
    for pt, s in PLUS_SIGNS.items():
        assert np.allclose(f[pt], qubit_point(*s), atol=1e-12)


def test_wg_minus_is_z_flipped_plus():
    g = wg_minus()
    assert np.allclose(g[(0, 0)], qubit_point(1, 1, -1), atol=1e-12)
    # Every minus operator has sign product -1, every plus operator +1.
    for pt in g.points:
        c = [np.trace(g[pt] @ P).real for P in (X, Y, Z)]
        assert np.isclose(np.prod(c), -1)


def test_pauli_conjugation_translates():
    f = wg_plus()
    for P, t in ((X, (0, 1)), (Y, (1, 0)), (Z, (1, 1))):
        for x, p in f.points:
            img = P @ f[(x, p)] @ P.conj().T
            assert np.allclose(img, f[((x + t[0]) % 2, (p + t[1]) % 2)])


def test_gross_matches_reflected_parity():
    f = gross()
    for pt in f.points:
        assert np.allclose(f[pt], qutrit_parity_point(*pt), atol=1e-12)


def test_wootters_gibbons_family():
    fam = wootters_gibbons_family()
    assert len(fam) == 8
    origins = {tuple(np.round([np.trace(f[(0, 0)] @ P).real for P in (X, Y, Z)]).astype(int)) for f in fam}
    assert origins == {(a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1)}


def test_non_hermitian_gamma_rejected():
    with pytest.raises(FrameError):
        WignerFrame(qubit_gamma(0, 0, 0))


def test_gamma_origin_must_vanish():
    sp = PhaseSpace(3)
    with pytest.raises(FrameError):
        WignerFrame(GammaFunction.from_function(sp, lambda pt: 1))


def test_custom_gamma_json_roundtrip(tmp_path):
    g = GammaFunction.xp(PhaseSpace(3))
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_json()))
    f = frame_from_label(f"custom:{path}")
    assert np.allclose(f.operators, gross().operators)


def test_bad_gamma_file_names_path(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"d": 3, "n": 1, "q": 3, "table": [[[0, 0], 0]]}))
    with pytest.raises(FrameError, match="bad.json"):
        frame_from_label(f"custom:{path}")


def test_unknown_frame_label():
    with pytest.raises(FrameError):
        frame_from_label("wg-sideways")


@pytest.mark.parametrize("label", FRAME_LABELS)
def test_mixed_state_is_uniform(label):
    f = frame_from_label(label)
    W = wigner_of_state(f, np.eye(f.dim) / f.dim)
    assert np.allclose(W.values, 1 / f.space.size)


def test_qubit_zero_state():
    f = wg_plus()
    W = wigner_of_state(f, projector(ket(1, 0)))
    for pt, s in PLUS_SIGNS.items():
        assert np.isclose(W[pt], (1 + s[2]) / 4)
    assert W.as_dict() == pytest.approx({(0, 0): 0.5, (0, 1): 0.0, (1, 0): 0.0, (1, 1): 0.5})


def test_qutrit_zero_state():
    W = wigner_of_state(gross(), projector(ket(1, 0, 0)))
    for (x, p), v in W.as_dict().items():
        assert np.isclose(v, 1 / 3 if x == 0 else 0.0)


def test_trace_checked():
    with pytest.raises(FrameError):
        wigner_of_state(wg_plus(), np.eye(2))


def test_effects():
    f = wg_plus()
    assert np.allclose(wigner_of_effect(f, np.eye(2)).values, 1)
    xi0 = wigner_of_effect(f, projector(ket(1, 0)))
    assert xi0.as_dict() == pytest.approx({(0, 0): 1, (0, 1): 0, (1, 0): 0, (1, 1): 1})
    xi1 = wigner_of_effect(f, projector(ket(0, 1)))
    assert np.allclose(xi0.values + xi1.values, 1)


def test_channel_matrices():
    f = wg_plus()
    ident = wigner_of_channel(f, KrausChannel([np.eye(2)]))
    assert np.allclose(ident.values, np.eye(4))
    WX = wigner_of_channel(f, unitary_channel(X))
    for x, p in f.points:
        assert np.isclose(WX[(x, (p + 1) % 2), (x, p)], 1)
    assert np.allclose(wigner_of_channel(f, depolarizing_eps1()).values, 0.25)
    assert np.allclose(wigner_of_channel(gross(), KrausChannel(
        [np.sqrt(1 / 9) * pauli_X(3, x) @ pauli_Z(3, p) for x in range(3) for p in range(3)])).values, 1 / 9)


def test_channel_matrix_columns_are_normalized(rng):
    f = gross()
    U = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))[0]
    W = wigner_of_channel(f, unitary_channel(U))
    assert np.allclose(W.values.sum(axis=0), 1)


def test_non_cptp_channel_rejected():
    bad = KrausChannel([2 * np.eye(2)], validate=False)
    with pytest.raises(ChannelError):
        wigner_of_channel(wg_plus(), bad)


def test_channel_composition():
    f = wg_plus()
    a = wigner_of_channel(f, unitary_channel(X))
    b = wigner_of_channel(f, unitary_channel(Z))
    assert np.allclose((a @ b).values, wigner_of_channel(f, unitary_channel(X @ Z)).values)


def test_reconstruct(rng):
    f = wg_plus()
    assert np.allclose(reconstruct_state(f, np.full(4, 0.25)), np.eye(2) / 2)
    rho = projector(ket(1, 0))
    assert np.allclose(reconstruct_state(f, wigner_of_state(f, rho)), rho, atol=1e-9)
    delta = np.zeros(4)
    delta[0] = 1
    assert np.allclose(reconstruct_state(f, delta), f[(0, 0)])
    g = gross(3, 2)
    rho = random_density(9, rng)
    assert np.allclose(reconstruct_state(g, wigner_of_state(g, rho)), rho, atol=1e-9)


def test_negativity():
    f = wg_plus()
    for s in ("zero", "plus"):
        rho = projector(ket(1, 0) if s == "zero" else ket(1, 1))
        assert negativity(wigner_of_state(f, rho)) == 0
    h = projector(ket(np.cos(np.pi / 8), np.sin(np.pi / 8)))
    assert negativity(wigner_of_state(f, h)) > 0.1
    W2 = wigner_of_channel(f, depolarizing_eps2())
    assert W2.min > 0 and negativity(W2) == 0
    assert negativity(wigner_of_channel(f, unitary_channel(gates.H))) > 0


def test_multi_frame_labels():
    assert wg_multi().label == "wg-multi" and wg_multi(1).label == "wg-multi:1"
    assert gross(3, 2).label == "gross:2"
    with pytest.raises(FrameError):
        gross(2)


@pytest.mark.parametrize("label", FRAME_LABELS)
def test_inner_product_formula(label, rng):
    f = frame_from_label(label)
    a, b = (random_density(f.dim, rng) for _ in range(2))
    Wa, Wb = f.expand(a).real, f.expand(b).real
    assert np.isclose(f.dim * np.sum(Wa * Wb), np.trace(a @ b).real, atol=1e-9)


def test_marginal_depends_on_coordinates():
    # With Pauli translations X:(0,1), Y:(1,0), Z:(1,1) the p-lines of wg-plus
    # carry the X-basis marginal, not the Z-basis one.
    f = wg_plus()
    plus_x = projector(ket(1, 1))
    W = wigner_of_state(f, plus_x)
    assert np.isclose(W[(0, 0)] + W[(0, 1)], 1.0)


def test_weyl_phases():
    # gamma = x p mod 4 gives i Z X, which is -Y.
    assert np.allclose(weyl(wg_multi(1), (1, 1)), 1j * Z @ X)
    assert np.allclose(weyl(wg_multi(1), (1, 1)), -Y)
    # chi(-2^{-1} * 1) with 2^{-1} = 2 mod 3 is omega.
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(weyl(gross(), (1, 1)), w * pauli_Z(3, 1) @ pauli_X(3, 1))
