"""Acceptance criteria AC1-AC9, each with its runtime budget.

A PASS/FAIL line per criterion is printed in the terminal summary (see conftest).
"""

from __future__ import annotations

import time
from itertools import product

import numpy as np
import pytest

from psc import gates
from psc.analysis import (
    build_8state_model,
    build_wigner_model,
    check_channel_covariance,
    check_positivity_preservation,
    check_transformation_noncontextuality,
    check_unitary_covariance,
    is_permutation_matrix,
    search_affine_covariance,
    statistics_error,
)
from psc.channels import (
    choi,
    depolarizing_eps1,
    depolarizing_eps2,
    pauli_mixture,
    unitary_channel,
)
from psc.frames import (
    gross,
    wg_minus,
    wg_multi,
    wg_plus,
    wigner_of_channel,
    wigner_of_effect,
    wigner_of_state,
)
from psc.phase_space import PhaseSpace, enumerate_symplectic, is_symplectic
from psc.subtheory import (
    build_qutrit_stabilizer,
    build_single_qubit_stabilizer,
    enumerate_stabilizer_states,
    generate_clifford,
    pauli_povms,
    with_depolarizing,
)

from oracles import I2, X, Y, Z, born, brute_symplectic_count, random_density


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.3f} s, budget {self.seconds} s"


def test_ac1_operator_identities():
    with Budget(0.1):
        plus, minus = wg_plus(), wg_minus()
        assert np.linalg.norm(plus[(0, 0)] - 0.5 * (I2 + X + Y + Z)) < 1e-12
        assert np.linalg.norm(minus[(0, 0)] - 0.5 * (I2 + X + Y - Z)) < 1e-12
        H = gates.H
        assert np.linalg.norm(H @ plus[(0, 0)] @ H.conj().T - minus[(0, 1)]) < 1e-12


def test_ac2_covariance_fails_positivity_holds():
    with Budget(1.0):
        f = wg_plus()
        cert = check_channel_covariance(f, unitary_channel(gates.H, "H"))
        assert not cert.covariant and cert.witness in f.points
        sub = build_single_qubit_stabilizer()
        assert (len(sub.states), len(sub.transformations)) == (6, 24)
        v = check_positivity_preservation(f, sub)
        assert v.preserving and v.checked == 144 and v.min_value >= -1e-9


def test_ac3_eight_state_contextuality():
    base = build_single_qubit_stabilizer()
    with Budget(0.1):
        e1, e2 = depolarizing_eps1(), depolarizing_eps2()
        assert choi(e1).distance(choi(e2)) < 1e-12
        model = build_8state_model(with_depolarizing(base.restrict(["id"])))
        G1, G2 = model.transition_mats["depol-eps1"], model.transition_mats["depol-eps2"]
        verdict = check_transformation_noncontextuality(model, [("depol-eps1", "depol-eps2")])
    assert not verdict.noncontextual
    assert abs(verdict.max_discrepancy - 0.25) <= 1e-9
    assert abs(np.max(np.abs(G1 - G2)) - 0.25) <= 1e-9
    # Sector blocks: eps1 stays within a half, eps2 swaps halves.
    assert np.all(G1[:4, 4:] == 0) and np.all(G1[4:, :4] == 0)
    assert np.all(G2[:4, :4] == 0) and np.all(G2[4:, 4:] == 0)
    assert np.allclose(G1[:4, :4], 0.25) and np.allclose(G2[:4, 4:], 0.25)


def test_ac4_qutrit_cliffords_covariant():
    with Budget(10.0):
        f = gross()
        group = generate_clifford(3, 1)
        assert len(group) == 216
        for U in group:
            cert = check_unitary_covariance(f, U)
            assert cert.covariant
            assert is_symplectic(cert.affine.matrix, 3)
            S = cert.affine.matrix
            assert np.all((S.T @ f.space.J @ S - f.space.J) % 3 == 0)
            W = wigner_of_channel(f, unitary_channel(U)).values
            assert is_permutation_matrix(W, 1e-9)
        model = build_wigner_model(f, build_qutrit_stabilizer())
        assert len(model.transition_mats) == 216


def test_ac5_point_mass_rows():
    with Budget(10.0):
        f = gross()
        for U in generate_clifford(3, 1):
            W = wigner_of_channel(f, unitary_channel(U)).values
            for axis in (0, 1):
                assert np.allclose(W.sum(axis=axis), 1, atol=1e-8)
                assert np.allclose((W**2).sum(axis=axis), 1, atol=1e-8)


def _born_triples(frame, d, count, rng):
    states = list(enumerate_stabilizer_states(d, 1).values())
    cliffords = generate_clifford(d, 1)
    effects = [E for povm in pauli_povms(d, 1).values() for E in povm]
    worst = 0.0
    for _ in range(count):
        rho = states[rng.integers(len(states))]
        if rng.random() < 0.5:
            ch = unitary_channel(cliffords[rng.integers(len(cliffords))])
        else:
            ch = pauli_mixture(rng.dirichlet(np.ones(d * d)), d=d)
        E = effects[rng.integers(len(effects))]
        W = wigner_of_state(frame, rho).values
        G = wigner_of_channel(frame, ch).values
        xi = wigner_of_effect(frame, E).values
        worst = max(worst, abs(xi @ G @ W - born(rho, ch.kraus_ops, E)))
    return worst


def test_ac6_born_rule():
    rng = np.random.default_rng(6)
    with Budget(30.0):
        assert _born_triples(wg_plus(), 2, 1000, rng) < 1e-8
        assert _born_triples(gross(), 3, 1000, rng) < 1e-8


FRAME_CASES = {(2, 1): wg_multi(1), (3, 1): gross(3, 1), (2, 2): wg_multi(2), (3, 2): gross(3, 2)}


def test_ac7_frame_properties():
    rng = np.random.default_rng(7)
    with Budget(30.0):
        for (d, n), f in list(FRAME_CASES.items()) + [((2, 1), wg_plus()), ((2, 1), wg_minus())]:
            A = f.operators
            N = d**n
            assert np.allclose(np.trace(A, axis1=1, axis2=2), 1, atol=1e-9)
            assert np.allclose(A, A.conj().transpose(0, 2, 1), atol=1e-9)
            gram = np.einsum("uij,vji->uv", A, A)
            assert np.allclose(gram, N * np.eye(len(A)), atol=1e-9)
            assert np.allclose(A.sum(axis=0), N * np.eye(N), atol=1e-9)
        for (d, n), f in FRAME_CASES.items():
            if n == 2:
                one = FRAME_CASES[(d, 1)]
                for pt in f.points:
                    assert np.allclose(f[pt], np.kron(one[pt[:2]], one[pt[2:]]), atol=1e-9)
            rho = random_density(d**n, rng)
            W = wigner_of_state(f, rho)
            for xs in product(range(d), repeat=n):
                total = sum(W.values[i] for i, pt in enumerate(f.points) if pt[0::2] == xs)
                k = int(np.ravel_multi_index(xs, (d,) * n))
                assert abs(total - rho[k, k].real) < 1e-9


def test_ac8_eight_state_statistics():
    sub = build_single_qubit_stabilizer()
    with Budget(5.0):
        model = build_8state_model(sub)
        n_outcomes = sum(len(p) for p in sub.effects.values())
        assert (len(sub.states), len(sub.transformations), n_outcomes) == (6, 24, 6)
        assert statistics_error(model, sub) < 1e-9


def test_ac9_oracle_cross_checks():
    with Budget(60.0):
        for d, n, count in ((2, 1, 6), (3, 1, 24), (2, 2, 720)):
            assert len(enumerate_symplectic(PhaseSpace(d, n))) == count == brute_symplectic_count(d, n)
        for f, d in ((wg_plus(), 2), (gross(), 3)):
            for U in generate_clifford(d, 1):
                cert = check_unitary_covariance(f, U)
                found = search_affine_covariance(f, U)
                if cert.covariant:
                    assert found == [cert.affine]
                else:
                    assert found == []


@pytest.mark.parametrize("d", [2, 3])
def test_ac9_search_space_sizes(d):
    from psc.phase_space import enumerate_affine
    assert len(list(enumerate_affine(PhaseSpace(d, 1)))) == {2: 6 * 4, 3: 24 * 9}[d]
