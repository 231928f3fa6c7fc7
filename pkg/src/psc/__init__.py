"""Discrete Wigner representations and classicality checks for quantum subtheories."""

from .channels import (
    ChoiMatrix,
    KrausChannel,
    apply,
    channels_equal,
    choi,
    depolarizing_eps1,
    depolarizing_eps2,
    pauli_mixture,
    remix_kraus,
    unitary_channel,
    unitary_kraus_decompositions,
)
from .frames import (
    GammaFunction,
    WignerFrame,
    frame_from_label,
    gross,
    negativity,
    phase_point_operator,
    reconstruct_state,
    weyl,
    wg_minus,
    wg_multi,
    wg_plus,
    wigner_of_channel,
    wigner_of_effect,
    wigner_of_state,
)
from .phase_space import AffineSymplectic, PhaseSpace, enumerate_symplectic, is_symplectic
from .subtheory import (
    Subtheory,
    build_qutrit_stabilizer,
    build_single_qubit_stabilizer,
    enumerate_stabilizer_states,
    generate_clifford,
    subtheory_from_label,
)

__version__ = "0.1.0"
