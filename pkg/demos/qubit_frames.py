"""Single-qubit Wigner frames, state by state.

Run: python demos/qubit_frames.py
"""

from __future__ import annotations

import numpy as np

from psc import gates
from psc.frames import negativity, wg_minus, wg_plus, wigner_of_state
from psc.linalg import ket, projector
from psc.subtheory import enumerate_stabilizer_states

np.set_printoptions(precision=3, suppress=True)

plus, minus = wg_plus(), wg_minus()

# %% The origin operators are the two "all plus" corners of the Bloch cube.
print("A+(0,0) =\n", plus[(0, 0)])
print("A-(0,0) =\n", minus[(0, 0)])

# %% Pauli conjugation just moves the phase-point operators around.
for name, P in (("X", gates.X), ("Y", gates.Y), ("Z", gates.Z)):
    img = P @ plus[(0, 0)] @ P
    target = next(pt for pt in plus.points if np.allclose(plus[pt], img))
    print(f"{name} A+(0,0) {name} = A+{target}")

# %% Every stabilizer state is a probability distribution in both frames.
for label, rho in enumerate_stabilizer_states(2, 1).items():
    wp = wigner_of_state(plus, rho).values
    wm = wigner_of_state(minus, rho).values
    print(f"{label:>3}  W+ = {wp}  W- = {wm}")

# %% A magic state is not.
h = projector(ket(np.cos(np.pi / 8), np.sin(np.pi / 8)))
W = wigner_of_state(plus, h)
print("|H> in W+:", W.values, " negativity:", round(negativity(W), 4))
