"""The Hadamard gate keeps stabilizer states non-negative but is not covariant.

Run: python demos/hadamard_covariance.py
"""

from __future__ import annotations

from psc import gates
from psc.analysis import check_positivity_preservation, check_unitary_covariance
from psc.channels import unitary_channel
from psc.frames import wg_plus, wigner_of_channel
from psc.subtheory import build_single_qubit_stabilizer

frame = wg_plus()

# %% Conjugating A+(0,0) by H lands on an operator of the *other* frame.
cert = check_unitary_covariance(frame, gates.H, name="H")
print(cert.status, "-", cert.reason)

# %% So the channel matrix of H is not stochastic: it has negative entries.
W = wigner_of_channel(frame, unitary_channel(gates.H))
print("W_H =\n", W.values.round(3))

# %% Yet no stabilizer state is ever pushed out of the non-negative set.
sub = build_single_qubit_stabilizer()
v = check_positivity_preservation(frame, sub)
print(f"positivity preserved over {v.checked} (Clifford, state) pairs: {v.preserving}"
      f" (min value {v.min_value:.2e})")

# %% Half of the 24 Cliffords are affine symplectic relabelings of the frame.
covariant = [name for name, ch in sub.transformations.items()
             if check_unitary_covariance(frame, ch.kraus_ops[0]).covariant]
print(f"{len(covariant)} covariant Cliffords:", ", ".join(covariant))
