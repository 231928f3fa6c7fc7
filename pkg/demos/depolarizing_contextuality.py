"""Two Kraus decompositions of the same depolarizing channel, told apart by a model.

Run: python demos/depolarizing_contextuality.py
"""

from __future__ import annotations

import numpy as np

from psc.analysis import build_8state_model, check_transformation_noncontextuality, statistics_error
from psc.channels import channels_equal, choi, depolarizing_eps1, depolarizing_eps2
from psc.subtheory import build_single_qubit_stabilizer, with_depolarizing

np.set_printoptions(precision=2, suppress=True)

e1, e2 = depolarizing_eps1(), depolarizing_eps2()

# %% Pauli twirl versus Hadamard-twisted Pauli twirl: same Choi matrix.
print("Choi distance:", choi(e1).distance(choi(e2)), " equal:", channels_equal(e1, e2))

# %% The 8-state model stitches the two qubit frames side by side.
sub = with_depolarizing(build_single_qubit_stabilizer())
model = build_8state_model(sub)
print("ontic states:", model.ontic_labels)
print("reproduces every stabilizer statistic, max error:", statistics_error(model, sub))

# %% But it represents the two decompositions differently.
print("eps1 ->\n", model.transition_mats["depol-eps1"])
print("eps2 ->\n", model.transition_mats["depol-eps2"])
v = check_transformation_noncontextuality(model, [("depol-eps1", "depol-eps2")])
print("noncontextual:", v.noncontextual, " max discrepancy:", v.max_discrepancy)
