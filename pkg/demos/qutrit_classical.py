"""Odd dimensions: every Clifford is covariant, so everything is classical.

Run: python demos/qutrit_classical.py
"""

from __future__ import annotations

import time

from psc.analysis import build_wigner_model, check_unitary_covariance, statistics_error
from psc.frames import gross
from psc.subtheory import build_qutrit_stabilizer, generate_clifford

frame = gross()
t0 = time.perf_counter()
group = generate_clifford(3, 1)
maps = [check_unitary_covariance(frame, U).affine for U in group]
print(f"{len(group)} Cliffords, all covariant: {all(m is not None for m in maps)}"
      f" ({time.perf_counter() - t0:.2f} s)")

# %% The fitted maps realize all 24 symplectic matrices and all 9 translations.
print("distinct S:", len({m.S for m in maps}), " distinct a:", len({m.a for m in maps}))

# %% Covariance hands us an ontological model with permutation dynamics.
sub = build_qutrit_stabilizer()
model = build_wigner_model(frame, sub)
print("model statistics error:", statistics_error(model, sub))
