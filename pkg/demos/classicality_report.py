"""Full classicality report for a subtheory, as the CLI's ``theorems`` verb prints it.

Run: python demos/classicality_report.py [qubit-stab|qutrit-stab|pauli-qubit]
"""

from __future__ import annotations

import json
import sys

from psc.analysis import classicality_report
from psc.frames import frame_from_label
from psc.subtheory import subtheory_from_label

label = sys.argv[1] if len(sys.argv) > 1 else "qubit-stab"
frame = frame_from_label("gross" if label == "qutrit-stab" else "wg-plus")
report = classicality_report(frame, subtheory_from_label(label), n_remix=2)

summary = {
    "subtheory": report["subtheory"],
    "frame": report["frame"],
    "non_covariant": [c["transformation"] for c in report["covariance"] if c["status"] != "covariant"],
    "positivity": {k: report["positivity"][k] for k in ("preserving", "min_value", "checked")},
    "theorems": report["theorems"],
}
print(json.dumps(summary, indent=2))
