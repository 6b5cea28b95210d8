"""Consume the machine-readable verification reports: run a suite, pull out
the measured constants, and render the K-route overlay it certifies.

Run:  python demos/06_verification_reports.py   (writes kfun_overlay.svg)
"""

import numpy as np

from oscilab import generate, k_l1_bmo, run_suite
from oscilab.report import dump_json
from oscilab.svgplot import plot_profiles

report = run_suite("kfun", {"seed": 0})
print(f"suite: {report['suite']}  schema v{report['schema_version']}  "
      f"passed: {report['passed']}\n")
for c in report["checks"]:
    print(f"[{c['status']:>4}] {c['name']}")
    print(f"       statement: {c['paper_anchor']}")
    if c["measured_constant"] is not None and c["name"] != "k-route-equivalence":
        print(f"       measured:  {c['measured_constant']}")

worst = report["checks"][0]["measured_constant"]["worst"]
print("\nworst pairwise K-route constants over the suite corpus:")
for pair, val in worst.items():
    print(f"  {pair:9s} {val:.3f}")

# identical config and seed reproduce the report byte for byte
again = run_suite("kfun", {"seed": 0})
print("\nbyte-identical rerun:", dump_json(report) == dump_json(again))

# the certified object behind the constants: the three routes on one function
f = generate("cosine_mix", 1, 64, seed=1)
ts = np.geomspace(2e-3, 1.0, 40)
curves = [
    (m, ts, k_l1_bmo(f, ts, method=m).values) for m in ("BS", "JT", "PACK")
]
plot_profiles(curves, "kfun_overlay.svg", title="K routes on a smooth mix")
print("wrote kfun_overlay.svg")
