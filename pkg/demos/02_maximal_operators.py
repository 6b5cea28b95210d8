"""The three maximal operators and the pointwise bounds tying them together.

Run:  python demos/02_maximal_operators.py
"""

import numpy as np

from oscilab import (
    Cube,
    generate,
    hl_maximal,
    local_maximal,
    quantile_oscillation,
    sharp_maximal,
    sharp_norm,
    lp,
)
from oscilab.verify import equ103_max_ratio

f = generate("random_steps", 2, 16, seed=3)
s = 0.05

mf = hl_maximal(f)          # sup of cube averages of |f|
fsharp = sharp_maximal(f)   # sup of cube mean oscillations
mloc = local_maximal(f, s)  # sup of s-quantile oscillations

print("max |f|       :", np.abs(f.values).max())
print("max M f       :", mf.values.max(), "(dominates |f| pointwise)")
print("BMO norm      :", fsharp.values.max())
print("sharp L2 norm :", sharp_norm(f, lp(2)))

# The quantile oscillation discards the worst s-fraction of a cube before
# measuring the deviation from the best constant.
q = Cube((2, 2), 8)
print("\non one 8x8 cube: osc =", quantile_oscillation(f, q, 1e-9),
      " vs s=0.3 quantile osc =", quantile_oscillation(f, q, 0.3))

# Chebyshev gives M#_s <= f#/s; the reverse control runs through the
# Hardy-Littlewood maximal operator with the dimensional constant 2*8^d/s.
ratio = np.max(hl_maximal(mloc).values[fsharp.values > 0]
               / fsharp.values[fsharp.values > 0])
print(f"\nmax M(M#_s f)/f# = {ratio:.2f}  (bound 2*8^2/s = {2 * 64 / s:.0f})")

# Every cube's oscillation integral is controlled by the integral of M#_s f
# with factor 8 once s is small; sweep s to watch the factor degrade.
print("\ns-sweep of the worst per-cube ratio int|f-f_Q| / int M#_s f:")
for sv in (0.05, 0.2, 0.4, 0.6, 0.8):
    worst = equ103_max_ratio(f, local_maximal(f, sv))
    flag = "<= 8" if worst <= 8 else "exceeds 8"
    print(f"  s = {sv:.2f}: {worst:8.3f}  ({flag})")
