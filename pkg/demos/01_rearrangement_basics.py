"""Walk through the discretization layer and the rearrangement toolkit.

Run:  python demos/01_rearrangement_basics.py
"""

import numpy as np

from oscilab import (
    Cube,
    GridFunction,
    cube_mean,
    distribution,
    double_oscillation,
    double_star,
    dilate,
    generate,
    hardy_Q,
    hlpc_dominates,
    lp,
    mean_oscillation,
    median,
    norm,
    oscillation_gap,
    rearrange,
)

# A grid function is a cell-constant function on [0,1]^d; the whole cube has
# measure one.  Start with a hand-sized example.
f = GridFunction(1, 4, [0.0, 0.0, 1.0, 5.0])
whole = Cube((0,), 4)
print("values:         ", f.values)
print("cube mean:      ", cube_mean(f, whole))
print("mean oscillation:", mean_oscillation(f, whole))
print("double oscillation:", double_oscillation(f, whole))
print("sandwich check: int|f-f_Q| <= doubleosc <= 2 int|f-f_Q|:",
      mean_oscillation(f, whole) * 1.0,
      "<=", double_oscillation(f, whole),
      "<=", 2 * mean_oscillation(f, whole))

# The decreasing rearrangement sorts |f| onto (0,1]; it is exactly
# equimeasurable with |f|.
prof = rearrange(f)
print("\nrearranged breakpoints:", prof.breakpoints)
print("rearranged values:     ", prof.values)
print("|{|f| > 0.5}| =", distribution(f, 0.5))

# f** is the running average of f*; it dominates f* and decreases.
avg = double_star(prof)
ts = np.array([0.2, 0.5, 0.9])
print("\nf*(t): ", prof.sample(ts))
print("f**(t):", avg.sample(ts))
gap, sup = oscillation_gap(f)
print("sup (f** - f*) =", sup, " (the rearrangement-invariant BMO-type gap)")

# Dilations contract norms by at most max(1, s); the Hardy operator Q adds
# logarithmic weight toward t=0.
g = rearrange(generate("random_steps", 1, 64, seed=1))
for s in (0.5, 2.0):
    print(f"\n||sigma_{s} g||_1 / ||g||_1 =",
          norm(lp(1), dilate(g, s)) / norm(lp(1), g), f"(bound {max(1.0, s)})")
print("Q(g)(0.1) =", hardy_Q(g).at(0.1))

# Majorization: smaller cumulative integrals at every t force smaller norms
# in every rearrangement-invariant space.
small = rearrange(GridFunction(1, 4, [0.2, 0.1, 0.0, 0.0]))
print("\nhlpc_dominates(small, g):", hlpc_dominates(small, g))
print("L2 norms:", norm(lp(2), small), "<=", norm(lp(2), g))

# Medians are near-optimal centering constants: the factor-4 inequality.
h = generate("random_steps", 1, 32, seed=7)
m = median(h)
centered = rearrange(h.with_values(h.values - m))
best = min(
    norm(lp(2), rearrange(h.with_values(h.values - c)))
    for c in np.unique(h.values)
)
print("\nmedian:", m)
print("||f - median||_2 =", norm(lp(2), centered), "<= 4 * inf_c =", 4 * best)
