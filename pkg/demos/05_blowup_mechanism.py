"""Why the lower dilation index matters: the log-spike family separates the
Garsia-Rodemich route from the plain norm exactly when the index vanishes.

Run:  python demos/05_blowup_mechanism.py
"""

from oscilab import (
    boyd_indices,
    generate,
    grid_norm,
    local_maximal,
    lp,
    marcinkiewicz,
    median,
    phi_preset,
    sharp_maximal,
)

xlog = marcinkiewicz(phi_preset("log-slow"))
l2 = lp(2)
print("dilation exponents of the log-slow space:", boyd_indices(xlog))
print("Boyd indices of L2:", boyd_indices(l2))

# Ratio ||f_a - median|| / ||M#_s f_a|| along a = 2^-k.  Resolution scales
# with the spike so the discrete norm tracks the continuum one.
print("\n        k    M(log-slow)      L2")
rows = []
for k in range(2, 9):
    n = 2 ** (k + 11)
    f = generate("logspike", 1, n, a=2.0**-k)
    m = median(f)
    centered = f.with_values(f.values - m)
    mloc = local_maximal(f, 0.05, cube_mode="dyadic")
    r_log = grid_norm(xlog, centered) / grid_norm(xlog, mloc)
    r_l2 = grid_norm(l2, centered) / grid_norm(l2, mloc)
    rows.append((k, r_log, r_l2))
    print(f"  a=2^-{k:<2d}  {r_log:10.3f}  {r_l2:8.3f}")
print("\nlog-slow ratio grows without bound (the zero-index blow-up);"
      "\nthe L2 ratio sits in a flat band (positive index).")

# The companion failure: L1 is not controlled by its sharp function.
print("\n||f#||_1 / ||f||_1 on the spike family (unbounded growth):")
for k in range(2, 8):
    f = generate("logspike", 1, 2**14, a=2.0**-k)
    ratio = grid_norm(lp(1), sharp_maximal(f, cube_mode="dyadic")) / grid_norm(
        lp(1), f
    )
    print(f"  a=2^-{k}: {ratio:.2f}")
