import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscilab import (
    ConfigError,
    Cube,
    GridFunction,
    cube_mean,
    cubes_containing,
    hl_maximal,
    local_maximal,
    lp,
    mean_oscillation,
    quantile_oscillation,
    sharp_maximal,
    sharp_norm,
)
from oscilab.maximal import exceedance_count, resolve_cube_mode


def gf(vals, d=1):
    vals = np.asarray(vals, dtype=float)
    n = vals.size if d == 1 else int(round(math.sqrt(vals.size)))
    return GridFunction(d, n, vals)


def enumeration_maximal(f, stat):
    """Oracle: pointwise sup over cubes_containing of a per-cube statistic."""
    out = np.empty(f.ncells)
    n = f.res
    for flat in range(f.ncells):
        x = (flat,) if f.dim == 1 else divmod(flat, n)
        out[flat] = max(stat(f, q) for q in cubes_containing((f.dim, n), x))
    return out


def test_hl_examples():
    assert np.allclose(hl_maximal(gf([1, 0])).values, [1.0, 0.5])
    assert np.allclose(hl_maximal(gf([-3, -3, -3])).values, 3.0)


def test_sharp_examples():
    assert np.allclose(sharp_maximal(gf([1, 0])).values, [0.5, 0.5])
    assert np.allclose(sharp_maximal(gf([7, 7])).values, 0.0)


def test_maximal_ops_match_enumeration_oracle(rng):
    for d, n in ((1, 7), (2, 4)):
        f = GridFunction(d, n, rng.normal(size=n**d))
        got = hl_maximal(f).values
        want = enumeration_maximal(
            f, lambda ff, q: cube_mean(ff.with_values(np.abs(ff.values)), q)
        )
        assert np.allclose(got, want, atol=1e-12)
        got = sharp_maximal(f).values
        want = enumeration_maximal(f, mean_oscillation)
        assert np.allclose(got, want, atol=1e-12)
        for s in (0.2, 0.6):
            got = local_maximal(f, s).values
            want = enumeration_maximal(
                f, lambda ff, q, s=s: quantile_oscillation(ff, q, s)
            )
            assert np.allclose(got, want, atol=1e-12)


def test_hl_dominates_pointwise(rng):
    f = GridFunction(2, 6, rng.normal(size=36))
    assert np.all(hl_maximal(f).values >= np.abs(f.values) - 1e-15)


def test_quantile_oscillation_examples():
    f = gf([0, 0, 1, 5])
    assert quantile_oscillation(f, Cube((0,), 4), 0.3) == pytest.approx(0.5)
    assert quantile_oscillation(gf([2, 2, 2]), Cube((0,), 3), 0.5) == 0.0
    # s -> 0+: half the range (Chebyshev center)
    assert quantile_oscillation(f, Cube((0,), 4), 1e-9) == pytest.approx(2.5)


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.floats(-100, 100), min_size=1, max_size=14),
    st.floats(0.01, 0.99),
)
def test_quantile_oscillation_brute_force(values, s):
    f = gf(values)
    m = f.ncells
    q = Cube((0,), m)
    got = quantile_oscillation(f, q, s)
    kexc = exceedance_count(s, m)
    vals = np.sort(np.asarray(values, dtype=float))
    # optimal centers are midpoints of value pairs (window Chebyshev centers)
    cands = np.unique(np.concatenate([vals, (vals[:, None] + vals[None, :]).ravel() / 2]))
    best = min(np.sort(np.abs(np.asarray(values) - c))[::-1][kexc] for c in cands)
    assert got == pytest.approx(best, abs=1e-12)
    # definition check: at level got, strictly fewer than s*m cells exceed
    exceed = np.count_nonzero(np.abs(np.asarray(values) - _opt_c(values, kexc)) > got + 1e-12)
    assert exceed <= kexc


def _opt_c(values, kexc):
    vals = np.sort(np.asarray(values, dtype=float))
    m = vals.size
    width = m - kexc
    j = int(np.argmin(vals[width - 1:] - vals[: kexc + 1]))
    return (vals[j + width - 1] + vals[j]) / 2


def test_local_maximal_examples():
    f = gf([1, 0])
    assert np.allclose(local_maximal(f, 0.4).values, [0.5, 0.5])
    assert np.allclose(local_maximal(f, 0.6).values, [0.0, 0.0])


def test_local_maximal_monotone_in_s(rng):
    f = GridFunction(1, 24, rng.normal(size=24))
    prev = local_maximal(f, 0.05).values
    for s in (0.1, 0.25, 0.5, 0.8):
        cur = local_maximal(f, s).values
        assert np.all(cur <= prev + 1e-12)
        prev = cur


def test_local_bounded_by_sharp_over_s(rng):
    # Chebyshev: M#_s f <= f# / s pointwise
    for d, n in ((1, 16), (2, 6)):
        f = GridFunction(d, n, rng.normal(size=n**d))
        sharp = sharp_maximal(f).values
        for s in (0.1, 0.3):
            assert np.all(local_maximal(f, s).values <= sharp / s + 1e-12)


def test_sharp_norm_examples():
    f = gf([1, 0])
    assert sharp_norm(f, lp(1)) == pytest.approx(0.5)
    assert sharp_norm(gf([3, 3, 3]), lp(1)) == 0.0
    # Linf of f# equals the BMO supremum over all cubes
    rng = np.random.default_rng(5)
    g = GridFunction(1, 12, rng.normal(size=12))
    bmo = max(
        mean_oscillation(g, q) for q in cubes_containing((1, 12), (0,))
    )
    from oscilab import enumerate_cubes

    bmo = max(mean_oscillation(g, q) for q in enumerate_cubes((1, 12)))
    assert sharp_norm(g, lp(math.inf)) == pytest.approx(bmo, abs=1e-12)


def test_dyadic_mode_and_guards(rng):
    f = GridFunction(1, 16, rng.normal(size=16))
    assert not resolve_cube_mode(f, "auto")
    full = sharp_maximal(f, cube_mode="full").values
    dy = sharp_maximal(f, cube_mode="dyadic").values
    assert np.all(dy <= full + 1e-12)  # fewer cubes, smaller sup
    big = GridFunction(1, 512, rng.normal(size=512))
    assert resolve_cube_mode(big, "auto")
    sharp_maximal(big)  # auto-dyadic must run fast and not raise
    odd = GridFunction(1, 300, rng.normal(size=300))
    with pytest.raises(ConfigError):
        sharp_maximal(odd)  # beyond guard, not a power of two


def test_exceedance_count_translation():
    # count < s*m with integer counts: allowed exceedances = ceil(s m) - 1
    assert exceedance_count(0.3, 4) == 1
    assert exceedance_count(0.5, 4) == 1
    assert exceedance_count(0.05, 20) == 0  # snapped against float dust
    assert exceedance_count(0.05, 2) == 0
    assert exceedance_count(0.99, 100) == 98
    with pytest.raises(ConfigError):
        exceedance_count(1.0, 4)
