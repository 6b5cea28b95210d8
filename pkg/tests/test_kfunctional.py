import math

import numpy as np
import pytest

from oracles import brute_f_sharp

from oscilab import (
    ConfigError,
    GridFunction,
    SizeGuardError,
    default_t_grid,
    f_sharp_curve,
    f_sharp_profile,
    f_sharp_profile_p,
    k_l1_bmo,
    k_l1_linf,
    rearrange,
    sharp_maximal,
    vitali_threshold_estimate,
)
from oscilab.kfunctional import KProfile, running_max


def gf(vals, d=1):
    vals = np.asarray(vals, dtype=float)
    n = vals.size if d == 1 else int(round(math.sqrt(vals.size)))
    return GridFunction(d, n, vals)


def test_k_l1_linf_indicator():
    f = gf([1, 0])
    ts = np.array([0.1, 0.25, 0.5, 0.8, 1.0])
    prof = k_l1_linf(f, ts)
    assert np.allclose(prof.values, np.minimum(ts, 0.5), atol=1e-15)
    assert prof.values[-1] == pytest.approx(np.abs(f.values).mean())


def test_k_l1_linf_truncation_oracle(rng):
    # K(t; L1, Linf) = inf_c ||(|f|-c)_+||_1 + t c, swept over levels
    for _ in range(8):
        n = int(rng.integers(2, 20))
        f = gf(rng.normal(size=n))
        ts = np.linspace(0.05, 1.0, 11)
        got = k_l1_linf(f, ts).values
        absf = np.abs(f.values)
        cands = np.unique(np.concatenate([absf, [0.0]]))
        cands = np.concatenate([cands, (cands[1:] + cands[:-1]) / 2])
        best = np.full(ts.size, np.inf)
        for c in cands:
            val = np.maximum(absf - c, 0).mean() + ts * c
            best = np.minimum(best, val)
        assert np.allclose(got, best, atol=1e-9)


def test_k_bs_example():
    f = gf([1, 0])
    prof = k_l1_bmo(f, np.array([1.0]), method="BS")
    assert prof.values[0] == pytest.approx(0.5)


def test_k_methods_constant_zero():
    f = gf([3, 3, 3, 3])
    ts = np.array([0.25, 0.5, 1.0])
    for method in ("BS", "JT", "PACK"):
        assert np.allclose(k_l1_bmo(f, ts, method=method).values, 0.0)


def test_k_profile_invariants_all_methods(rng):
    ts = np.geomspace(5e-3, 1.0, 21)
    for trial in range(8):
        d = 1 if trial % 2 else 2
        n = int(rng.integers(4, 20)) if d == 1 else int(rng.integers(3, 7))
        f = GridFunction(d, n, rng.normal(size=n**d))
        for method in ("BS", "JT", "PACK"):
            prof = k_l1_bmo(f, ts, method=method)  # constructor validates
            assert np.all(prof.values >= 0)
            assert np.all(np.diff(prof.values) >= -1e-9 * max(1, prof.values.max()))
            ratios = prof.values / prof.t
            assert np.all(np.diff(ratios) <= 1e-9 * max(1, ratios.max()))


def test_kprofile_rejects_bad_data():
    with pytest.raises(Exception):
        KProfile(np.array([0.5, 0.25]), np.array([1.0, 2.0]), "X")


def test_running_max():
    assert np.array_equal(running_max([1.0, 0.5, 2.0]), [1.0, 1.0, 2.0])


def test_f_sharp_examples():
    f = gf([1, 0])
    assert f_sharp_profile(f, 0.3) == pytest.approx(0.5)
    assert f_sharp_profile(f, 0.999) == pytest.approx(0.5)
    assert f_sharp_profile(f, 1.0) == 0.0  # strict inf-convention at t=1
    assert f_sharp_profile(gf([2, 2, 2]), 0.5) == 0.0


def test_f_sharp_matches_bruteforce(rng):
    for trial in range(14):
        d = 1 if trial % 3 else 2
        n = int(rng.integers(2, 9)) if d == 1 else int(rng.integers(2, 4))
        f = GridFunction(d, n, rng.normal(size=n**d))
        ts = rng.uniform(0.02, 0.999, size=5)
        ts.sort()
        got = f_sharp_curve(f, ts)
        want = brute_f_sharp(f, ts, None)
        assert np.allclose(got, want, atol=1e-12)


def test_f_sharp_2d_exact_where_greedy_fails():
    # frozen case where greedy-by-size packing under-covers (a large cube
    # blocks disjoint smaller ones): the tiny-2D sweep must search exactly
    vals = [-1.5, -0.5, -1.3, 0.8, 7.4, -12.8, -1.2, 0.9,
            1.5, -1.9, -8.8, 1.6, 8.6, -7.7, 4.3, -1.6]
    f = GridFunction(2, 4, np.array(vals))
    ts = np.array([0.3, 0.55, 0.65, 0.8])
    got = f_sharp_curve(f, ts)
    want = brute_f_sharp(f, ts, None)
    assert np.allclose(got, want, atol=1e-12)
    assert got[2] == pytest.approx(4.075, abs=1e-9)


def test_f_sharp_exact_small_flag(rng):
    f = gf(rng.normal(size=6))
    v = f_sharp_profile(f, 0.37, exact_small=True)  # raises on mismatch
    assert v >= 0
    big = gf(rng.normal(size=40))
    with pytest.raises(SizeGuardError):
        f_sharp_profile(big, 0.5, exact_small=True)


def test_f_sharp_p_example():
    f = gf([1, 0])
    # statistic on the full cube at p=1/2: ((2*(1/2)^(1/2))/2)^2 = 1/2
    assert f_sharp_profile_p(f, 0.3, 0.5) == pytest.approx(0.5, rel=1e-12)
    with pytest.raises(ConfigError):
        f_sharp_profile_p(f, 0.3, 1.5)


def test_f_sharp_p_matches_bruteforce(rng):
    for trial in range(6):
        n = int(rng.integers(2, 8))
        f = gf(rng.normal(size=n))
        ts = np.array([0.15, 0.45, 0.85])
        got = np.array([f_sharp_profile_p(f, t, 0.5) for t in ts])
        want = brute_f_sharp(f, ts, 0.5)
        assert np.allclose(got, want, atol=1e-12)


def test_f_sharp_p_limit_recovers_mean_oscillation(rng):
    for trial in range(6):
        n = int(rng.integers(3, 9))
        f = gf(rng.normal(size=n))
        ts = np.array([0.2, 0.6])
        base = f_sharp_curve(f, ts)
        near = np.array([f_sharp_profile_p(f, t, 1 - 1e-7) for t in ts])
        assert np.allclose(near, base, atol=1e-6 * max(1, np.abs(f.values).max()))


def test_f_sharp_lower_bound_near_one(rng):
    # pi = {Q0} certifies F(t) >= ||f||_1 for mean-zero f, t below 1
    for _ in range(6):
        n = int(rng.integers(2, 12))
        vals = rng.normal(size=n)
        vals -= vals.mean()
        f = gf(vals)
        t = 1.0 - 0.5 / n
        assert f_sharp_curve(f, [t])[0] >= np.abs(vals).mean() - 1e-12


def test_k_pack_endpoint(rng):
    for _ in range(6):
        n = int(rng.integers(2, 12))
        f = gf(rng.normal(size=n))
        l1 = np.abs(f.values - f.values.mean()).mean()
        kp = k_l1_bmo(f, np.array([1.0]), method="PACK").values[0]
        assert kp <= 2 * l1 * (1 + 1e-9) + 1e-15


def test_vitali_threshold_example():
    assert vitali_threshold_estimate(gf([1, 0]), 0.5) == pytest.approx(0.5)
    assert vitali_threshold_estimate(gf([4, 4]), 0.3) == 0.0


def test_vitali_threshold_inequality(rng):
    for trial in range(20):
        d = 1 if trial % 3 else 2
        n = int(rng.integers(2, 14)) if d == 1 else int(rng.integers(2, 6))
        f = GridFunction(d, n, rng.normal(size=n**d))
        prof = rearrange(sharp_maximal(f))
        for _ in range(3):
            t = float(rng.uniform(0.05, 1.0)) * 5.0**-d
            est = vitali_threshold_estimate(f, t)
            target = prof.value_at(min(5.0**d * t, 1.0))
            assert target <= est + 1e-12


def test_default_t_grid(rng):
    f = gf(rng.normal(size=16))
    ts = default_t_grid(f)
    assert ts[0] > 0 and ts[-1] == 1.0
    assert np.all(np.diff(ts) > 0)
    prof_bp = rearrange(sharp_maximal(f)).breakpoints[1:]
    assert set(np.round(prof_bp, 12)).issubset(set(np.round(ts, 12)))


def test_kprofile_csv(tmp_path):
    prof = k_l1_bmo(gf([1, 0]), np.array([0.25, 1.0]), method="BS")
    path = tmp_path / "k.csv"
    prof.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,value,method"
    assert lines[1].endswith(",BS")
