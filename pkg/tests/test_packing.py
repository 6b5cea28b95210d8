import math

import numpy as np
import pytest

from oracles import packing_count_1d

from oscilab import (
    ConfigError,
    Cube,
    SizeGuardError,
    additive_pareto_1d,
    enumerate_cubes,
    enumerate_packings,
    max_additive_packing,
    max_measure_packing,
    union_measure,
    vitali_select,
)


def test_enumerate_packings_tiny():
    pks = list(enumerate_packings((1, 2)))
    as_sets = [frozenset(p.cubes) for p in pks]
    assert len(pks) == 4
    assert frozenset([Cube((0,), 2)]) in as_sets
    assert frozenset([Cube((0,), 1), Cube((1,), 1)]) in as_sets
    assert len(list(enumerate_packings((1, 1)))) == 1


def test_enumerate_packings_counts_match_recurrence():
    for n in range(1, 9):
        got = sum(1 for _ in enumerate_packings((1, n)))
        assert got == packing_count_1d(n) - 1  # nonempty only


def test_enumerate_packings_unique_and_disjoint():
    seen = set()
    for p in enumerate_packings((2, 3)):
        key = frozenset(p.cubes)
        assert key not in seen
        seen.add(key)
        p.validate(3)  # raises on overlap
    assert len(seen) > 100


def test_enumeration_guard():
    with pytest.raises(SizeGuardError):
        next(enumerate_packings((1, 13)))
    with pytest.raises(SizeGuardError):
        next(enumerate_packings((2, 5)))


def test_max_measure_examples():
    # overlapping intervals of 2 and 3 cells: take the longer one
    cubes = [Cube((0,), 2), Cube((1,), 3)]
    pk, val = max_measure_packing(cubes, (1, 4))
    assert val == pytest.approx(0.75)
    assert pk.cubes == [Cube((1,), 3)]
    # disjoint candidates are all selected
    cubes = [Cube((0,), 2), Cube((2,), 2)]
    pk, val = max_measure_packing(cubes, (1, 4))
    assert len(pk) == 2 and val == pytest.approx(1.0)


def test_max_measure_matches_bruteforce(rng):
    for trial in range(60):
        n = int(rng.integers(2, 13))
        cubes = enumerate_cubes((1, n))
        keep = [q for q in cubes if rng.random() < 0.5]
        if not keep:
            continue
        _, val = max_measure_packing(keep, (1, n))
        keepset = set(keep)
        best = 0.0
        for p in enumerate_packings((1, n)):
            if all(q in keepset for q in p):
                best = max(best, p.total_measure(n))
        assert val == pytest.approx(best, abs=1e-12)


def test_max_measure_monotone_in_candidates(rng):
    n = 10
    cubes = enumerate_cubes((1, n))
    keep = [q for q in cubes if rng.random() < 0.6]
    _, big = max_measure_packing(keep, (1, n))
    _, small = max_measure_packing(keep[::2], (1, n))
    assert small <= big + 1e-12


def test_max_measure_2d_exact_small(rng):
    for trial in range(8):
        cubes = [q for q in enumerate_cubes((2, 4)) if rng.random() < 0.45]
        if not cubes:
            continue
        _, val = max_measure_packing(cubes, (2, 4))
        cubeset = set(cubes)
        best = 0.0
        for p in enumerate_packings((2, 4)):
            if all(q in cubeset for q in p):
                best = max(best, p.total_measure(4))
        assert val == pytest.approx(best, abs=1e-12)


def test_max_additive_examples():
    n = 6
    # a single positive-weight cube wins alone
    w = {q: -1.0 for q in enumerate_cubes((1, n))}
    star = Cube((2,), 3)
    w[star] = 2.0
    pk, val = max_additive_packing(lambda q: w[q], (1, n))
    assert pk.cubes == [star] and val == 2.0
    # all weights <= 0: empty packing, value 0
    pk, val = max_additive_packing(lambda q: -1.0, (1, n))
    assert len(pk) == 0 and val == 0.0


def test_max_additive_matches_bruteforce(rng):
    # together with the measure-packing draws this exceeds 100 random
    # DP-vs-exhaustive comparisons at N <= 12
    for trial in range(45):
        n = int(rng.integers(2, 13))
        weights = {q: float(rng.normal()) for q in enumerate_cubes((1, n))}
        pk, val = max_additive_packing(lambda q: weights[q], (1, n))
        best = 0.0
        for p in enumerate_packings((1, n)):
            best = max(best, sum(weights[q] for q in p))
        assert val == pytest.approx(best, abs=1e-12)
        assert sum(weights[q] for q in pk) == pytest.approx(val, abs=1e-12)


def test_max_additive_2d_exact_small(rng):
    for trial in range(6):
        weights = {q: float(rng.normal()) for q in enumerate_cubes((2, 3))}
        _, val = max_additive_packing(lambda q: weights[q], (2, 3))
        best = 0.0
        for p in enumerate_packings((2, 3)):
            best = max(best, sum(weights[q] for q in p))
        assert val == pytest.approx(best, abs=1e-12)


def test_budgeted_dp_and_pareto(rng):
    n = 8
    weights = {q: float(abs(rng.normal())) for q in enumerate_cubes((1, n))}
    pareto = additive_pareto_1d(lambda q: weights[q], (1, n))
    assert pareto.size == n + 1 and pareto[0] == 0.0
    # exact-m brute force
    for m in range(n + 1):
        best = 0.0 if m == 0 else -math.inf
        for p in enumerate_packings((1, n)):
            if p.total_cells() == m:
                best = max(best, sum(weights[q] for q in p))
        if math.isfinite(best):
            assert pareto[m] == pytest.approx(best, abs=1e-12)
    # nonnegative weights: exact-m profile is non-decreasing
    assert np.all(np.diff(pareto) >= -1e-12)
    pk, val = max_additive_packing(lambda q: weights[q], (1, n), measure_budget=5)
    assert pk.total_cells() == 5 and val == pytest.approx(pareto[5], abs=1e-12)


def test_vitali_select_basics():
    disjoint = [Cube((0,), 2), Cube((2,), 2), Cube((5,), 1)]
    pk = vitali_select(disjoint, (1, 8))
    assert sorted(pk.cubes) == sorted(disjoint)
    nested = [Cube((0,), 8), Cube((0,), 4), Cube((2,), 2)]
    pk = vitali_select(nested, (1, 8))
    assert pk.cubes == [Cube((0,), 8)]


def test_vitali_coverage_factor(rng):
    worst = 0.0
    for d, n in ((1, 20), (2, 8)):
        for trial in range(12):
            cubes = [q for q in enumerate_cubes((d, n)) if rng.random() < 0.3]
            if not cubes:
                continue
            pk = vitali_select(cubes, (d, n))
            selected = sum(q.measure(n) for q in pk)
            cover = union_measure(cubes, (d, n))
            assert cover <= 5.0**d * selected + 1e-12
            worst = max(worst, cover / selected)
    assert worst > 1.0  # the bound is actually exercised


def test_budget_validation():
    with pytest.raises(ConfigError):
        max_additive_packing(lambda q: 1.0, (1, 4), measure_budget=7)
    with pytest.raises(ConfigError):
        max_additive_packing(lambda q: 1.0, (2, 3), measure_budget=2)
