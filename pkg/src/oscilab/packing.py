"""Optimization over cube packings: exhaustive enumeration, exact 1D dynamic
programs, greedy Vitali selection.

1D problems are solved exactly (weighted interval scheduling and a budgeted
DP over (cell position, cells used)).  2D maximum-weight square packing is
combinatorially hard: tiny grids (N <= 4) are solved exactly by pruned search
over the cube family, larger grids fall back to deterministic greedy
selection whose value is a certified lower bound.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import ConfigError, InvariantViolation, SizeGuardError
from .grid import Cube, Packing, enumerate_cubes

__all__ = [
    "enumerate_packings",
    "max_measure_packing",
    "max_additive_packing",
    "additive_pareto_1d",
    "vitali_select",
    "union_measure",
    "ENUM_GUARD_1D",
    "ENUM_GUARD_2D",
]

ENUM_GUARD_1D = 12
ENUM_GUARD_2D = 4
VITALI_COVER_FACTOR = 5  # per-dimension constant of the covering argument


def _cube_mask(q: Cube, res: int) -> int:
    mask = 0
    for c in q.flat_cells(res).tolist():
        mask |= 1 << c
    return mask


def enumerate_packings(grid) -> Iterator[Packing]:
    """Stream every nonempty packing exactly once, in canonical DFS order.

    Guarded: feasible only for 1D N <= 12 and 2D N <= 4.
    """
    d, n = int(grid[0]), int(grid[1])
    if (d == 1 and n > ENUM_GUARD_1D) or (d == 2 and n > ENUM_GUARD_2D):
        raise SizeGuardError(
            f"packing enumeration refused for d={d}, N={n} "
            f"(guards: 1D N<={ENUM_GUARD_1D}, 2D N<={ENUM_GUARD_2D})"
        )
    cubes = enumerate_cubes(grid)
    masks = [_cube_mask(q, n) for q in cubes]
    chosen: list = []

    def rec(start: int, used: int) -> Iterator[Packing]:
        for i in range(start, len(cubes)):
            if masks[i] & used:
                continue
            chosen.append(cubes[i])
            yield Packing(list(chosen))
            yield from rec(i + 1, used | masks[i])
            chosen.pop()

    yield from rec(0, 0)


# ---------------------------------------------------------------------------
# weight normalization

def _weight_lookup(weights, res: int) -> Callable[[Cube], float]:
    if callable(weights):
        return weights
    if isinstance(weights, dict):
        # dict form: {side: per-origin array in lexicographic origin order}
        def look(q: Cube, _w=weights):
            arr = np.asarray(_w[q.side])
            if q.dim == 1:
                return float(arr[q.origin[0]])
            m = int(round(math.sqrt(arr.size)))
            return float(arr[q.origin[0] * m + q.origin[1]])
        return look
    raise ConfigError("weights must be a callable or {side: array} dict")


# ---------------------------------------------------------------------------
# 1D exact solvers

def _wis_1d(items: Sequence[tuple], n: int) -> tuple:
    """Weighted interval scheduling: items are (start, end, weight, cube).

    Exact max-weight disjoint subset; negative weights are never selected.
    Returns (chosen cubes, value).
    """
    items = sorted(items, key=lambda it: (it[1], it[0]))
    ends = [it[1] for it in items]
    m = len(items)
    best = [0.0] * (m + 1)
    take = [False] * (m + 1)
    pred = [0] * (m + 1)
    for i in range(1, m + 1):
        s, e, w, _ = items[i - 1]
        j = bisect_right(ends, s, 0, i - 1)
        cand = best[j] + w
        if cand > best[i - 1]:
            best[i], take[i], pred[i] = cand, True, j
        else:
            best[i] = best[i - 1]
    chosen = []
    i = m
    while i > 0:
        if take[i]:
            chosen.append(items[i - 1][3])
            i = pred[i]
        else:
            i -= 1
    chosen.sort()
    return chosen, best[m]


def _exact_search(entries: Sequence[tuple], res: int) -> tuple:
    """Exact max-weight packing by pruned DFS over (cube, weight) entries."""
    entries = [e for e in entries if e[1] > 0]
    entries.sort(key=lambda e: (-e[1], e[0]))
    masks = [_cube_mask(q, res) for q, _ in entries]
    suffix = [0.0] * (len(entries) + 1)
    for i in range(len(entries) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + entries[i][1]
    best_val = 0.0
    best_set: list = []
    cur: list = []

    def rec(i: int, used: int, acc: float):
        nonlocal best_val, best_set
        if acc > best_val:
            best_val, best_set = acc, list(cur)
        if i >= len(entries) or acc + suffix[i] <= best_val:
            return
        for j in range(i, len(entries)):
            if acc + suffix[j] <= best_val:
                return
            if masks[j] & used:
                continue
            cur.append(entries[j][0])
            rec(j + 1, used | masks[j], acc + entries[j][1])
            cur.pop()

    rec(0, 0, 0.0)
    best_set.sort()
    return best_set, best_val


def _greedy(entries: Sequence[tuple], res: int, d: int) -> tuple:
    """Deterministic greedy: weight descending, canonical tie-break."""
    entries = [e for e in entries if e[1] > 0]
    entries.sort(key=lambda e: (-e[1], e[0]))
    occupied = np.zeros(res**d, dtype=bool)
    chosen = []
    val = 0.0
    for q, w in entries:
        cells = q.flat_cells(res)
        if occupied[cells].any():
            continue
        occupied[cells] = True
        chosen.append(q)
        val += w
    chosen.sort()
    return chosen, val


def max_measure_packing(cubes: Iterable[Cube], grid) -> tuple:
    """Maximum total measure of pairwise-disjoint cubes from the candidates.

    1D: exact (weighted interval scheduling).  2D: exact for N <= 4, greedy
    by size descending otherwise (a certified lower bound).
    Returns (Packing, total measure).
    """
    d, n = int(grid[0]), int(grid[1])
    cubes = list(cubes)
    if d == 1:
        items = [
            (q.origin[0], q.origin[0] + q.side, q.measure(n), q) for q in cubes
        ]
        chosen, val = _wis_1d(items, n)
    else:
        entries = [(q, q.measure(n)) for q in cubes]
        if n <= ENUM_GUARD_2D:
            chosen, val = _exact_search(entries, n)
        else:
            chosen, val = _greedy(entries, n, d)
    return Packing(chosen), val


def _dp_unbudgeted_1d(w: dict, n: int) -> tuple:
    """DP over cell positions; w maps side -> per-origin weight array."""
    best = [0.0] * (n + 1)
    parent = [(0, 0)] * (n + 1)  # (prev position, side or 0=skip)
    for j in range(1, n + 1):
        b, pk = best[j - 1], 0
        for k in w:
            if k > j:
                continue
            cand = best[j - k] + float(w[k][j - k])
            if cand > b:
                b, pk = cand, k
        best[j] = b
        parent[j] = (j - pk if pk else j - 1, pk)
    chosen = []
    j = n
    while j > 0:
        prev, k = parent[j]
        if k:
            chosen.append(Cube((prev,), k))
        j = prev
    chosen.sort()
    return chosen, best[n]


def additive_pareto_1d(weights, grid) -> np.ndarray:
    """value[m] = max sum of weights over packings covering exactly m cells.

    Exact DP over (cell position, cells used); -inf marks unreachable m for
    restricted candidate sets.  Non-decreasing in m when all weights >= 0.
    """
    d, n = int(grid[0]), int(grid[1])
    if d != 1:
        raise ConfigError("the exact budgeted DP is 1D only")
    w = _side_tables_1d(weights, n)
    rows, _ = _dp_budgeted_1d(w, n)
    return rows[n]


def _side_tables_1d(weights, n: int) -> dict:
    if isinstance(weights, dict):
        return {int(k): np.asarray(v, dtype=float) for k, v in weights.items()}
    look = weights
    return {
        k: np.array([float(look(Cube((o,), k))) for o in range(n - k + 1)])
        for k in range(1, n + 1)
    }


def max_additive_packing(weights, grid, measure_budget: int | None = None) -> tuple:
    """Maximize the sum of cube weights over packings.

    weights: callable Cube -> real, or {side: per-origin array}.  1D is an
    exact DP (O(N^2), budgeted variant O(N^3)); 2D is exact for N <= 4 and
    greedy otherwise.  With measure_budget = m the packing must cover exactly
    m cells.  Returns (Packing, value); the empty packing (value 0) wins when
    every weight is <= 0.
    """
    d, n = int(grid[0]), int(grid[1])
    if d == 1:
        w = _side_tables_1d(weights, n)
        if measure_budget is None:
            chosen, val = _dp_unbudgeted_1d(w, n)
            return Packing(chosen), val
        m = int(measure_budget)
        if not 0 <= m <= n:
            raise ConfigError(f"measure budget {m} outside 0..{n}")
        table, parents = _dp_budgeted_1d(w, n, track=True)
        if not math.isfinite(table[n][m]):
            raise ConfigError(f"no packing covers exactly {m} cells")
        chosen = _reconstruct_budgeted(parents, n, m)
        return Packing(chosen), float(table[n][m])
    if measure_budget is not None:
        raise ConfigError("measure budgets are supported in 1D only")
    look = _weight_lookup(weights, n)
    entries = [(q, float(look(q))) for q in enumerate_cubes(grid)]
    if n <= ENUM_GUARD_2D:
        chosen, val = _exact_search(entries, n)
    else:
        chosen, val = _greedy(entries, n, d)
    return Packing(chosen), val


def _dp_budgeted_1d(w: dict, n: int, track: bool = False) -> tuple:
    neg = -math.inf
    rows = [np.full(n + 1, neg)]
    rows[0][0] = 0.0
    parents = [dict()]
    for j in range(1, n + 1):
        new = rows[j - 1].copy()
        par: dict = {}
        for k in w:
            if k > j:
                continue
            wk = float(w[k][j - k])
            cand = rows[j - k][:-k] + wk
            better = cand > new[k:]
            if better.any():
                idx = np.nonzero(better)[0]
                new[k + idx] = cand[idx]
                if track:
                    for m in idx.tolist():
                        par[m + k] = (j - k, k)
        rows.append(new)
        parents.append(par)
    return rows, parents


def _reconstruct_budgeted(parents, n: int, m: int) -> list:
    chosen = []
    j = n
    while j > 0 and m > 0:
        par = parents[j]
        if m in par:
            prev, k = par[m]
            chosen.append(Cube((prev,), k))
            j, m = prev, m - k
        else:
            j -= 1
    chosen.sort()
    return chosen


def union_measure(cubes: Iterable[Cube], grid) -> float:
    d, n = int(grid[0]), int(grid[1])
    occ = np.zeros(n**d, dtype=bool)
    for q in cubes:
        occ[q.flat_cells(n)] = True
    return float(occ.sum()) / n**d


def vitali_select(cubes: Iterable[Cube], grid) -> Packing:
    """Greedy Vitali selection: size descending, keep cubes disjoint from the
    kept set.  The union of all input cubes is covered within the factor
    5^d * (total selected measure); this guarantee is asserted on every call.
    """
    d, n = int(grid[0]), int(grid[1])
    cubes = list(cubes)
    entries = sorted(cubes, key=lambda q: (-q.side, q.origin))
    occ = np.zeros(n**d, dtype=bool)
    chosen = []
    for q in entries:
        cells = q.flat_cells(n)
        if occ[cells].any():
            continue
        occ[cells] = True
        chosen.append(q)
    chosen.sort()
    selected = math.fsum(q.measure(n) for q in chosen)
    covered = union_measure(cubes, grid)
    if covered > VITALI_COVER_FACTOR**d * selected + 1e-12:
        raise InvariantViolation(
            f"covering factor exceeded: union {covered} > "
            f"{VITALI_COVER_FACTOR ** d} * {selected}"
        )
    return Packing(chosen)
