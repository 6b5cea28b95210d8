"""Packing functionals and related norms.

The packing suprema are exact in 1D (dynamic programs over cell positions)
and for tiny 2D grids (exhaustive search); larger 2D grids are estimated
over a shared deterministic family of candidate packings, which keeps the
per-packing Holder comparison between the functionals valid for the
reported values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, SizeGuardError
from .grid import (
    Cube,
    GridFunction,
    Packing,
    cube_stat_tables,
    cube_sum_tables,
)
from .maximal import DEFAULT_S, FULL_GUARD_1D, FULL_GUARD_2D, local_maximal
from .packing import (
    ENUM_GUARD_2D,
    additive_pareto_1d,
    enumerate_packings,
    max_additive_packing,
)
from .rearrange import rearrange
from .spaces import RISpaceSpec, norm

__all__ = [
    "GaRoEstimate",
    "jn_norm",
    "gp_norm",
    "gamma_membership",
    "garo_norm",
    "garo_p_lambda",
    "campanato_norm",
    "sobolev_seminorm",
    "GARO_EXACT_GUARD_1D",
    "GARO_EXACT_GUARD_2D",
]

GARO_EXACT_GUARD_1D = 16
GARO_EXACT_GUARD_2D = 4


def _require_desk_scale(f: GridFunction) -> None:
    guard = FULL_GUARD_1D if f.dim == 1 else FULL_GUARD_2D
    if f.res > guard:
        raise SizeGuardError(
            f"packing functionals enumerate all cubes; need N <= {guard} for d={f.dim}"
        )


def _cube_at(f: GridFunction, side: int, oidx: int) -> Cube:
    if f.dim == 1:
        return Cube((oidx,), side)
    m = f.res - side + 1
    return Cube((oidx // m, oidx % m), side)


def _conjugate_exponent(p: float) -> float:
    """1/p' = 1 - 1/p; returns the exponent 1/p' used on packing measures."""
    if math.isinf(p):
        return 1.0
    if p <= 1:
        raise ConfigError(f"packing functionals need p > 1, got {p}")
    return 1.0 - 1.0 / p


# ---------------------------------------------------------------------------
# shared 2D candidate packings

def _greedy_packing(order_key: np.ndarray, sides, origins, f: GridFunction):
    n, d = f.res, f.dim
    occupied = np.zeros((n, n) if d == 2 else n, dtype=bool)
    chosen = []
    for idx in np.argsort(-order_key, kind="stable"):
        k, o = sides[idx], origins[idx]
        if d == 1:
            sl = (slice(o, o + k),)
        else:
            m = n - k + 1
            i, j = divmod(o, m)
            sl = (slice(i, i + k), slice(j, j + k))
        if occupied[sl].any():
            continue
        occupied[sl] = True
        chosen.append((k, o))
    return chosen


def _packing_family_2d(f: GridFunction, tables: dict, p: float) -> list:
    """Deterministic candidate packings beyond the exact-small regime:
    the unit-cell partition plus greedy selections under several weight
    orderings.  Single-cube packings are handled separately (vectorized)."""
    sides_arr, origins_arr, osc_arr, do_arr, meas_arr = _flatten_tables(f, tables)
    family = []
    n = f.res
    family.append([(1, o) for o in range(n * n)])  # unit partition
    q = _conjugate_exponent(p)
    pw = p if math.isfinite(p) else 8.0
    keys = [
        osc_arr,
        do_arr,
        np.where(meas_arr > 0, do_arr / meas_arr, 0.0),
        meas_arr * osc_arr**pw,
        np.where(meas_arr > 0, do_arr / meas_arr**q, 0.0),
    ]
    for key in keys:
        family.append(_greedy_packing(key, sides_arr, origins_arr, f))
    return family


def _flatten_tables(f: GridFunction, tables: dict):
    sides, origins, osc, do, meas = [], [], [], [], []
    for k, entry in tables.items():
        cnt = entry["osc"].size
        sides.append(np.full(cnt, k, dtype=int))
        origins.append(np.arange(cnt))
        osc.append(entry["osc"])
        do.append(entry["do"])
        meas.append(np.full(cnt, (k / f.res) ** f.dim))
    cat = lambda xs: np.concatenate(xs)
    return cat(sides), cat(origins), cat(osc), cat(do), cat(meas)


def _packing_stats(packing, tables: dict, f: GridFunction):
    """(sum do, sum measure, per-cube osc array, per-cube measures)."""
    do = meas = 0.0
    oscs, measures = [], []
    for k, o in packing:
        entry = tables[k]
        do += float(entry["do"][o])
        oscs.append(float(entry["osc"][o]))
        m = (k / f.res) ** f.dim
        measures.append(m)
        meas += m
    return do, meas, oscs, measures


# ---------------------------------------------------------------------------
# John-Nirenberg and Garsia-Rodemich packing conditions

def jn_norm(f: GridFunction, p: float) -> float:
    """sup over packings of (sum |Q_i| osc(Q_i)^p)^(1/p).

    Exact in 1D via the additive packing DP and for 2D N <= 4 by exhaustive
    search; estimated over the shared candidate family otherwise.
    """
    if not p > 1:
        raise ConfigError(f"JN functional needs p > 1, got {p}")
    _require_desk_scale(f)
    tables = cube_stat_tables(f, stats=("osc",))
    n = f.res
    if f.dim == 1:
        weights = {
            k: (k / n) * tables[k]["osc"] ** p for k in tables
        }
        _, value = max_additive_packing(weights, (1, n))
        return float(value ** (1.0 / p))
    tables = cube_stat_tables(f, stats=("osc", "do"))
    if n <= ENUM_GUARD_2D:
        def weight(q: Cube) -> float:
            m = n - q.side + 1
            o = q.origin[0] * m + q.origin[1]
            return q.measure(n) * float(tables[q.side]["osc"][o]) ** p
        _, value = max_additive_packing(weight, (2, n))
        return float(value ** (1.0 / p))
    _, _, osc_arr, _, meas_arr = _flatten_tables(f, tables)
    best = float(np.max(meas_arr * osc_arr**p, initial=0.0))
    for packing in _packing_family_2d(f, tables, p):
        _, _, oscs, measures = _packing_stats(packing, tables, f)
        best = max(best, sum(m * osc**p for m, osc in zip(measures, oscs)))
    return float(best ** (1.0 / p))


def gp_norm(f: GridFunction, p: float) -> float:
    """sup over packings of sum_i doubleosc(Q_i) / (sum_i |Q_i|)^(1/p').

    p = inf reduces to the single-cube supremum of doubleosc(Q)/|Q| (the
    ratio is subadditive over packing members when the measure exponent is
    1), which is the BMO-equivalent value up to the sandwich factor 2.
    """
    _require_desk_scale(f)
    tables = cube_stat_tables(f, stats=("osc", "do"))
    _, _, _, do_arr, meas_arr = _flatten_tables(f, tables)
    if math.isinf(p):
        return float(np.max(do_arr / meas_arr, initial=0.0))
    q = _conjugate_exponent(p)
    n = f.res
    if f.dim == 1:
        weights = {k: tables[k]["do"] for k in tables}
        pareto = additive_pareto_1d(weights, (1, n))
        ms = np.arange(1, n + 1)
        vals = pareto[1:]
        ok = np.isfinite(vals)
        return float(np.max(vals[ok] / (ms[ok] / n) ** q, initial=0.0))
    if n <= ENUM_GUARD_2D:
        best = 0.0
        for packing in enumerate_packings((2, n)):
            do = sum(
                float(tables[qc.side]["do"][_oidx(qc, n)]) for qc in packing
            )
            meas = packing.total_measure(n)
            best = max(best, do / meas**q)
        return best
    best = float(np.max(do_arr / meas_arr**q, initial=0.0))
    for packing in _packing_family_2d(f, tables, p):
        do, meas, _, _ = _packing_stats(packing, tables, f)
        if meas > 0:
            best = max(best, do / meas**q)
    return float(best)


def _oidx(q: Cube, n: int) -> int:
    if q.dim == 1:
        return q.origin[0]
    m = n - q.side + 1
    return q.origin[0] * m + q.origin[1]


def gamma_membership(f: GridFunction, gamma: GridFunction):
    """Is gamma an admissible majorant for f: doubleosc(Q) <= int_Q gamma
    for every cube Q?

    Both sides are additive over packing members, so the per-cube check is
    equivalent to the full packing condition.  Returns (member, worst cube,
    slack) where slack = int_Q gamma - doubleosc(Q) at the worst cube.
    """
    if gamma.dim != f.dim or gamma.res != f.res:
        raise ConfigError("gamma must live on the same grid as f")
    _require_desk_scale(f)
    do_tables = cube_stat_tables(f, stats=("do",))
    int_tables = cube_sum_tables(gamma)
    worst_slack = math.inf
    worst = None
    for k in do_tables:
        slack = int_tables[k] - do_tables[k]["do"]
        i = int(np.argmin(slack))
        if slack[i] < worst_slack:
            worst_slack = float(slack[i])
            worst = _cube_at(f, k, i)
    scale = max(1.0, float(np.max(np.abs(f.values))) ** 2)
    return worst_slack >= -1e-12 * scale, worst, worst_slack


@dataclass
class GaRoEstimate:
    """Two-sided information on the Garsia-Rodemich norm.

    upper: 16 * ||local maximal||_X (an admissible majorant route);
    exact: LP optimum, available for X in {L1, Linf} on tiny grids;
    witness_packing: packing certifying the reported lower bound;
    lower: the certified lower bound itself (L1/Linf only).
    """

    upper: float
    exact: float | None = None
    witness_packing: Packing | None = None
    lower: float | None = None
    s_used: float = DEFAULT_S

    def to_json(self) -> dict:
        return {
            "upper": self.upper,
            "exact": self.exact,
            "lower": self.lower,
            "witness_packing": None
            if self.witness_packing is None
            else self.witness_packing.to_json(),
            "s_used": self.s_used,
        }


def _space_kind(space: RISpaceSpec) -> str:
    if space.family == "lp" and space.p == 1:
        return "l1"
    if space.family == "lp" and math.isinf(space.p):
        return "linf"
    return "other"


def _garo_lp(f: GridFunction, kind: str, do_by_cube: list) -> float:
    """min ||gamma||_X s.t. gamma >= 0, int_Q gamma >= doubleosc(Q) for all
    cubes Q; gamma >= 0 w.l.o.g. since |gamma| satisfies the constraints."""
    from scipy.optimize import linprog

    n_cells = f.ncells
    h = f.cell_measure
    rows, rhs = [], []
    for cube, do in do_by_cube:
        if do <= 0:
            continue
        row = np.zeros(n_cells)
        row[cube.flat_cells(f.res)] = -h
        rows.append(row)
        rhs.append(-do)
    if not rows:
        return 0.0
    a_ub = np.array(rows)
    b_ub = np.array(rhs)
    if kind == "l1":
        c = np.full(n_cells, h)
        res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=(0, None), method="highs")
    else:  # linf: epigraph variable z with gamma_x <= z
        c = np.zeros(n_cells + 1)
        c[-1] = 1.0
        a_ub = np.hstack([a_ub, np.zeros((a_ub.shape[0], 1))])
        cap = np.hstack([np.eye(n_cells), -np.ones((n_cells, 1))])
        a_ub = np.vstack([a_ub, cap])
        b_ub = np.concatenate([b_ub, np.zeros(n_cells)])
        res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=(0, None), method="highs")
    if not res.success:
        raise ConfigError(f"majorant LP failed: {res.message}")
    return float(res.fun)


def garo_norm(
    f: GridFunction,
    space: RISpaceSpec,
    s: float = DEFAULT_S,
    exact_small: bool = False,
    cube_mode: str = "auto",
) -> GaRoEstimate:
    """Garsia-Rodemich norm estimate for f in X.

    The upper route is 16 * ||M#_s f||_X.  For X in {L1, Linf} a certified
    packing lower bound is attached, and with exact_small on tiny grids
    (1D N <= 16, 2D N <= 4) the exact infimum over admissible majorants is
    computed by linear programming.
    """
    if not 0 < s < 1:
        raise ConfigError(f"s must lie in (0,1), got {s}")
    upper = 16.0 * norm(space, rearrange(local_maximal(f, s, cube_mode)))
    est = GaRoEstimate(upper=upper, s_used=s)
    kind = _space_kind(space)
    desk = f.res <= (FULL_GUARD_1D if f.dim == 1 else FULL_GUARD_2D)
    if kind != "other" and desk:
        tables = cube_stat_tables(f, stats=("do",))
        if kind == "l1":
            weights = (
                {k: tables[k]["do"] for k in tables}
                if f.dim == 1
                else (lambda q: float(tables[q.side]["do"][_oidx(q, f.res)]))
            )
            packing, value = max_additive_packing(weights, (f.dim, f.res))
            est.witness_packing, est.lower = packing, float(value)
        else:
            best, best_cube = 0.0, None
            for k in tables:
                ratio = tables[k]["do"] / (k / f.res) ** f.dim
                i = int(np.argmax(ratio))
                if ratio[i] > best:
                    best, best_cube = float(ratio[i]), _cube_at(f, k, i)
            est.lower = best
            est.witness_packing = Packing([best_cube]) if best_cube else Packing([])
    if exact_small:
        if kind == "other":
            raise ConfigError("exact majorant oracle supports only L1 and Linf")
        guard = GARO_EXACT_GUARD_1D if f.dim == 1 else GARO_EXACT_GUARD_2D
        if f.res > guard:
            raise SizeGuardError(
                f"exact majorant oracle guarded at N <= {guard} for d={f.dim}"
            )
        tables = cube_stat_tables(f, stats=("do",))
        do_by_cube = [
            (_cube_at(f, k, i), float(tables[k]["do"][i]))
            for k in tables
            for i in range(tables[k]["do"].size)
        ]
        est.exact = _garo_lp(f, kind, do_by_cube)
    return est


def garo_p_lambda(f: GridFunction, p: float, lam: float) -> float:
    """sup over packings of sum doubleosc(Q_i) / (sum |Q_i|^(1+lam/d))^(1/p').

    lam = 0 coincides with gp_norm (exact in 1D); p = inf reduces to the
    single-cube supremum.  For finite p with lam < 0 the measure budget is
    no longer integer-valued, so the value is a certified lower bound: the
    best over single cubes, the unit partition, and packings produced by an
    exact Lagrangian sweep on the penalized weights doubleosc - mu * budget.
    """
    d = f.dim
    if not -d < lam <= 0:
        raise ConfigError(f"lambda must lie in (-{d}, 0], got {lam}")
    if lam == 0:
        return gp_norm(f, p)
    _require_desk_scale(f)
    tables = cube_stat_tables(f, stats=("do",))
    n = f.res
    expo = 1.0 + lam / d
    _, _, _, do_arr, meas_arr = _flatten_tables_do(f, tables)
    budget_arr = meas_arr**expo
    if math.isinf(p):
        return float(np.max(do_arr / budget_arr, initial=0.0))
    q = _conjugate_exponent(p)
    best = float(np.max(do_arr / budget_arr**q, initial=0.0))

    def ratio_of(packing) -> float:
        do = sum(float(tables[k]["do"][o]) for k, o in packing)
        budget = sum(((k / n) ** d) ** expo for k, _ in packing)
        return do / budget**q if budget > 0 else 0.0

    unit = [(1, o) for o in range(n**d)]
    best = max(best, ratio_of(unit))
    pos = do_arr[do_arr > 0]
    if pos.size:
        mu_grid = np.geomspace(
            max(float(np.min(pos / budget_arr[do_arr > 0])), 1e-12),
            float(np.max(pos / budget_arr[do_arr > 0])) + 1.0,
            33,
        )
        for mu in mu_grid:
            if d == 1:
                weights = {
                    k: tables[k]["do"] - mu * ((k / n) ** expo) for k in tables
                }
                packing, _ = max_additive_packing(weights, (1, n))
            else:
                def weight(qc: Cube, _mu=mu) -> float:
                    return float(
                        tables[qc.side]["do"][_oidx(qc, n)]
                        - _mu * qc.measure(n) ** expo
                    )
                packing, _ = max_additive_packing(weight, (2, n))
            keys = [(qc.side, _oidx(qc, n)) for qc in packing]
            if keys:
                best = max(best, ratio_of(keys))
    return best


def _flatten_tables_do(f: GridFunction, tables: dict):
    sides, origins, do, meas = [], [], [], []
    for k, entry in tables.items():
        cnt = entry["do"].size
        sides.append(np.full(cnt, k, dtype=int))
        origins.append(np.arange(cnt))
        do.append(entry["do"])
        meas.append(np.full(cnt, (k / f.res) ** f.dim))
    cat = np.concatenate
    return cat(sides), cat(origins), None, cat(do), cat(meas)


def campanato_norm(f: GridFunction, lam: float) -> float:
    """sup over cubes of |Q|^(-lam/d) * osc(Q): the homogeneous Campanato
    seminorm; the lam -> 0 limit is the BMO supremum."""
    d = f.dim
    if not -d < lam <= 0:
        raise ConfigError(f"lambda must lie in (-{d}, 0], got {lam}")
    _require_desk_scale(f)
    tables = cube_stat_tables(f, stats=("osc",))
    best = 0.0
    for k, entry in tables.items():
        meas = (k / f.res) ** d
        best = max(best, float(entry["osc"].max(initial=0.0)) * meas ** (-lam / d))
    return best


def sobolev_seminorm(f: GridFunction, alpha: float, p: float) -> float:
    """Discrete fractional seminorm: the double sum over distinct cell pairs
    of |f(x)-f(y)|^p / dist(x,y)^(d+alpha*p), times h^2, to the 1/p.

    Distances are Euclidean between cell centers.
    """
    if not 0 < alpha < 1:
        raise ConfigError(f"alpha must lie in (0,1), got {alpha}")
    if p < 1:
        raise ConfigError(f"p must be >= 1, got {p}")
    n, d, h = f.res, f.dim, f.cell_measure
    expo = d + alpha * p
    if d == 1:
        idx = np.arange(n)
        dist = np.abs(idx[:, None] - idx[None, :]) / n
        diff = np.abs(f.values[:, None] - f.values[None, :]) ** p
        mask = dist > 0
        total = float(np.sum(diff[mask] / dist[mask] ** expo)) * h * h
        return total ** (1.0 / p)
    v = f.array
    total = 0.0
    for di in range(n):
        js = range(1, n) if di == 0 else range(-(n - 1), n)
        for dj in js:
            a = v[max(0, -di): n - max(0, di) or None, max(0, -dj): n - max(0, dj) or None]
            b = v[max(0, di): n - max(0, -di) or None, max(0, dj): n - max(0, -dj) or None]
            dist = math.hypot(di, dj) / n
            total += 2.0 * float(np.sum(np.abs(a - b) ** p)) / dist**expo
    return (total * h * h) ** (1.0 / p)
