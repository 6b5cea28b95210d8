"""K-functional profiles for (L1, Linf) and (L1, BMO), by four routes.

The (L1, BMO) routes are equivalents of the true K-functional, not the
functional itself, so their raw values need not be monotone in t.  Profiles
therefore report the running maximum of the raw route values: this is the
canonical non-decreasing representative and preserves every equivalence
constant, since the true K-functional is non-decreasing.  The raw ratios
K(t)/t are non-increasing for every route, and remain so after the
correction.

The packing route evaluates F(t) = sup over packings of the rearranged
mean-oscillation step function at t, through a level sweep: F(t) is the
largest oscillation level v for which the maximal total measure of a
disjoint family of cubes with oscillation >= v exceeds t.  Measures are
compared in integer cell counts so the sweep and the exhaustive oracle use
bitwise-identical comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InvariantViolation, SizeGuardError
from .grid import Cube, GridFunction, cube_windows, sides_for
from .maximal import DEFAULT_S, local_maximal, resolve_cube_mode, sharp_maximal
from .packing import ENUM_GUARD_1D, ENUM_GUARD_2D, enumerate_packings, vitali_select
from .rearrange import StepProfile, rearrange

__all__ = [
    "KProfile",
    "k_l1_linf",
    "k_l1_bmo",
    "f_sharp_profile",
    "f_sharp_curve",
    "f_sharp_profile_p",
    "vitali_threshold_estimate",
    "default_t_grid",
    "running_max",
    "equivalence_report",
]

_LEVEL_CAP_2D = 160


def running_max(values: np.ndarray) -> np.ndarray:
    return np.maximum.accumulate(np.asarray(values, dtype=float))


@dataclass(frozen=True, eq=False)
class KProfile:
    """A K-functional profile on a t-grid.

    Invariants (validated): values >= 0, t -> K(t) non-decreasing and
    t -> K(t)/t non-increasing.
    """

    t: np.ndarray
    values: np.ndarray
    method: str

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.size != v.size or t.size == 0:
            raise ConfigError("K profile needs matching nonempty t and values")
        if np.any(t <= 0) or np.any(t > 1) or np.any(np.diff(t) <= 0):
            raise ConfigError("t grid must be increasing inside (0, 1]")
        scale = max(1.0, float(v.max(initial=0.0)))
        if np.any(v < -1e-12 * scale):
            raise InvariantViolation(f"{self.method}: negative K values")
        if np.any(np.diff(v) < -1e-9 * scale):
            raise InvariantViolation(f"{self.method}: K not non-decreasing")
        ratios = v / t
        rscale = max(1.0, float(ratios.max(initial=0.0)))
        if np.any(np.diff(ratios) > 1e-9 * rscale):
            raise InvariantViolation(f"{self.method}: K/t not non-increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", np.maximum(v, 0.0))

    def write_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("t,value,method\n")
            for t, v in zip(self.t, self.values):
                fh.write(f"{t:.17g},{v:.17g},{self.method}\n")


def equivalence_report(profiles: dict, function_id: str) -> list:
    """Pairwise ratio summary of K-profiles sharing a t-grid.

    One entry per method pair: {method_pair, min_ratio, max_ratio, argmax_t,
    function_id}; points where either profile vanishes are skipped.
    """
    names = sorted(profiles)
    out = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            pa, pb = profiles[a], profiles[b]
            if pa.t.size != pb.t.size or np.any(pa.t != pb.t):
                raise ConfigError("equivalence report needs a shared t-grid")
            mask = (pa.values > 0) & (pb.values > 0)
            entry = {
                "method_pair": f"{a}/{b}",
                "min_ratio": None,
                "max_ratio": None,
                "argmax_t": None,
                "function_id": function_id,
            }
            if mask.any():
                ratios = pa.values[mask] / pb.values[mask]
                j = int(np.argmax(ratios))
                entry.update(
                    min_ratio=float(ratios.min()),
                    max_ratio=float(ratios.max()),
                    argmax_t=float(pa.t[mask][j]),
                )
            out.append(entry)
    return out


def default_t_grid(f: GridFunction, cube_mode: str = "auto") -> np.ndarray:
    """Breakpoints of (f#)* joined with a 64-point logarithmic grid."""
    prof = rearrange(sharp_maximal(f, cube_mode))
    lo = max(min(0.5 * f.cell_measure, 0.5), 1e-6)
    grid = np.union1d(prof.breakpoints[1:], np.geomspace(lo, 1.0, 64))
    grid = grid[(grid > 0) & (grid <= 1.0)]
    if grid.size > 4096:
        grid = grid[np.unique(np.linspace(0, grid.size - 1, 4096).astype(int))]
    return grid


def k_l1_linf(f: GridFunction, t_grid=None) -> KProfile:
    """K(t, f; L1, Linf) = int_0^t f*(u) du, exact from the step profile."""
    prof = rearrange(f)
    if t_grid is None:
        t_grid = np.union1d(prof.breakpoints[1:], np.geomspace(1e-4, 1.0, 64))
    t_grid = np.asarray(t_grid, dtype=float)
    return KProfile(t_grid, prof.integral_to(t_grid), "L1Linf")


def _mean_zero(f: GridFunction) -> GridFunction:
    return f.with_values(f.values - f.mean())


def k_l1_bmo(
    f: GridFunction,
    t_grid=None,
    method: str = "BS",
    s: float = DEFAULT_S,
    p: float | None = None,
    cube_mode: str = "auto",
) -> KProfile:
    """K-profile for (L1, BMO) by the chosen route, on mean-zero f.

    BS   -> t * (f#)*(t)
    JT   -> int_0^t (M#_s f)*(u) du
    PACK -> t * F(t) with the packing level sweep
    PACK_P -> t * F_p(t), the L_p variant (needs p in (0,1))
    """
    f0 = _mean_zero(f)
    if t_grid is None:
        t_grid = default_t_grid(f0, cube_mode)
    t_grid = np.asarray(t_grid, dtype=float)
    if method == "BS":
        prof = rearrange(sharp_maximal(f0, cube_mode))
        raw = t_grid * prof.sample(t_grid)
    elif method == "JT":
        prof = rearrange(local_maximal(f0, s, cube_mode))
        raw = prof.integral_to(t_grid)
    elif method == "PACK":
        raw = t_grid * f_sharp_curve(f0, t_grid, cube_mode=cube_mode)
    elif method == "PACK_P":
        if p is None or not 0 < p < 1:
            raise ConfigError("PACK_P needs p in (0,1)")
        raw = t_grid * f_sharp_curve(f0, t_grid, p=p, cube_mode=cube_mode)
        method = f"PACK_P({p:g})"
    else:
        raise ConfigError(f"unknown K method {method!r}")
    return KProfile(t_grid, running_max(raw), method)


# ---------------------------------------------------------------------------
# the packing profile F

class _LevelSweep:
    """Shared state for evaluating F(t) at many t.

    Levels are the distinct per-cube statistics; cells(i) is the maximal
    total cell count of a disjoint subfamily among cubes with statistic >=
    level[i], non-increasing in i.  F(t) = largest level with cells > t*N^d.
    In 1D the count is an exact interval-scheduling DP; 2D grids with
    N <= 4 are searched exhaustively (greedy is not optimal on arbitrary
    cube subsets, nor monotone across nested families), larger 2D grids use
    the greedy selection by size, a certified lower bound.
    """

    def __init__(self, f: GridFunction, stat: np.ndarray, sides_list, dyadic: bool):
        self.n, self.d = f.res, f.dim
        self.dyadic = dyadic
        self.stat = stat  # flat over (side, origin lex)
        self._build_entries(sides_list)
        levels = np.unique(stat[stat > 0])
        if self.d == 2 and levels.size > _LEVEL_CAP_2D and self.n > ENUM_GUARD_2D:
            # keep the exact top levels and the whole-cube statistic (the
            # ||f||_1 witness near t=1), thin the rest uniformly
            top = levels[-32:]
            rest = levels[:-32]
            pick = np.unique(
                np.linspace(0, rest.size - 1, _LEVEL_CAP_2D - 32).astype(int)
            )
            levels = np.union1d(rest[pick], top)
            if stat[-1] > 0:
                levels = np.union1d(levels, [stat[-1]])
        self.levels = levels
        self._cache: dict = {}

    def _build_entries(self, sides_list) -> None:
        n, d = self.n, self.d
        sides, origins = [], []
        for k in sides_list:
            cnt = (n // k) ** d if self.dyadic else (n - k + 1) ** d
            sides.append(np.full(cnt, k, dtype=int))
            origins.append(np.arange(cnt))
        self.sides = np.concatenate(sides)
        self.origins = np.concatenate(origins)
        if d == 1:
            starts = self.origins * (self.sides if self.dyadic else 1)
            by_end = [[] for _ in range(n + 1)]
            for i in range(self.sides.size):
                by_end[int(starts[i]) + int(self.sides[i])].append(
                    (int(starts[i]), int(self.sides[i]), i)
                )
            self.by_end = by_end
        else:
            self.order = np.lexsort((self.origins, -self.sides))

    def cube_at(self, i: int) -> Cube:
        k = int(self.sides[i])
        o = int(self.origins[i])
        if self.d == 1:
            return Cube((o * (k if self.dyadic else 1),), k)
        m_axis = self.n // k if self.dyadic else self.n - k + 1
        r, c = divmod(o, m_axis)
        if self.dyadic:
            r, c = r * k, c * k
        return Cube((r, c), k)

    def cells(self, level_idx: int) -> int:
        if level_idx in self._cache:
            return self._cache[level_idx]
        lam = self.levels[level_idx]
        n, d = self.n, self.d
        if d == 1:
            best = [0] * (n + 1)
            stat = self.stat
            for j in range(1, n + 1):
                b = best[j - 1]
                for start, length, i in self.by_end[j]:
                    if stat[i] >= lam:
                        cand = best[start] + length
                        if cand > b:
                            b = cand
                best[j] = b
            val = best[n]
        elif n <= ENUM_GUARD_2D:
            from .packing import _exact_search

            entries = [
                (self.cube_at(int(i)), float(self.sides[i] ** 2))
                for i in np.nonzero(self.stat >= lam)[0]
            ]
            _, val_f = _exact_search(entries, n)
            val = int(round(val_f))
        else:
            occupied = np.zeros((n, n), dtype=bool)
            val = 0
            stat = self.stat
            for i in self.order:
                if stat[i] < lam:
                    continue
                q = self.cube_at(int(i))
                k = q.side
                sl = (slice(q.origin[0], q.origin[0] + k),
                      slice(q.origin[1], q.origin[1] + k))
                if occupied[sl].any():
                    continue
                occupied[sl] = True
                val += k * k
        self._cache[level_idx] = val
        return val

    def value_at(self, t: float) -> float:
        """Largest level whose maximal packed cell count exceeds t*N^d."""
        if not 0 < t <= 1:
            raise ConfigError("F is defined on (0, 1]")
        threshold = t * self.n**self.d
        if self.levels.size == 0 or self.cells(0) <= threshold:
            return 0.0
        lo, hi = 0, self.levels.size - 1  # predicate cells(i) > thr decreasing
        if self.cells(hi) > threshold:
            return float(self.levels[hi])
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.cells(mid) > threshold:
                lo = mid
            else:
                hi = mid
        return float(self.levels[lo])


def _sweep_for(f: GridFunction, p: float | None, cube_mode: str) -> _LevelSweep:
    dyadic = resolve_cube_mode(f, cube_mode)
    sides_list = sides_for(f.res, dyadic)
    stats = []
    for k in sides_list:
        w = cube_windows(f, k, dyadic)
        mu = w.mean(axis=1)
        dev = np.abs(w - mu[:, None])
        if p is None:
            stats.append(dev.mean(axis=1))
        else:
            stats.append((dev**p).mean(axis=1) ** (1.0 / p))
    return _LevelSweep(f, np.concatenate(stats), sides_list, dyadic)


def _bruteforce_f(f: GridFunction, ts: np.ndarray, p: float | None) -> np.ndarray:
    """Literal sup over every packing of the rearranged step value at t,
    with the cell-count comparisons of the level sweep."""
    n, d = f.res, f.dim
    thresholds = ts * n**d
    best = np.zeros(ts.size)
    for packing in enumerate_packings((d, n)):
        pairs = []
        for q in packing:
            w = f.values[q.flat_cells(n)]
            mu = w.mean()
            dev = np.abs(w - mu)
            stat = dev.mean() if p is None else (dev**p).mean() ** (1.0 / p)
            pairs.append((stat, q.ncells()))
        pairs.sort(reverse=True)
        cum = 0
        for stat, ncells in pairs:
            cum += ncells
            sel = (cum > thresholds) & (stat > best)
            best[sel] = stat
    return best


def f_sharp_curve(
    f: GridFunction,
    t_grid,
    p: float | None = None,
    cube_mode: str = "auto",
) -> np.ndarray:
    """F(t) (or its L_p variant) on a grid of t values."""
    ts = np.asarray(t_grid, dtype=float)
    sweep = _sweep_for(f, p, cube_mode)
    return np.array([sweep.value_at(float(t)) for t in ts])


def f_sharp_profile(
    f: GridFunction,
    t: float,
    exact_small: bool = False,
    cube_mode: str = "auto",
) -> float:
    """The packing profile F(t) = sup over packings of (S_pi)*(t).

    With exact_small the value is cross-checked against the literal brute
    force over every packing (guarded grid sizes); a mismatch raises.
    """
    sweep = _sweep_for(f, None, cube_mode)
    val = sweep.value_at(float(t))
    if exact_small:
        if (f.dim == 1 and f.res > ENUM_GUARD_1D) or (
            f.dim == 2 and f.res > ENUM_GUARD_2D
        ):
            raise SizeGuardError("exact_small cross-check beyond enumeration guard")
        brute = float(_bruteforce_f(f, np.array([float(t)]), None)[0])
        if abs(brute - val) > 1e-9 * max(1.0, abs(brute)):
            raise InvariantViolation(
                f"level sweep {val} != brute force {brute} at t={t}"
            )
    return val


def f_sharp_profile_p(
    f: GridFunction, t: float, p: float, cube_mode: str = "auto"
) -> float:
    """L_p variant of the packing profile, 0 < p < 1: the cube statistic is
    ((1/|Q|) int_Q |f-f_Q|^p)^(1/p)."""
    if not 0 < p < 1:
        raise ConfigError(f"p must lie in (0,1), got {p}")
    sweep = _sweep_for(f, p, cube_mode)
    return sweep.value_at(float(t))


def vitali_threshold_estimate(
    f: GridFunction, t: float, cube_mode: str = "auto"
) -> float:
    """Lower-bound witness for F built from a Vitali selection.

    Threshold at tau = (f#)* evaluated at the dilated point min(5^d t, 1),
    select disjoint cubes among those with oscillation >= tau, and return
    the left-continuous value at t of the selection's rearranged step
    function.  Satisfies (f#)*(5^d t) <= estimate for t <= 5^-d.
    """
    if not 0 < t <= 1:
        raise ConfigError("t must lie in (0, 1]")
    n, d = f.res, f.dim
    prof = rearrange(sharp_maximal(f, cube_mode))
    u = min(5.0**d * t, 1.0)
    tau = prof.value_at(u)
    if tau <= 0:
        return 0.0
    sweep = _sweep_for(f, None, cube_mode)
    keep = np.nonzero(sweep.stat >= tau)[0]
    stat_by_cube = {}
    for i in keep:
        q = sweep.cube_at(int(i))
        stat_by_cube[q] = float(sweep.stat[int(i)])
    packing = vitali_select(list(stat_by_cube), (d, n))
    pairs = sorted(
        ((stat_by_cube[q], q.measure(n)) for q in packing), reverse=True
    )
    widths = [m for _, m in pairs]
    values = [v for v, _ in pairs]
    total = math.fsum(widths)
    if total < 1.0 - 1e-12:
        widths.append(1.0 - total)
        values.append(0.0)
    bp = np.concatenate(([0.0], np.cumsum(widths)))
    bp[-1] = 1.0
    sprof = StepProfile(bp, np.array(values))
    return sprof.value_left(t)
