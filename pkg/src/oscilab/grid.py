"""Grid discretization of the unit cube: grid functions, subcubes, packings.

Everything downstream works on cell-constant functions over a uniform grid
on Q0 = [0,1]^d with d in {1,2} and total measure normalized to 1.  Cubes are
axis-aligned, grid-aligned subcubes addressed by an origin cell index vector
and a side length in cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ConfigError, GeometryError

__all__ = [
    "GridFunction",
    "Cube",
    "Packing",
    "cube_mean",
    "mean_oscillation",
    "double_oscillation",
    "enumerate_cubes",
    "cubes_containing",
    "sides_for",
    "cube_windows",
    "cube_stat_tables",
    "cube_sum_tables",
    "read_grid_csv",
    "write_grid_csv",
]

CSV_HEADER_PREFIX = "# oscilab"


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Cell-constant real function on the uniform N^d grid over [0,1]^d.

    ``values`` is flat, row-major (for d=2 cell (i,j) sits at index i*N+j).
    """

    dim: int
    res: int
    values: np.ndarray

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ConfigError(f"dim must be 1 or 2, got {self.dim}")
        if self.res < 1:
            raise ConfigError(f"res must be >= 1, got {self.res}")
        vals = np.asarray(self.values, dtype=float).ravel()
        if vals.size != self.res**self.dim:
            raise ConfigError(
                f"expected {self.res ** self.dim} values, got {vals.size}"
            )
        if not np.all(np.isfinite(vals)):
            raise ConfigError("grid values must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def cell_measure(self) -> float:
        return float(self.res) ** (-self.dim)

    @property
    def ncells(self) -> int:
        return self.res**self.dim

    @property
    def array(self) -> np.ndarray:
        """Values shaped (N,) for d=1 or (N,N) for d=2 (view)."""
        if self.dim == 1:
            return self.values
        return self.values.reshape(self.res, self.res)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.dim, self.res, values)

    def mean(self) -> float:
        return math.fsum(self.values) / self.ncells


@dataclass(frozen=True, order=True)
class Cube:
    """Axis-aligned grid-aligned subcube: origin cell indices + side in cells."""

    side: int = field()
    origin: tuple = field()

    def __init__(self, origin: Sequence[int], side: int):
        object.__setattr__(self, "origin", tuple(int(o) for o in origin))
        object.__setattr__(self, "side", int(side))
        if self.side < 1:
            raise GeometryError(f"cube side must be >= 1, got {side}")
        if any(o < 0 for o in self.origin):
            raise GeometryError(f"cube origin must be nonnegative, got {origin}")

    @property
    def dim(self) -> int:
        return len(self.origin)

    def check(self, f_or_res, dim: int | None = None) -> None:
        """Raise GeometryError unless the cube fits the given grid."""
        if isinstance(f_or_res, GridFunction):
            res, dim = f_or_res.res, f_or_res.dim
        else:
            res = int(f_or_res)
        if dim is not None and self.dim != dim:
            raise GeometryError(f"cube dim {self.dim} != grid dim {dim}")
        if any(o + self.side > res for o in self.origin):
            raise GeometryError(f"cube {self} exceeds grid of {res} cells per axis")

    def ncells(self) -> int:
        return self.side**self.dim

    def measure(self, res: int) -> float:
        return (self.side / res) ** self.dim

    def flat_cells(self, res: int) -> np.ndarray:
        """Flat row-major indices of the covered cells."""
        if self.dim == 1:
            return np.arange(self.origin[0], self.origin[0] + self.side)
        rows = np.arange(self.origin[0], self.origin[0] + self.side)
        cols = np.arange(self.origin[1], self.origin[1] + self.side)
        return (rows[:, None] * res + cols[None, :]).ravel()

    def contains_cell(self, x: Sequence[int]) -> bool:
        xs = tuple(int(v) for v in x)
        if len(xs) != self.dim:
            raise GeometryError("cell index dimension mismatch")
        return all(o <= v < o + self.side for o, v in zip(self.origin, xs))

    def to_json(self) -> dict:
        return {"origin": list(self.origin), "side": self.side}


@dataclass
class Packing:
    """Finite family of cubes with pairwise-disjoint cell sets."""

    cubes: list

    def __init__(self, cubes: Iterable[Cube], res: int | None = None):
        self.cubes = list(cubes)
        if res is not None:
            self.validate(res)

    def validate(self, res: int) -> None:
        seen = set()
        for q in self.cubes:
            q.check(res)
            cells = q.flat_cells(res)
            for c in cells.tolist():
                if c in seen:
                    raise GeometryError("packing cubes overlap")
                seen.add(c)

    def total_measure(self, res: int) -> float:
        return math.fsum(q.measure(res) for q in self.cubes)

    def total_cells(self) -> int:
        return sum(q.ncells() for q in self.cubes)

    def __len__(self) -> int:
        return len(self.cubes)

    def __iter__(self):
        return iter(self.cubes)

    def to_json(self) -> list:
        return [q.to_json() for q in self.cubes]


# ---------------------------------------------------------------------------
# single-cube integrals (compensated summation, canonical cell order)

def _cube_values(f: GridFunction, q: Cube) -> np.ndarray:
    q.check(f)
    return f.values[q.flat_cells(f.res)]


def cube_mean(f: GridFunction, q: Cube) -> float:
    """Average of f over the cube, (1/|Q|) * integral of f."""
    vals = _cube_values(f, q)
    return math.fsum(vals.tolist()) / vals.size


def mean_oscillation(f: GridFunction, q: Cube) -> float:
    """Mean deviation from the cube average, (1/|Q|) * integral |f - f_Q|."""
    vals = _cube_values(f, q)
    mu = math.fsum(vals.tolist()) / vals.size
    return math.fsum(abs(v - mu) for v in vals.tolist()) / vals.size


def double_oscillation(f: GridFunction, q: Cube) -> float:
    """Normalized double integral (1/|Q|) * iint_{QxQ} |f(x)-f(y)| dx dy.

    Computed from the sorted cube values: the full double sum over ordered
    cell pairs equals 2 * sum_i (2i-1-m) v_(i).  Always sits between
    |Q|*osc(Q) and 2*|Q|*osc(Q).
    """
    vals = np.sort(_cube_values(f, q))
    m = vals.size
    coef = 2.0 * (2.0 * np.arange(1, m + 1) - 1.0 - m)
    pair_sum = math.fsum((coef * vals).tolist())
    h = f.cell_measure
    return h * pair_sum / m


# ---------------------------------------------------------------------------
# cube enumeration

def _check_grid(grid) -> tuple:
    d, n = grid
    d, n = int(d), int(n)
    if d not in (1, 2):
        raise ConfigError(f"dim must be 1 or 2, got {d}")
    if n < 1:
        raise ConfigError(f"N must be >= 1, got {n}")
    return d, n


def sides_for(res: int, dyadic_only: bool = False) -> list:
    """Candidate cube sides, ascending.  Dyadic mode needs N a power of two."""
    if not dyadic_only:
        return list(range(1, res + 1))
    if res & (res - 1) != 0:
        raise ConfigError(f"dyadic cubes need N a power of two, got N={res}")
    sides = []
    k = 1
    while k <= res:
        sides.append(k)
        k *= 2
    return sides


def enumerate_cubes(grid, dyadic_only: bool = False) -> list:
    """All grid-aligned subcubes in canonical order (side, then origin lex).

    Full mode counts N(N+1)/2 cubes in 1D and sum_k (N-k+1)^2 in 2D.
    """
    d, n = _check_grid(grid)
    out = []
    for k in sides_for(n, dyadic_only):
        step = k if dyadic_only else 1
        origins = range(0, n - k + 1, step)
        if d == 1:
            out.extend(Cube((o,), k) for o in origins)
        else:
            out.extend(Cube((i, j), k) for i in origins for j in origins)
    return out


def cubes_containing(grid, x: Sequence[int], dyadic_only: bool = False) -> list:
    """All cubes whose cell set contains the cell index vector x."""
    d, n = _check_grid(grid)
    xs = tuple(int(v) for v in (x if isinstance(x, (tuple, list, np.ndarray)) else (x,)))
    if len(xs) != d:
        raise GeometryError(f"expected {d} cell indices, got {xs}")
    if any(not 0 <= v < n for v in xs):
        raise GeometryError(f"cell index {xs} out of range for N={n}")
    out = []
    for k in sides_for(n, dyadic_only):
        step = k if dyadic_only else 1
        ranges = []
        for v in xs:
            lo = max(0, v - k + 1)
            hi = min(v, n - k)
            valid = [o for o in range(lo, hi + 1) if o % step == 0]
            ranges.append(valid)
        if d == 1:
            out.extend(Cube((o,), k) for o in ranges[0])
        else:
            out.extend(Cube((i, j), k) for i in ranges[0] for j in ranges[1])
    return out


# ---------------------------------------------------------------------------
# vectorized per-side tables (shared by maximal operators and functionals)

def cube_windows(f: GridFunction, side: int, dyadic: bool = False) -> np.ndarray:
    """Cell values of every cube of the given side, one row per origin.

    Rows follow origin lexicographic order, matching enumerate_cubes within
    the side.  Shape (n_origins, side**d).
    """
    n, k = f.res, side
    if k > n:
        raise GeometryError(f"side {k} exceeds grid {n}")
    if f.dim == 1:
        if dyadic:
            return f.values.reshape(n // k, k)
        return sliding_window_view(f.values, k)
    v = f.array
    if dyadic:
        m = n // k
        return v.reshape(m, k, m, k).transpose(0, 2, 1, 3).reshape(m * m, k * k)
    w = sliding_window_view(v, (k, k))
    m = n - k + 1
    return w.reshape(m * m, k * k)


def cube_stat_tables(
    f: GridFunction,
    stats: Sequence[str] = ("mean", "osc"),
    dyadic: bool = False,
    sides: Sequence[int] | None = None,
) -> dict:
    """Per-origin cube statistics for every side.

    Returns {side: {stat: 1d array over origins (lex order)}} with stats from
    {"mean", "osc", "do"}.  "do" is the normalized double oscillation as in
    double_oscillation.
    """
    h = f.cell_measure
    out = {}
    side_list = sides_for(f.res, dyadic) if sides is None else list(sides)
    for k in side_list:
        w = cube_windows(f, k, dyadic)
        m = w.shape[1]
        entry = {}
        mu = w.mean(axis=1)
        if "mean" in stats:
            entry["mean"] = mu
        if "osc" in stats:
            entry["osc"] = np.abs(w - mu[:, None]).mean(axis=1)
        if "do" in stats:
            ws = np.sort(w, axis=1)
            coef = 2.0 * (2.0 * np.arange(1, m + 1) - 1.0 - m)
            entry["do"] = (ws @ coef) * h / m
        out[k] = entry
    return out


def cube_sum_tables(
    f: GridFunction, dyadic: bool = False, sides: Sequence[int] | None = None
) -> dict:
    """Per-origin integrals of f over cubes: {side: sum of cell values * h}."""
    h = f.cell_measure
    out = {}
    side_list = sides_for(f.res, dyadic) if sides is None else list(sides)
    for k in side_list:
        w = cube_windows(f, k, dyadic)
        out[k] = w.sum(axis=1) * h
    return out


# ---------------------------------------------------------------------------
# CSV ingestion

def write_grid_csv(f: GridFunction, path) -> None:
    """Grid file format: header line, then one value per line (1D) or
    N comma-separated rows (2D)."""
    with open(path, "w") as fh:
        fh.write(f"{CSV_HEADER_PREFIX} d={f.dim} N={f.res}\n")
        if f.dim == 1:
            for v in f.values:
                fh.write(f"{v:.17g}\n")
        else:
            for row in f.array:
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def read_grid_csv(path) -> GridFunction:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith(CSV_HEADER_PREFIX):
            raise ConfigError(
                f"missing grid header '{CSV_HEADER_PREFIX} d=<d> N=<N>' in {path}"
            )
        fields = dict(
            tok.split("=") for tok in header[len(CSV_HEADER_PREFIX):].split()
        )
        try:
            d, n = int(fields["d"]), int(fields["N"])
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"malformed grid header: {header!r}") from exc
        rows = [line.strip() for line in fh if line.strip()]
    if d == 1:
        vals = np.array([float(r) for r in rows])
    else:
        vals = np.array([[float(tok) for tok in r.split(",")] for r in rows]).ravel()
    return GridFunction(d, n, vals)
