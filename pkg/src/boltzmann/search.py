"""Root finding for periodic loci, numerical closure checks and plane scans."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cayley import cayley_determinant, cayley_determinants, divisor_contamination
from .errors import AdmissibleSampleNotFound, BoltzmannError, NoSignChange, OutsideRegion
from .kepler import (ParameterTag, SystemParams, WallState, boltzmann_step,
                     classify_parameters, involution_i, make_params, state_from_angle)
from .numeric import Tolerances, get_tolerances


def bisect(f, a: float, b: float, xtol: float = 1e-12, fa=None, fb=None, max_iter: int = 200):
    """Refine a sign change of ``f`` on ``[a, b]`` until ``b - a < xtol``."""
    fa = f(a) if fa is None else fa
    fb = f(b) if fb is None else fb
    if fa == 0:
        return a
    if fb == 0:
        return b
    if (fa > 0) == (fb > 0):
        raise NoSignChange(f"no sign change on [{a}, {b}]")
    for _ in range(max_iter):
        if b - a < xtol:
            break
        m = 0.5 * (a + b)
        if m in (a, b):
            break
        fm = f(m)
        if fm == 0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return 0.5 * (a + b)


@dataclass(frozen=True)
class PeriodicRoot:
    E: float
    D: float
    value: float  # the varied coordinate
    determinant: float
    contaminated_by: tuple  # proper divisors whose condition also vanishes

    @property
    def periodic(self) -> bool:
        return not self.contaminated_by


def _slice_params(fixed: tuple[str, float], t: float) -> SystemParams:
    name, value = fixed
    if name == "E":
        return make_params(float(value), t)
    if name == "D":
        return make_params(t, float(value))
    raise ValueError(f"fixed coordinate must be 'E' or 'D', got {name!r}")


def find_periodic_parameters(n: int, fixed: tuple[str, float], bracket: tuple[float, float],
                             samples: int = 64, xtol: float = 1e-12,
                             zero_tol: float = 1e-8) -> list[PeriodicRoot]:
    """Sign changes of the period-``n`` determinant along a slice of the plane.

    ``fixed = ("D", value)`` varies E over ``bracket`` and vice versa.  Points
    where the parameters are singular or complex break the scan.
    """
    lo, hi = (float(v) for v in bracket)
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")

    def f(t):
        return float(cayley_determinant(_slice_params(fixed, t), n))

    grid = np.linspace(lo, hi, max(samples, 2))
    values = []
    for t in grid:
        try:
            values.append(f(float(t)))
        except BoltzmannError:
            values.append(None)
    candidates = []
    for k in range(len(grid) - 1):
        a, b, fa, fb = float(grid[k]), float(grid[k + 1]), values[k], values[k + 1]
        if fa is None or fb is None:
            continue
        if fa == 0:
            candidates.append(a)
        elif fb != 0 and (fa > 0) != (fb > 0):
            candidates.append(bisect(f, a, b, xtol, fa, fb))
    if values[-1] == 0:
        candidates.append(float(grid[-1]))
    roots = []
    for root in candidates:
        p = _slice_params(fixed, root)
        roots.append(PeriodicRoot(float(p.E), float(p.D), root, f(root),
                                  tuple(divisor_contamination(p, n, zero_tol))))
    if not roots:
        raise NoSignChange(f"period-{n} determinant has no sign change on {bracket}")
    return roots


def sample_states(p: SystemParams, count: int, seed: int,
                  max_attempts: int | None = None,
                  tol: Tolerances | None = None) -> list[WallState]:
    """Random admissible states: uniform angle on the LRL circle, random crossing."""
    rng = np.random.default_rng(seed)
    pf = p.as_float()
    budget = max_attempts if max_attempts is not None else 1000 * max(count, 1)
    states = []
    for _ in range(budget):
        if len(states) == count:
            break
        theta = rng.uniform(0.0, 2 * math.pi)
        branch = int(rng.integers(0, 2))
        s = state_from_angle(pf, theta, branch, tol)
        if s is None:
            continue
        try:
            involution_i(s, pf, tol)
        except BoltzmannError:
            continue
        states.append(s)
    if len(states) < count:
        raise AdmissibleSampleNotFound(
            f"found {len(states)} of {count} admissible states after {budget} attempts")
    return states


@dataclass
class ClosureReport:
    n: int
    E: float
    D: float
    seed: int
    eps_close: float
    eps_divisor: float
    starts: list = field(default_factory=list)
    closure_distances: list = field(default_factory=list)
    # k -> distances after k steps, for every 1 <= k < n
    partial_distances: dict = field(default_factory=dict)

    @property
    def proper_divisors(self) -> list[int]:
        return [k for k in range(1, self.n) if self.n % k == 0]

    @property
    def max_closure_distance(self) -> float:
        return max(self.closure_distances, default=math.inf)

    @property
    def min_divisor_distance(self) -> float:
        return min((d for k in self.proper_divisors for d in self.partial_distances[k]),
                   default=math.inf)

    @property
    def min_partial_distance(self) -> float:
        return min((d for ds in self.partial_distances.values() for d in ds), default=math.inf)

    @property
    def verdict(self) -> str:
        closes = all(d < self.eps_close for d in self.closure_distances)
        return "Periodic" if closes and self.min_divisor_distance > self.eps_divisor else "NotPeriodic"

    @property
    def periodic(self) -> bool:
        return self.verdict == "Periodic"

    def to_dict(self) -> dict:
        return {
            "n": self.n, "E": self.E, "D": self.D, "seed": self.seed,
            "eps_close": self.eps_close, "eps_divisor": self.eps_divisor,
            "starts": [list(map(float, s.as_tuple())) for s in self.starts],
            "closure_distances": self.closure_distances,
            "partial_distances": {str(k): v for k, v in sorted(self.partial_distances.items())},
            "max_closure_distance": self.max_closure_distance,
            # null when n has no proper divisor (n = 1)
            "min_divisor_distance": (None if math.isinf(self.min_divisor_distance)
                                     else self.min_divisor_distance),
            "verdict": self.verdict,
        }


def verify_poncelet(p: SystemParams, n: int, num_starts: int = 20, seed: int = 0,
                    tol: Tolerances | None = None) -> ClosureReport:
    """Iterate ``n`` steps from ``num_starts`` random states and measure closure."""
    if n < 1:
        raise ValueError("n must be positive")
    t = get_tolerances(tol)
    p.require_regular(tol)
    if classify_parameters(p, tol).tag is ParameterTag.OUTSIDE_REGION:
        raise OutsideRegion(f"(E, D) = ({p.E}, {p.D}) is outside the bounded-motion region")
    pf = p.as_float()
    report = ClosureReport(n, float(p.E), float(p.D), seed, t.eps_close, t.eps_divisor)
    report.partial_distances = {k: [] for k in range(1, n)}
    for s0 in sample_states(pf, num_starts, seed, tol=tol):
        s = s0
        for k in range(1, n + 1):
            s = boltzmann_step(s, pf, tol)
            d = s.distance(s0)
            if k < n:
                report.partial_distances[k].append(d)
        report.starts.append(s0)
        report.closure_distances.append(d)
    return report


@dataclass(frozen=True)
class ScanGrid:
    e_range: tuple[float, float]
    d_range: tuple[float, float]
    e_resolution: int
    d_resolution: int

    def __post_init__(self):
        for lo, hi in (self.e_range, self.d_range):
            if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
                raise ValueError("ranges must be finite with lo <= hi")
        if self.e_resolution < 2 or self.d_resolution < 2:
            raise ValueError("resolution must be at least 2 per axis")

    def e_values(self) -> np.ndarray:
        return np.linspace(*self.e_range, self.e_resolution)

    def d_values(self) -> np.ndarray:
        return np.linspace(*self.d_range, self.d_resolution)

    def cells(self):
        for i, E in enumerate(self.e_values()):
            for j, D in enumerate(self.d_values()):
                yield i, j, float(E), float(D)

    def mask(self) -> np.ndarray:
        """True where the cell is admissible (region interior or its singular curves)."""
        out = np.zeros((self.e_resolution, self.d_resolution), dtype=bool)
        for i, j, E, D in self.cells():
            out[i, j] = classify_parameters(make_params(E, D)).tag is not ParameterTag.OUTSIDE_REGION
        return out


@dataclass
class ScanRow:
    i: int
    j: int
    E: float
    D: float
    tag: ParameterTag
    determinants: dict  # n -> float, or None for singular cells
    flags: list = field(default_factory=list)

    @property
    def in_region(self) -> bool:
        return self.tag is not ParameterTag.OUTSIDE_REGION


def _scan_cell(args) -> ScanRow:
    i, j, E, D, n_max, zero_tol = args
    p = make_params(E, D)
    tag = classify_parameters(p).tag
    row = ScanRow(i, j, E, D, tag, {n: None for n in range(3, n_max + 1)})
    if tag is ParameterTag.REGULAR_INTERIOR:
        dets = cayley_determinants(p, n_max)
        row.determinants = {n: float(v) for n, v in dets.items()}
        row.flags += [f"zero{n}" for n, v in row.determinants.items() if abs(v) < zero_tol]
    elif tag.is_boundary:
        row.flags.append("singular")
    return row


def scan_periodicity(grid: ScanGrid, n_max: int, zero_tol: float = 1e-9,
                     include_outside: bool = False, workers: int | None = None) -> list[ScanRow]:
    """Signed determinants for ``n = 3..n_max`` on every grid cell.

    Flags: ``zeroN`` where ``|det_N| < zero_tol``, ``signN`` where det_N changes
    sign towards the next cell in E or D (a zero curve crosses), ``singular``
    on the boundary curves.  Rows are ordered by cell index regardless of
    ``workers``.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    jobs = [(i, j, E, D, n_max, zero_tol) for i, j, E, D in grid.cells()]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_scan_cell, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        rows = [_scan_cell(job) for job in jobs]
    by_index = {(r.i, r.j): r for r in rows}
    for r in rows:
        if r.tag is not ParameterTag.REGULAR_INTERIOR:
            continue
        for di, dj in ((1, 0), (0, 1)):
            other = by_index.get((r.i + di, r.j + dj))
            if other is None or other.tag is not ParameterTag.REGULAR_INTERIOR:
                continue
            for n, v in r.determinants.items():
                w = other.determinants[n]
                if (v > 0) != (w > 0) and f"sign{n}" not in r.flags:
                    r.flags.append(f"sign{n}")
    if include_outside:
        return rows
    return [r for r in rows if r.in_region]
