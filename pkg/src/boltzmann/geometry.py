"""Caustics, tangency points, the focal property and singular level sets."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import numeric
from .errors import (DegenerateTangencyGeometry, NotSingular, OutsideRegion,
                     PreconditionViolated)
from .kepler import (ParameterTag, SystemParams, WallState, arc_angles,
                     boltzmann_step, classify_parameters, involution_i,
                     make_params, refine_state)
from .numeric import Tolerances, get_tolerances

FOCUS_POINT = (0.0, 2.0)  # mirror image of the centre in the wall


class ConicKind(enum.Enum):
    ELLIPSE = "Ellipse"
    HYPERBOLA = "Hyperbola"
    PARABOLA = "Parabola"
    DEGENERATE_SEGMENT = "DegenerateSegment"
    DEGENERATE_POINT_PAIR = "DegeneratePointPair"
    DEGENERATE_LINE = "DegenerateLine"


@dataclass(frozen=True)
class ConicSection:
    """Axis-aligned conic ``x^2/h + (y - c)^2/v = 1`` with signed squared semi-axes."""

    kind: ConicKind
    center: tuple
    semi_axis_horizontal_sq: object
    semi_axis_vertical_sq: object
    foci: tuple

    def _floats(self):
        cx, cy = (float(c) for c in self.center)
        return cx, cy, float(self.semi_axis_horizontal_sq), float(self.semi_axis_vertical_sq)

    def residual(self, point) -> float:
        """Zero on the conic.  Implicit-equation residual for proper conics,
        Euclidean distance for the degenerate kinds."""
        x, y = (float(c) for c in point)
        cx, cy, h, v = self._floats()
        if self.kind is ConicKind.DEGENERATE_POINT_PAIR:
            return min(math.hypot(x - float(fx), y - float(fy)) for fx, fy in self.foci)
        if self.kind is ConicKind.DEGENERATE_LINE:
            return abs(y - cy)
        if self.kind is ConicKind.DEGENERATE_SEGMENT:
            (ax, ay), (bx, by) = ((float(a), float(b)) for a, b in self.foci)
            dx, dy = bx - ax, by - ay
            t = min(1.0, max(0.0, ((x - ax) * dx + (y - ay) * dy) / (dx * dx + dy * dy)))
            return math.hypot(x - ax - t * dx, y - ay - t * dy)
        return (x - cx) ** 2 / h + (y - cy) ** 2 / v - 1.0

    def gradient(self, point):
        if self.kind not in (ConicKind.ELLIPSE, ConicKind.HYPERBOLA):
            return None
        x, y = (float(c) for c in point)
        cx, cy, h, v = self._floats()
        return (2 * (x - cx) / h, 2 * (y - cy) / v)

    def sample(self, n: int = 256, extent: float = 10.0) -> list[np.ndarray]:
        """Polylines for drawing; hyperbolas are clipped to ``|t| <= extent``."""
        cx, cy, h, v = self._floats()
        if self.kind is ConicKind.ELLIPSE:
            t = np.linspace(0.0, 2 * math.pi, n)
            return [np.column_stack((cx + math.sqrt(h) * np.cos(t), cy + math.sqrt(v) * np.sin(t)))]
        if self.kind is ConicKind.HYPERBOLA:
            a, b = math.sqrt(v), math.sqrt(-h)
            tmax = math.asinh(extent / b)
            t = np.linspace(-tmax, tmax, n)
            return [np.column_stack((cx + b * np.sinh(t), cy + sgn * a * np.cosh(t)))
                    for sgn in (1.0, -1.0)]
        if self.kind in (ConicKind.DEGENERATE_POINT_PAIR, ConicKind.DEGENERATE_SEGMENT):
            return [np.array([[float(a), float(b)] for a, b in self.foci])]
        if self.kind is ConicKind.DEGENERATE_LINE:
            return [np.array([[cx - extent, cy], [cx + extent, cy]])]
        return []


def _confocal_kind(h, v, eps) -> ConicKind:
    if numeric.is_zero(v, eps):
        return ConicKind.DEGENERATE_LINE
    if numeric.is_zero(h, eps):
        return ConicKind.DEGENERATE_POINT_PAIR
    return ConicKind.ELLIPSE if h > 0 else ConicKind.HYPERBOLA


def caustic(p: SystemParams, branch: int, tol: Tolerances | None = None) -> ConicSection:
    if p.E >= 0:
        raise OutsideRegion(f"E = {p.E} >= 0: caustics are only defined for bounded motion")
    if p.R is None:
        raise OutsideRegion(f"1+2DE+4E^2 = {p.r_squared} < 0")
    a = (p.R + branch) / (2 * p.E)
    v = a * a
    h = v - 1
    kind = _confocal_kind(h, v, get_tolerances(tol).eps_degenerate)
    return ConicSection(kind, (0, 1), h, v, ((0, 0), (0, 2)))


def caustics(p: SystemParams, tol: Tolerances | None = None) -> tuple[ConicSection, ConicSection]:
    """The two conics with foci (0,0), (0,2) touched by every arc at ``(E, D)``.

    Returned as ``(E+, E-)``, using ``(R + 1)/(2E)`` and ``(R - 1)/(2E)`` with
    ``R >= 0``.
    """
    return caustic(p, +1, tol), caustic(p, -1, tol)


@dataclass(frozen=True)
class TangencyData:
    branch: int
    point: tuple
    alpha: float
    slope: float | None  # None for a vertical tangent
    direction: tuple  # unit tangent vector
    line: tuple  # (a, b, c) of a*x1 + b*x2 = c
    kepler_residual: float
    caustic_residual: float
    alignment: float | None  # |sin| of the angle between the two normals
    collinearity: float


def _kepler_value_and_gradient(D, A1, A2, x1, x2):
    w = D + 2 * A2 - A1 * x1 - A2 * x2
    return x1 * x1 + x2 * x2 - w * w, (2 * x1 + 2 * w * A1, 2 * x2 + 2 * w * A2)


def _unit(v):
    n = math.hypot(*v)
    return (v[0] / n, v[1] / n) if n > 0 else (0.0, 0.0)


def tangency(p: SystemParams, s: WallState, branch: int,
             tol: Tolerances | None = None, conic: ConicSection | None = None) -> TangencyData:
    """Tangency point of the arc's Kepler conic with the caustic ``E+`` (branch=+1)
    or ``E-`` (branch=-1), with residual diagnostics."""
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    conic = conic or caustic(p, branch, tol)
    E, D, R = float(p.E), float(p.D), float(p.R)
    A1, A2 = float(s.A1), float(s.A2)
    Rs = R + branch
    gap = 4 * E * E - Rs * Rs
    den_alpha = 2 * E * R * R * gap - 8 * A1 * A1 * E ** 3
    scale = abs(2 * E * R * R * gap) + abs(8 * A1 * A1 * E ** 3)
    if abs(den_alpha) <= 1e-14 * max(scale, 1.0):
        raise DegenerateTangencyGeometry(
            f"tangency denominator vanishes for branch {branch:+d} at {s}")
    alpha = gap * (R * Rs - 2 * E * (A2 - 2 * E)) / den_alpha
    B = (A1 * alpha, 2 + (A2 - 2 * E) * alpha)

    num_m = A1 * Rs * (2 * E * (A2 - 2 * E) - Rs * R)
    den_m = 2 * A1 * A1 * E * Rs - R * (A2 - 2 * E) * gap
    kres, kgrad = _kepler_value_and_gradient(D, A1, A2, *B)
    if num_m == 0 and den_m == 0:
        direction = _unit((-kgrad[1], kgrad[0]))
    else:
        direction = _unit((den_m, num_m))
    slope = None if den_m == 0 else num_m / den_m

    cgrad = conic.gradient(B)
    alignment = None
    if cgrad is not None:
        u, w = _unit(kgrad), _unit(cgrad)
        alignment = abs(u[0] * w[1] - u[1] * w[0])

    F2 = (A1 / E, A2 / E)
    fx, fy = FOCUS_POINT
    collinearity = abs((B[0] - fx) * (F2[1] - fy) - (B[1] - fy) * (F2[0] - fx))
    line = (2 * E - A2, A1, 2 * A1)
    return TangencyData(branch, B, alpha, slope, direction, line, kres,
                        conic.residual(B), alignment, collinearity)


@dataclass
class CausticReport:
    params: SystemParams
    steps: int
    records: list = field(default_factory=list)  # (arc index, TangencyData)

    @property
    def max_kepler_residual(self) -> float:
        return max((abs(r.kepler_residual) for _, r in self.records), default=0.0)

    @property
    def max_caustic_residual(self) -> float:
        return max((abs(r.caustic_residual) for _, r in self.records), default=0.0)

    @property
    def max_alignment(self) -> float:
        return max((r.alignment for _, r in self.records if r.alignment is not None), default=0.0)

    @property
    def max_collinearity(self) -> float:
        return max((r.collinearity for _, r in self.records), default=0.0)

    def passed(self, tangency_tol: float = 1e-8, collinear_tol: float = 1e-10) -> bool:
        return (self.max_kepler_residual < tangency_tol
                and self.max_caustic_residual < tangency_tol
                and self.max_alignment < tangency_tol
                and self.max_collinearity < collinear_tol)


def verify_caustic_along_orbit(p: SystemParams, s0: WallState, steps: int,
                               tol: Tolerances | None = None) -> CausticReport:
    """Tangency of every arc of the orbit to both caustics (two records per arc)."""
    p.require_regular(tol)
    conics = caustics(p, tol)
    report = CausticReport(p, steps)
    s = s0
    for k in range(steps):
        for branch, conic in zip((1, -1), conics):
            report.records.append((k, tangency(p, s, branch, tol, conic)))
        s = boltzmann_step(s, p, tol)
    return report


@dataclass
class FocalReport:
    E: float
    steps: int
    focus_distances: list  # distance from F(0,2) to each arc
    focus_heights: list  # x2-coordinate of each arc's second focus
    height_increments: list  # consecutive differences, computed in extended precision
    a1_abs: list
    bound: float  # top of the circle of second foci, 2 + R/|E|
    final_state: tuple

    @property
    def max_focus_distance(self) -> float:
        return max(self.focus_distances, default=0.0)

    @property
    def strictly_increasing(self) -> bool:
        return all(d > 0 for d in self.height_increments)

    @property
    def bounded(self) -> bool:
        return all(h <= self.bound for h in self.focus_heights)

    def a1_tail_monotone(self, tail: int | None = None) -> bool:
        seq = self.a1_abs[-(tail or max(2, len(self.a1_abs) // 2)):]
        return all(b < a for a, b in zip(seq, seq[1:]))


def _distance_to_focus_point(p: SystemParams, s: WallState, s_end: WallState) -> float:
    """Distance from F(0,2) to the arc leaving ``s`` and landing at ``s_end``."""
    l2 = p.D + 2 * s.A2
    t0, t1 = arc_angles(float(s.x), float(s_end.x))
    lo, hi = min(t0, t1), max(t0, t1)
    if lo <= math.pi / 2 <= hi:
        r = l2 / (1 + s.A2)  # conic radius along the positive x2-axis
        return abs(float(r - 2))
    theta = np.linspace(lo, hi, 513)
    A1, A2, L2 = float(s.A1), float(s.A2), float(l2)
    rr = L2 / (1 + A1 * np.cos(theta) + A2 * np.sin(theta))
    return float(np.min(np.hypot(rr * np.cos(theta), rr * np.sin(theta) - 2.0)))


def focal_property_run(E, s0: WallState, steps: int, dps: int | None = None,
                       tol: Tolerances | None = None) -> FocalReport:
    """Follow a trajectory at ``D = 2`` whose arcs pass through F(0,2).

    Those trajectories lie on the separatrix of the vertical bouncing orbit,
    which is hyperbolic: double precision round-off is amplified every step,
    so the run is carried out with ``dps`` significant digits (default
    ``30 + 2*steps``).
    """
    E_f = float(E)
    if not -0.5 < E_f < 0:
        raise PreconditionViolated(f"E = {E} must lie in (-1/2, 0)")
    t = get_tolerances(tol)
    with mpmath.workdps(dps or 30 + 2 * steps):
        p = make_params(numeric.to_mpf(E), mpmath.mpf(2))
        s = refine_state(s0, p)
        start = involution_i(s, p, tol)
        if _distance_to_focus_point(p, s, start) > t.eps_tangency:
            raise PreconditionViolated("the initial arc does not pass through F(0,2)")
        distances, heights, a1 = [], [], []
        prev_height = None
        increments = []
        for _ in range(steps):
            s_end = involution_i(s, p, tol)
            distances.append(_distance_to_focus_point(p, s, s_end))
            h = s.A2 / p.E
            if prev_height is not None:
                increments.append(float(h - prev_height))
            prev_height = h
            heights.append(float(h))
            a1.append(float(abs(s.A1)))
            s = boltzmann_step(s, p, tol)
        bound = float(2 + p.R / abs(p.E))
        final = tuple(float(v) for v in s.as_tuple())
    return FocalReport(E_f, steps, distances, heights, increments, a1, bound, final)


@dataclass(frozen=True)
class SingularOrbit:
    """Closed orbit (and separatrix flag) of a singular level set."""

    tag: ParameterTag
    detail: str
    orbit_kind: str  # "wall-segment", "ellipse" or "axis-segment"
    endpoints: tuple | None
    conic: ConicSection | None
    separatrix: bool
    periodic_state: WallState | None
    period: int | None


def singular_orbit_description(p: SystemParams, tol: Tolerances | None = None) -> SingularOrbit:
    cls = classify_parameters(p, tol)
    tag, E = cls.tag, p.E
    if not tag.is_boundary:
        raise NotSingular(f"(E, D) = ({p.E}, {p.D}) is {tag.value}, not a singular level set")
    if tag is ParameterTag.BOUNDARY_WALL_MOTION:
        plus = caustic(p, +1, tol)
        half = math.sqrt(float(plus.semi_axis_horizontal_sq))
        return SingularOrbit(tag, cls.detail, "wall-segment", ((-half, 1.0), (half, 1.0)),
                             plus, False, None, None)
    if tag is ParameterTag.BOUNDARY_TWO_PERIODIC:
        v = 1 / (4 * E * E)
        h = v - 1
        ellipse = ConicSection(ConicKind.ELLIPSE, (0, 1), h, v, ((0, 0), (0, 2)))
        x = numeric.sqrt(h)
        state = WallState(x, 0 * E, 2 * E)
        return SingularOrbit(tag, cls.detail, "ellipse", ((-float(x), 1.0), (float(x), 1.0)),
                             ellipse, False, state, 2)
    one = Fraction(1) if p.exact else 1.0
    apex = -one / E
    segment = ConicSection(ConicKind.DEGENERATE_SEGMENT, (0, (1 + apex) / 2), 0,
                           ((apex - 1) / 2) ** 2, ((0, 1), (0, apex)))
    state = WallState(0 * one, 0 * one, -one)
    return SingularOrbit(tag, cls.detail, "axis-segment", ((0.0, 1.0), (0.0, float(apex))),
                         segment, tag is ParameterTag.BOUNDARY_D2_HIGH, state, 1)
