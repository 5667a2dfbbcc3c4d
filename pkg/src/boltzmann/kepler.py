"""Level sets, the reflection map and Kepler arc reconstruction.

Coordinates: attracting centre at the origin, wall on the line ``x2 = 1``,
particle in the half-plane ``x2 >= 1``.  A wall state ``(x, A1, A2)`` is the
reflection point ``(x, 1)`` together with the Laplace-Runge-Lenz vector of
the arc that *leaves* that point.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import numeric
from .errors import (DegenerateArc, DegenerateTangency, PreconditionViolated,
                     SingularParameters, UnboundedMotion)
from .numeric import QuadExt, Tolerances, get_tolerances


def _common_type(E, D):
    if isinstance(E, mpmath.mpf) or isinstance(D, mpmath.mpf):
        return numeric.to_mpf(E), numeric.to_mpf(D)
    if numeric.is_exact(E, D):
        conv = (lambda v: Fraction(v) if isinstance(v, int) else v)
        return conv(E), conv(D)
    return float(E), float(D)


@dataclass(frozen=True)
class SystemParams:
    """Integrals ``(E, D)`` of a level set plus ``R^2 = 1 + 2DE + 4E^2``."""

    E: object
    D: object
    r_squared: object
    R: object  # None when r_squared < 0

    @property
    def exact(self) -> bool:
        return numeric.is_exact(self.E, self.D)

    def violated_conditions(self, tol: Tolerances | None = None) -> list[str]:
        """Names of the regularity conditions that fail."""
        eps = get_tolerances(tol).eps_class
        bad = []
        if numeric.is_zero(self.D * self.D - 4, eps):
            bad.append("D^2 != 4")
        if numeric.is_zero(self.r_squared, eps):
            bad.append("1+2DE+4E^2 != 0")
        if numeric.is_zero(self.D + 2 * self.E, eps):
            bad.append("D+2E != 0")
        return bad

    def require_regular(self, tol: Tolerances | None = None) -> None:
        bad = self.violated_conditions(tol)
        if bad:
            raise SingularParameters(
                f"singular level set at (E, D) = ({self.E}, {self.D}): "
                f"violates {', '.join(bad)}", condition=bad[0])

    def as_float(self) -> SystemParams:
        return make_params(float(self.E), float(self.D))

    def as_mpf(self) -> SystemParams:
        return make_params(numeric.to_mpf(self.E), numeric.to_mpf(self.D))


def make_params(E, D) -> SystemParams:
    E, D = _common_type(E, D)
    r2 = 1 + 2 * D * E + 4 * E * E
    R = numeric.sqrt(r2) if r2 >= 0 else None
    return SystemParams(E, D, r2, R)


class ParameterTag(enum.Enum):
    REGULAR_INTERIOR = "RegularInterior"
    BOUNDARY_WALL_MOTION = "BoundaryWallMotion"
    BOUNDARY_TWO_PERIODIC = "BoundaryTwoPeriodic"
    BOUNDARY_D2_LOW = "BoundaryD2Low"
    BOUNDARY_D2_HIGH = "BoundaryD2High"
    OUTSIDE_REGION = "OutsideRegion"

    @property
    def is_boundary(self) -> bool:
        return self not in (ParameterTag.REGULAR_INTERIOR, ParameterTag.OUTSIDE_REGION)


_DETAILS = {
    ParameterTag.REGULAR_INTERIOR: "regular level set: a single Liouville torus",
    ParameterTag.BOUNDARY_WALL_MOTION:
        "single closed orbit: limiting motion on the wall along the minor axis of E+",
    ParameterTag.BOUNDARY_TWO_PERIODIC:
        "single closed orbit: 2-periodic trajectory on an ellipse with its minor axis on the wall",
    ParameterTag.BOUNDARY_D2_LOW:
        "single closed orbit: vertical bouncing on the x2-axis up to (0, -1/E)",
    ParameterTag.BOUNDARY_D2_HIGH:
        "closed orbit plus separatrix: vertical bouncing through F(0,2), "
        "separatrix of trajectories whose arcs contain F(0,2)",
    ParameterTag.OUTSIDE_REGION: "no bounded real motion for these integrals",
}


@dataclass(frozen=True)
class ParameterClass:
    tag: ParameterTag
    detail: str


def classify_parameters(p: SystemParams, tol: Tolerances | None = None) -> ParameterClass:
    """Place ``(E, D)`` in the bounded-motion region or on one of its singular curves."""
    eps = get_tolerances(tol).eps_class
    E, D = p.E, p.D
    half = Fraction(1, 2) if p.exact else 0.5

    def tagged(tag):
        return ParameterClass(tag, _DETAILS[tag])

    if E >= 0 or numeric.is_zero(E, eps):
        return tagged(ParameterTag.OUTSIDE_REGION)
    if numeric.is_zero(D + 2 * E, eps):
        ok = 0 < D < 2 and not numeric.is_zero(D - 2, eps)
        return tagged(ParameterTag.BOUNDARY_WALL_MOTION if ok else ParameterTag.OUTSIDE_REGION)
    if numeric.is_zero(p.r_squared, eps):
        ok = D > 2 and not numeric.is_zero(D - 2, eps)
        return tagged(ParameterTag.BOUNDARY_TWO_PERIODIC if ok else ParameterTag.OUTSIDE_REGION)
    if numeric.is_zero(D - 2, eps):
        if numeric.is_zero(E + half, eps) or numeric.is_zero(E + 1, eps):
            return tagged(ParameterTag.OUTSIDE_REGION)
        if -1 < E < -half:
            return tagged(ParameterTag.BOUNDARY_D2_LOW)
        if -half < E < 0:
            return tagged(ParameterTag.BOUNDARY_D2_HIGH)
        return tagged(ParameterTag.OUTSIDE_REGION)
    interior = D + 2 * E > 0 and p.r_squared > 0 and (E > -half or D < 2)
    return tagged(ParameterTag.REGULAR_INTERIOR if interior else ParameterTag.OUTSIDE_REGION)


@dataclass(frozen=True)
class WallState:
    x: object
    A1: object
    A2: object

    def l_squared(self, p: SystemParams):
        return p.D + 2 * self.A2

    def circle_residual(self, p: SystemParams):
        return self.A1 ** 2 + self.A2 ** 2 - 4 * p.E * self.A2 - (1 + 2 * p.D * p.E)

    def wall_residual(self, p: SystemParams):
        return self.x ** 2 + 1 - (self.A2 + p.D - self.A1 * self.x) ** 2

    def second_focus(self, p: SystemParams):
        return (self.A1 / p.E, self.A2 / p.E)

    def as_tuple(self) -> tuple:
        return (self.x, self.A1, self.A2)

    def as_float(self) -> WallState:
        return WallState(float(self.x), float(self.A1), float(self.A2))

    def distance(self, other: WallState) -> float:
        """Max-norm distance between two states, as a float."""
        return max(abs(float(a - b)) for a, b in zip(self.as_tuple(), other.as_tuple()))


def involution_i(s: WallState, p: SystemParams, tol: Tolerances | None = None) -> WallState:
    """Move to the other wall crossing of the same Kepler conic."""
    den = 1 - s.A1 * s.A1
    if numeric.is_zero(den, get_tolerances(tol).eps_degenerate):
        raise DegenerateTangency(f"|A1| = 1 at {s}: conic tangent to the wall")
    return WallState(-2 * (s.A2 + p.D) * s.A1 / den - s.x, s.A1, s.A2)


def involution_j(s: WallState, p: SystemParams) -> WallState:
    """Reflect off the wall at ``(x, 1)``: switch to the next arc."""
    x, A1, A2, E = s.x, s.A1, s.A2, p.E
    x2 = x * x
    den = x2 + 1
    return WallState(x,
                     ((x2 - 1) * A1 - 2 * x * A2 + 4 * x * E) / den,
                     (-2 * x * A1 - (x2 - 1) * A2 + 4 * x2 * E) / den)


def boltzmann_step(s: WallState, p: SystemParams, tol: Tolerances | None = None) -> WallState:
    return involution_j(involution_i(s, p, tol), p)


def orbit(s: WallState, p: SystemParams, steps: int,
          tol: Tolerances | None = None) -> list[WallState]:
    """``steps + 1`` states starting with ``s``."""
    out = [s]
    for _ in range(steps):
        s = boltzmann_step(s, p, tol)
        out.append(s)
    return out


def state_from_physical(position, momentum) -> tuple[SystemParams, WallState]:
    """Integrals and wall state of a particle leaving the wall point ``position``."""
    x1, x2 = position
    p1, p2 = momentum
    if not numeric.is_zero(x2 - 1, 1e-12):
        raise PreconditionViolated(f"position {position} is not on the wall x2 = 1")
    if not all(math.isfinite(float(v)) for v in (x1, p1, p2)):
        raise PreconditionViolated("position and momentum must be finite")
    norm = numeric.sqrt(x1 * x1 + x2 * x2)
    if isinstance(norm, QuadExt):
        x1, x2, p1, p2 = (float(v) for v in (x1, x2, p1, p2))
        norm = math.sqrt(x1 * x1 + x2 * x2)
    L = x1 * p2 - x2 * p1
    A1 = p2 * L - x1 / norm
    A2 = -p1 * L - x2 / norm
    E = (p1 * p1 + p2 * p2) / 2 - 1 / norm
    if E >= 0:
        raise UnboundedMotion(f"energy E = {E} >= 0: arc is not an ellipse")
    D = L * L - 2 * A2
    return make_params(E, D), WallState(x1, A1, A2)


def _trig(p: SystemParams):
    if isinstance(p.E, mpmath.mpf):
        return mpmath.cos, mpmath.sin
    return math.cos, math.sin


def wall_crossings(p: SystemParams, A1, A2, tol: Tolerances | None = None) -> list[WallState]:
    """Wall states with LRL vector ``(A1, A2)``: zero, one or two of them.

    Only physical arcs (``L^2 >= 0``, real crossings, ``|A1| != 1``) count.
    """
    eps = get_tolerances(tol).eps_degenerate
    c = A2 + p.D
    a = 1 - A1 * A1
    if numeric.is_zero(a, eps) or p.D + 2 * A2 < 0:
        return []
    disc = c * c + A1 * A1 - 1
    if disc < 0:
        return []
    root = numeric.sqrt(disc)
    xs = [(-c * A1 + root) / a]
    if not numeric.is_zero(disc, 0.0):
        xs.append((-c * A1 - root) / a)
    return [WallState(x, A1, A2) for x in xs]


def state_from_angle(p: SystemParams, theta, branch: int = 0,
                     tol: Tolerances | None = None) -> WallState | None:
    """State whose LRL vector sits at angle ``theta`` on the circle
    ``A1^2 + (A2 - 2E)^2 = R^2``; ``branch`` picks the wall crossing."""
    if p.R is None:
        return None
    cos, sin = _trig(p)
    A1 = p.R * cos(theta)
    A2 = 2 * p.E + p.R * sin(theta)
    states = wall_crossings(p, A1, A2, tol)
    if not states:
        return None
    return states[min(branch, len(states) - 1)]


def refine_state(s: WallState, p: SystemParams) -> WallState:
    """Project ``s`` onto the level set of ``p`` in the number type of ``p``.

    ``A1`` is kept, ``A2`` and ``x`` are re-solved choosing the roots nearest
    to the given ones.  Used to lift a float state to higher precision.
    """
    conv = numeric.to_mpf if isinstance(p.E, mpmath.mpf) else float
    A1 = conv(s.A1)
    rad = p.r_squared - A1 * A1
    if rad < 0:
        raise PreconditionViolated("A1 is off the LRL circle of these parameters")
    h = numeric.sqrt(rad)
    A2 = min((2 * p.E + h, 2 * p.E - h), key=lambda v: abs(float(v) - float(s.A2)))
    cands = wall_crossings(p, A1, A2)
    if not cands:
        raise PreconditionViolated(f"no wall crossing for {s}")
    return min(cands, key=lambda c: abs(float(c.x) - float(s.x)))


def kepler_conic_residual(p: SystemParams, s: WallState, point) -> float:
    """``x1^2 + x2^2 - (D + 2A2 - A1 x1 - A2 x2)^2`` at ``point``."""
    x1, x2 = point
    D, A1, A2 = float(p.D), float(s.A1), float(s.A2)
    return x1 * x1 + x2 * x2 - (D + 2 * A2 - A1 * x1 - A2 * x2) ** 2


@dataclass(frozen=True)
class KeplerArc:
    params: SystemParams
    state: WallState
    start_x: float
    end_x: float
    second_focus: tuple
    samples: np.ndarray  # shape (n, 2), ordered start -> end

    def conic_residuals(self) -> np.ndarray:
        D, A1, A2 = (float(v) for v in (self.params.D, self.state.A1, self.state.A2))
        x1, x2 = self.samples[:, 0], self.samples[:, 1]
        return x1 ** 2 + x2 ** 2 - (D + 2 * A2 - A1 * x1 - A2 * x2) ** 2


def arc_angles(start_x: float, end_x: float) -> tuple[float, float]:
    """Polar angles (about the origin) of the two wall endpoints."""
    return math.atan2(1.0, start_x), math.atan2(1.0, end_x)


def reconstruct_arc(s_before: WallState, s_after_i: WallState, p: SystemParams,
                    n_samples: int = 64, tol: Tolerances | None = None) -> KeplerArc:
    """Sample the part of the Kepler conic above the wall between two crossings.

    Each ray from the origin meets the ellipse once, so the arc above the
    wall is exactly the polar-angle interval between the two crossings.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    eps = get_tolerances(tol).eps_constraint
    if (abs(float(s_before.A1 - s_after_i.A1)) > eps
            or abs(float(s_before.A2 - s_after_i.A2)) > eps):
        raise PreconditionViolated("states do not share the LRL vector")
    D, E = float(p.D), float(p.E)
    A1, A2 = float(s_before.A1), float(s_before.A2)
    x0, x1 = float(s_before.x), float(s_after_i.x)
    l2 = D + 2 * A2
    if abs(l2) <= get_tolerances(tol).eps_degenerate:
        apex = -1.0 / E
        norm = math.hypot(x0, 1.0)
        segment = ((x0, 1.0), (x0 * apex / norm, apex / norm))
        raise DegenerateArc("L^2 = 0: radial arc", segment=segment)
    if l2 < 0:
        raise PreconditionViolated(f"L^2 = {l2} < 0: no physical arc")
    t0, t1 = arc_angles(x0, x1)
    theta = np.linspace(t0, t1, n_samples)
    r = l2 / (1.0 + A1 * np.cos(theta) + A2 * np.sin(theta))
    pts = np.column_stack((r * np.cos(theta), r * np.sin(theta)))
    pts[0] = (x0, 1.0)
    pts[-1] = (x1, 1.0)
    return KeplerArc(p, s_before, x0, x1, (A1 / E, A2 / E), pts)


def arc_from_state(s: WallState, p: SystemParams, n_samples: int = 64,
                   tol: Tolerances | None = None) -> KeplerArc:
    return reconstruct_arc(s, involution_i(s, p, tol), p, n_samples, tol)
