"""Analytic n-periodicity conditions of Cayley type.

The radicand used here is

    Q(xi) = (R - 2(D+2E) xi) (4R(D+2E)^2 xi^2 + 2(D+2E)(D^2+2DE-2) xi + R),

the negative of the cubic whose square root defines the elliptic curve in the
``(xi, eta)`` chart.  ``Q(0) = R^2 > 0``, so its square root has real Taylor
coefficients; the other sign only multiplies every coefficient by the same
unit and leaves every determinant condition unchanged.

By default the coefficients are those of ``sqrt(Q / R^2)`` (``B_0 = 1``).  In
that normalisation ``B_2`` coincides with the closed form

    B_2 = -(D+2E)^2 (4(D^2-4)E^2 + 4D(D^2-3)E + D^4 - 2D^2 - 3) / (2 |1+2DE+4E^2|).

Pass ``normalized=False`` for the raw expansion of ``sqrt(Q)`` (``B_0 = R``).
"""
from __future__ import annotations

from dataclasses import dataclass

from . import numeric
from .errors import OutsideRegion, UnsupportedPeriod
from .kepler import SystemParams
from .linalg import det, hankel
from .numeric import Tolerances
from .series import TruncatedSeries, series_sqrt


@dataclass(frozen=True)
class CayleyCurve:
    params: SystemParams
    cubic: tuple  # coefficients q0..q3 of Q(xi)
    k_squared: object  # None where the denominator vanishes
    s0: object  # None where D + 2E = R

    def __call__(self, xi):
        q0, q1, q2, q3 = self.cubic
        return ((q3 * xi + q2) * xi + q1) * xi + q0


def _require_real_regular(p: SystemParams, tol: Tolerances | None) -> None:
    p.require_regular(tol)
    if p.R is None:
        raise OutsideRegion(f"1+2DE+4E^2 = {p.r_squared} < 0: no real level set")


def cayley_curve(p: SystemParams, tol: Tolerances | None = None) -> CayleyCurve:
    _require_real_regular(p, tol)
    E, D, R = p.E, p.D, p.R
    s = D + 2 * E
    lin = (R, -2 * s)
    quad = (R, 2 * s * (D * D + 2 * D * E - 2), 4 * R * s * s)
    cubic = [0 * R] * 4
    for i, a in enumerate(lin):
        for j, b in enumerate(quad):
            cubic[i + j] = cubic[i + j] + a * b
    kden = D + 4 * E + 2 * R
    k2 = None if kden == 0 else (D + 4 * E - 2 * R) / kden
    s0 = None if s - R == 0 else (s + R) / (s - R)
    return CayleyCurve(p, tuple(cubic), k2, s0)


def cayley_coefficients(p: SystemParams, order: int, normalized: bool = True,
                        tol: Tolerances | None = None) -> list:
    """Taylor coefficients ``B_0 .. B_order`` of the square-rooted radicand.

    Exact (in Q or Q(sqrt(R^2))) for rational ``(E, D)``, floating otherwise.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    curve = cayley_curve(p, tol)
    Q = TruncatedSeries(curve.cubic, order)
    if normalized:
        root = series_sqrt(Q.scale(1 / p.r_squared), root0=p.R / p.R)
    else:
        root = series_sqrt(Q, root0=p.R)
    return list(root.coeffs)


def _hankel_for_period(B, n: int):
    if n % 2:
        m = (n - 1) // 2
        return hankel(B, 2, m)
    m = n // 2
    return hankel(B, 3, m - 1)


def cayley_determinant(p: SystemParams, n: int, tol: Tolerances | None = None,
                       coefficients=None):
    """Hankel determinant whose vanishing characterises period ``n``.

    ``n = 2m+1``: ``det[B_{i+j}]_{i,j=1..m}``;
    ``n = 2m``:   ``det[B_{i+j+1}]_{i,j=1..m-1}``.
    """
    if n < 3:
        raise UnsupportedPeriod(f"period {n} < 3 has no determinant condition")
    B = coefficients if coefficients is not None else cayley_coefficients(p, n - 1, tol=tol)
    return det(_hankel_for_period(B, n))


def cayley_determinants(p: SystemParams, n_max: int,
                        tol: Tolerances | None = None) -> dict[int, object]:
    """Determinants for ``n = 3 .. n_max`` from a single series expansion."""
    if n_max < 3:
        raise UnsupportedPeriod("n_max must be at least 3")
    B = cayley_coefficients(p, n_max - 1, tol=tol)
    return {n: cayley_determinant(p, n, coefficients=B) for n in range(3, n_max + 1)}


def closed_form_condition(n: int, p: SystemParams):
    """Explicit polynomial in ``(E, D)`` whose zeros are the period-``n`` loci, n = 3..6."""
    E, D = p.E, p.D
    D2 = D * D
    if n == 3:
        return 4 * (D2 - 4) * E ** 2 + 4 * D * (D2 - 3) * E + D ** 4 - 2 * D2 - 3
    if n == 4:
        s = D + 2 * E
        return (D2 + 2 * D * E - 1) * (s * s * (D2 - 4) - 1)
    if n == 5:
        return (D ** 12 - 6 * D ** 10 + 3 * D ** 8 + 60 * D ** 6 - 169 * D ** 4 + 42 * D2 + 5
                + 64 * (D2 - 4) ** 3 * E ** 6
                + 64 * (D2 - 4) * (3 * (D2 - 7) * D2 + 52) * D * E ** 5
                + 16 * (D2 - 4) * (15 * D ** 6 - 90 * D ** 4 + 251 * D2 + 4) * E ** 4
                + 32 * (D2 - 4) * (5 * D ** 6 - 25 * D ** 4 + 71 * D2 + 13) * D * E ** 3
                + 4 * (386 * D ** 6 - 452 * D ** 4 - 537 * D2 + 15 * (D2 - 8) * D ** 8 + 52) * E ** 2
                + 4 * (3 * D ** 10 - 21 * D ** 8 + 46 * D ** 6 + 22 * D ** 4 - 257 * D2 + 47) * D * E)
    if n == 6:
        s = D + 2 * E
        period3 = closed_form_condition(3, p)
        middle = (D2 + 2 * D * E - 1) ** 2 - 4 * s * s
        last = -1 + (D2 - 4) * s * s * ((3 * D2 - 4) * s * s + 16 * E * s + 6)
        return period3 * middle * last
    raise UnsupportedPeriod(f"no closed form for period {n} (available: 3..6)")


def proper_divisors(n: int) -> list[int]:
    return [d for d in range(2, n) if n % d == 0]


def _vanishes(value, zero_tol: float) -> bool:
    return numeric.is_zero(value, zero_tol)


def divisor_contamination(p: SystemParams, n: int, zero_tol: float = 1e-9,
                          tol: Tolerances | None = None) -> list[int]:
    """Proper divisors ``d >= 2`` of ``n`` whose own condition already vanishes.

    Period 2 corresponds to ``1 + 2DE + 4E^2 = 0``.
    """
    hits = []
    for d in proper_divisors(n):
        if d == 2:
            if _vanishes(p.r_squared, zero_tol):
                hits.append(2)
        elif _vanishes(cayley_determinant(p, d, tol), zero_tol):
            hits.append(d)
    return hits


@dataclass(frozen=True)
class PeriodicityVerdict:
    n: int
    determinant: object
    vanishes: bool
    contaminated_by: tuple

    @property
    def periodic(self) -> bool:
        return self.vanishes and not self.contaminated_by


def periodicity_verdict(p: SystemParams, n: int, zero_tol: float = 1e-9,
                        tol: Tolerances | None = None) -> PeriodicityVerdict:
    """Does the period-``n`` condition hold, and is it not inherited from a divisor?"""
    value = cayley_determinant(p, n, tol)
    vanishes = _vanishes(value, zero_tol)
    hits = tuple(divisor_contamination(p, n, zero_tol, tol)) if vanishes else ()
    return PeriodicityVerdict(n, value, vanishes, hits)
