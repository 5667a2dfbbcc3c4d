"""Number types and tolerance handling shared by every module.

Map, series and determinant code is written with plain arithmetic operators
so the same function runs on ``float``, ``mpmath.mpf``, ``Fraction`` and
:class:`QuadExt`.  Exact types get exact zero tests; everything else is
compared against a tolerance.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from numbers import Rational

import mpmath

ENV_PRECISION = "BOLTZMANN_PRECISION"


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _rational_sqrt(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


class QuadExt:
    """Element ``a + b*sqrt(r)`` of the real quadratic field Q(sqrt(r)).

    ``r`` must be a positive rational that is not a rational square, which
    makes ``a + b*sqrt(r) == 0`` equivalent to ``a == b == 0``.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a=0, b=0, r=2):
        r = Fraction(r)
        if r <= 0 or _is_rational_square(r):
            raise ValueError(f"radicand {r} must be a positive non-square rational")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.r = r

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.r == self.r:
                return other
            if other.b == 0:
                return QuadExt(other.a, 0, self.r)
            if self.b == 0:
                return None
            raise ValueError(f"radicand mismatch: {self.r} vs {other.r}")
        if isinstance(other, (int, Rational)):
            return QuadExt(other, 0, self.r)
        return None

    def _other_radicand(self, other):
        # self is rational, other carries a different radicand
        return isinstance(other, QuadExt) and self.b == 0 and other.r != self.r

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if self._other_radicand(other):
                return other + self.a
            if isinstance(other, float):
                return float(self) + other
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if self._other_radicand(other):
                return other * self.a
            if isinstance(other, float):
                return float(self) * other
            return NotImplemented
        return QuadExt(self.a * o.a + self.b * o.b * self.r,
                       self.a * o.b + self.b * o.a, self.r)

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.r)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.r

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(r))")
        return QuadExt(self.a / n, -self.b / n, self.r)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if self._other_radicand(other):
                return self.a / other
            if isinstance(other, float):
                return float(self) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QuadExt(1, 0, self.r), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- ordering ---------------------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 r
        diff = self.a * self.a - self.b * self.b * self.r
        return sa if diff > 0 else (-sa if diff < 0 else 0)

    def __eq__(self, other):
        if isinstance(other, float):
            return float(self) == other
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        if o is None:
            if self._other_radicand(other):
                return other == self.a
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.r))

    def _cmp(self, other):
        if isinstance(other, float):
            v = float(self)
            return (v > other) - (v < other)
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    # -- conversion -------------------------------------------------------
    def __float__(self):
        if self.b == 0:
            return float(self.a)
        root = math.sqrt(self.r)
        if self.a == 0 or (self.a > 0) == (self.b > 0):
            return float(self.a) + float(self.b) * root
        # avoid cancellation: a + b*sqrt(r) = norm / (a - b*sqrt(r))
        return float(self.norm()) / (float(self.a) - float(self.b) * root)

    def to_mpf(self):
        return mpmath.mpf(self.a.numerator) / self.a.denominator + \
            mpmath.mpf(self.b.numerator) / self.b.denominator * mpmath.sqrt(
                mpmath.mpf(self.r.numerator) / self.r.denominator)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sqrt(self):
        """Square root when it lies in the same field; ValueError otherwise."""
        if self.sign() < 0:
            raise ValueError("square root of a negative element")
        if self.b == 0:
            if _is_rational_square(self.a):
                return QuadExt(_rational_sqrt(self.a), 0, self.r)
            q = self.a / self.r
            if _is_rational_square(q):
                return QuadExt(0, _rational_sqrt(q), self.r)
        raise ValueError(f"sqrt({self}) is not in Q(sqrt({self.r}))")

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.r})"


EXACT_TYPES = (int, Fraction, QuadExt)


def is_exact(*values) -> bool:
    return all(isinstance(v, EXACT_TYPES) for v in values)


def exact_sqrt(q) -> Fraction | QuadExt:
    """Principal square root of a non-negative rational, inside Q or Q(sqrt(q))."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    if _is_rational_square(q):
        return _rational_sqrt(q)
    return QuadExt(0, 1, q)


def sqrt(v):
    """Square root dispatching on the number type of ``v``."""
    if isinstance(v, QuadExt):
        return v.sqrt()
    if isinstance(v, (int, Fraction)):
        return exact_sqrt(v)
    if isinstance(v, mpmath.mpf):
        return mpmath.sqrt(v)
    return math.sqrt(v)


def is_zero(v, tol: float) -> bool:
    if isinstance(v, EXACT_TYPES):
        return v == 0
    return abs(v) <= tol


def to_float(v) -> float:
    return float(v)


def to_mpf(v):
    if isinstance(v, QuadExt):
        return v.to_mpf()
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*$")
_INTEGER = re.compile(r"^\s*[+-]?\d+\s*$")
_SQRT = re.compile(r"^\s*([+-]?)sqrt\((.+)\)\s*$")


def parse_number(text: str):
    """Parse ``p/q`` and integers exactly, decimals as float.

    ``sqrt(x)`` (optionally signed) is accepted and always yields a float.
    """
    m = _SQRT.match(text)
    if m:
        inner = float(parse_number(m.group(2)))
        if inner < 0:
            raise ValueError(f"negative radicand in {text!r}")
        return -math.sqrt(inner) if m.group(1) == "-" else math.sqrt(inner)
    m = _RATIONAL.match(text)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    if _INTEGER.match(text):
        return Fraction(int(text))
    try:
        value = float(text)
    except ValueError:
        raise ValueError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"not a finite number: {text!r}")
    return value


@dataclass(frozen=True)
class Tolerances:
    eps_constraint: float = 1e-10
    eps_close: float = 1e-9
    eps_class: float = 1e-12
    eps_divisor: float = 1e-4
    eps_tangency: float = 1e-8
    eps_degenerate: float = 1e-12

    @classmethod
    def from_env(cls, env=None) -> Tolerances:
        """Defaults overridden by ``BOLTZMANN_PRECISION``.

        Format: comma separated ``name=value`` pairs, e.g.
        ``eps_close=1e-8,eps_class=1e-11``.
        """
        env = os.environ if env is None else env
        spec = env.get(ENV_PRECISION, "").strip()
        if not spec:
            return cls()
        known = {f.name for f in fields(cls)}
        updates = {}
        for item in spec.split(","):
            if not item.strip():
                continue
            name, sep, value = item.partition("=")
            name = name.strip()
            if not sep or name not in known:
                raise ValueError(f"bad {ENV_PRECISION} entry: {item!r}")
            updates[name] = float(value)
        return replace(cls(), **updates)


def get_tolerances(tol: Tolerances | None = None) -> Tolerances:
    return tol if tol is not None else Tolerances.from_env()
