"""Truncated power series over an arbitrary coefficient field."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import numeric
from .errors import ZeroConstantTerm


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``c_0 .. c_N`` of a power series modulo ``xi^(N+1)``."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence, order: int | None = None):
        coeffs = tuple(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        zero = coeffs[0] * 0 if coeffs else 0
        padded = coeffs[: order + 1] + (zero,) * (order + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", padded)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def _order_with(self, other: TruncatedSeries) -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        n = self._order_with(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs])
        n = self._order_with(other)
        out = []
        for k in range(n + 1):
            acc = self.coeffs[0] * other.coeffs[k]
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def scale(self, factor) -> TruncatedSeries:
        return TruncatedSeries([c * factor for c in self.coeffs])

    @classmethod
    def from_polynomial(cls, poly: Sequence, order: int) -> TruncatedSeries:
        return cls(poly, order)


def series_sqrt(s: TruncatedSeries, root0=None) -> TruncatedSeries:
    """Square root ``t`` of ``s`` with ``t*t == s`` up to the order of ``s``.

    The coefficients solve the triangular system
    ``2 t_0 t_k = s_k - sum_{i=1}^{k-1} t_i t_{k-i}``.  ``root0`` overrides
    the principal root of ``s_0`` (useful when it lies outside the
    coefficient field).
    """
    c0 = s.coeffs[0]
    if numeric.is_zero(c0, 0.0):
        raise ZeroConstantTerm("series square root needs a nonzero constant term")
    if root0 is None:
        if c0 < 0:
            raise ValueError("constant term must be positive for a real square root")
        root0 = numeric.sqrt(c0)
    two_t0 = 2 * root0
    t = [root0]
    for k in range(1, s.order + 1):
        acc = s.coeffs[k]
        for i in range(1, k):
            acc = acc - t[i] * t[k - i]
        t.append(acc / two_t0)
    return TruncatedSeries(t)
