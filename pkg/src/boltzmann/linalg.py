"""Determinants for small dense matrices over exact or floating fields."""
from __future__ import annotations

from typing import Sequence

from . import numeric


def _laplace(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _bareiss(m):
    a = [list(row) for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return a[k][k] * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def _partial_pivot(m):
    a = [list(row) for row in m]
    n = len(a)
    det = a[0][0] * 0 + 1
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[p][k] == 0:
            return a[p][k] * 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det = det * a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return det


def det(matrix: Sequence[Sequence]):
    """Determinant: Laplace for size <= 3, Bareiss for exact entries,
    partial pivoting otherwise.  The empty matrix has determinant 1."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    if n <= 3:
        return _laplace(matrix)
    if all(numeric.is_exact(*row) for row in matrix):
        return _bareiss(matrix)
    return _partial_pivot(matrix)


def hankel(seq: Sequence, first: int, size: int):
    """``size x size`` Hankel matrix with entries ``seq[first + i + j]``."""
    return [[seq[first + i + j] for j in range(size)] for i in range(size)]
