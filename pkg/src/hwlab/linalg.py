"""Exact dense linear algebra over Q (lists of lists of Fractions)."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import SingularSystemError

Matrix = list[list[Fraction]]


def bareiss_det_int(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return sign * a[-1][-1]


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant: rows are scaled to integers, then Bareiss."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    int_rows, scale = [], 1
    for r in rows:
        r = [Fraction(v) for v in r]
        if len(r) != n:
            raise ValueError("matrix is not square")
        lcm = 1
        for v in r:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        int_rows.append([int(v * lcm) for v in r])
        scale *= lcm
    return Fraction(bareiss_det_int(int_rows), scale)


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)]
        for i in range(len(a))
    ]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``a x = b`` exactly by Gauss-Jordan elimination.

    Raises SingularSystemError when ``a`` is singular.
    """
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise SingularSystemError(f"singular system (column {col})")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [vr - f * vc for vr, vc in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]
