"""Exact determinants, adjugates and linear solves over polynomials and scalars."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .coeff import CycRat
from .multipoly import Poly

__all__ = ["adjugate", "bareiss_det", "scalar_det", "solve_linear"]


def _laplace_det(m: list[list[Poly]]) -> Poly:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _laplace_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else Poly.zero(m[0][0].rank)


def bareiss_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free Bareiss elimination.

    Every intermediate division is exact, so no rational functions appear.
    Matrices with cyclotomic entries fall back to cofactor expansion.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    rank = a[0][0].rank
    if any(not e.is_rational() for row in a for e in row):
        return _laplace_det(a)
    sign = 1
    prev = Poly.one(rank)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return Poly.zero(rank)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def adjugate(matrix: Sequence[Sequence[Poly]]) -> list[list[Poly]]:
    """adj(M)[i][j] = (-1)^(i+j) det(M with row j and column i removed)."""
    n = len(matrix)
    if n == 1:
        return [[Poly.one(matrix[0][0].rank)]]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(matrix) if k != j]
            c = bareiss_det(minor)
            row.append(-c if (i + j) % 2 else c)
        out.append(row)
    return out


def _to_field(v):
    if isinstance(v, CycRat):
        return v.to_fraction() if v.is_rational() else v
    return Fraction(v)


def _from_field(v) -> CycRat:
    return CycRat(v)


def scalar_det(matrix: Sequence[Sequence]) -> CycRat:
    a = [[_to_field(v) for v in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return CycRat(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return _from_field(det)


def solve_linear(rows: Sequence[Sequence], rhs: Sequence) -> list[CycRat] | None:
    """One solution of rows * c = rhs (free unknowns set to 0), or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [[_to_field(v) for v in row] + [_to_field(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][col]
        aug[r] = [v / p for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][-1]:
            return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = aug[i][-1]
    return [_from_field(v) for v in sol]
