"""Exact integer and rational linear algebra on small square matrices.

Matrices are sequences of rows; entries are Python ints (or Fractions for
right-hand sides), so nothing ever overflows or rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

IntMatrix = tuple[tuple[int, ...], ...]
RatVector = tuple[Fraction, ...]


class SingularMatrix(ValueError):
    pass


class NotUnimodular(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError(f"expected a non-empty square matrix, got shape {n}x{[len(r) for r in m]}")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination.

    Every intermediate value is itself a minor of ``m``, so all divisions
    are exact and the entries stay integers.
    """
    a = [list(row) for row in as_matrix(m)]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def solve_exact(m: Sequence[Sequence[int]], rhs: Sequence) -> RatVector:
    """Return the unique rational x with m @ x == rhs."""
    a = as_matrix(m)
    n = len(a)
    if len(rhs) != n:
        raise ValueError(f"rhs has length {len(rhs)}, expected {n}")
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(a, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def invert_unimodular(m: Sequence[Sequence[int]]) -> IntMatrix:
    a = as_matrix(m)
    d = det(a)
    if abs(d) != 1:
        raise NotUnimodular(f"determinant is {d}")
    n = len(a)
    cols = [solve_exact(a, [int(i == j) for i in range(n)]) for j in range(n)]
    # inverse of a unimodular matrix is integral; columns came back as Fractions
    return tuple(tuple(int(cols[j][i]) for j in range(n)) for i in range(n))
