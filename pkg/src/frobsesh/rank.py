"""Exact matrix rank over F_p (or Q) for sparse column-stored matrices.

A matrix is a list of columns, each a mapping ``row -> value``. The sparse
path keeps a reduced column per pivot row and eliminates incoming columns
against it, which is near-linear on the partial-permutation matrices the
jet oracle produces.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

DENSE_COLUMN_LIMIT = 512

Column = Mapping[int, int]


def rank_sparse(columns: Sequence[Column], p: int | None) -> int:
    """Rank over F_p, or over Q when ``p`` is None."""
    pivots: dict[int, dict[int, object]] = {}
    for col in columns:
        if p is None:
            v = {r: Fraction(x) for r, x in col.items() if x != 0}
        else:
            v = {r: x % p for r, x in col.items() if x % p}
        while v:
            r = min(v)
            piv = pivots.get(r)
            if piv is None:
                if p is None:
                    inv = 1 / v[r]
                else:
                    inv = pow(v[r], -1, p)
                pivots[r] = {k: (x * inv if p is None else x * inv % p) for k, x in v.items()}
                break
            f = v[r]
            for k, x in piv.items():
                y = v.get(k, 0) - f * x
                if p is not None:
                    y %= p
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return len(pivots)


def rank_dense_mod_p(columns: Sequence[Column], nrows: int, p: int) -> int:
    ncols = len(columns)
    if ncols == 0 or nrows == 0:
        return 0
    a = np.zeros((nrows, ncols), dtype=np.int64)
    for j, col in enumerate(columns):
        for r, x in col.items():
            a[r, j] = x % p
    rank = 0
    for c in range(ncols):
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] * pow(int(a[rank, c]), -1, p) % p
        below = np.nonzero(a[rank + 1 :, c])[0] + rank + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[rank])) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_mod_p(columns: Sequence[Column], nrows: int, p: int) -> int:
    if len(columns) < DENSE_COLUMN_LIMIT and nrows <= 4 * DENSE_COLUMN_LIMIT:
        return rank_dense_mod_p(columns, nrows, p)
    return rank_sparse(columns, p)
