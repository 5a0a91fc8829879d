"""Brute-force jet separation at torus-fixed points.

Global sections of ``O(mD)`` have the monomial basis ``chi^u`` for lattice
points ``u`` of ``m P_D``. Near the fixed point of a cone ``sigma`` the
section ``chi^u`` is the monomial whose exponent along ray ``v_i`` is the
vanishing order ``<u, v_i> + m a_i``. Restricting to a monomial quotient of
the local ring therefore gives a 0/1 matrix, and separation is decided by
its exact rank over F_p. Nothing here uses the closed-form constants.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from math import ceil, floor
from typing import Sequence

import numpy as np

from . import rank as _rank
from .toric import ToricDivisor, polytope_of

DEFAULT_SECTION_CAP = 10**6
SECTION_CAP_ENV = "FROBSESH_SECTION_CAP"


class SizeLimit(RuntimeError):
    pass


class UnboundedPolytope(ValueError):
    pass


class QuotientKind(str, Enum):
    FROBENIUS = "frobenius"
    CLASSICAL = "classical"
    FROBENIUS_SQUARE = "frobenius-square"


def section_cap() -> int:
    return int(os.environ.get(SECTION_CAP_ENV, DEFAULT_SECTION_CAP))


@dataclass
class SectionBasis:
    divisor: ToricDivisor
    m: int
    points: np.ndarray  # (count, n) int64, lexicographic

    def __len__(self) -> int:
        return len(self.points)

    def as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.points]


@dataclass(frozen=True)
class QuotientBasis:
    kind: QuotientKind
    order: int  # e for the Frobenius kinds, l for classical jets
    p: int
    dim: int

    @property
    def q(self) -> int:
        return self.p**self.order

    def exponents(self) -> list[tuple[int, ...]]:
        """All exponent vectors outside the ideal, in lexicographic order."""
        n, q = self.dim, self.q
        if self.kind is QuotientKind.FROBENIUS:
            return list(product(range(q), repeat=n))
        if self.kind is QuotientKind.CLASSICAL:
            return [a for a in product(range(self.order + 1), repeat=n) if sum(a) <= self.order]
        return [a for a in product(range(2 * q), repeat=n) if _outside_square(a, q)]

    def mask(self, a: np.ndarray) -> np.ndarray:
        """Vectorized membership of the rows of ``a`` in the quotient basis."""
        if self.kind is QuotientKind.FROBENIUS:
            return np.all((a >= 0) & (a < self.q), axis=1)
        nonneg = np.all(a >= 0, axis=1)
        if self.kind is QuotientKind.CLASSICAL:
            return nonneg & (a.sum(axis=1) <= self.order)
        big = a >= self.q
        return nonneg & (big.sum(axis=1) <= 1) & np.all(a < 2 * self.q, axis=1)


def _outside_square(a, q) -> bool:
    # (m^2)^{[q]} is generated by (y_i y_j)^q for i <= j
    big = [x for x in a if x >= q]
    return len(big) <= 1 and all(x < 2 * q for x in a)


@dataclass(frozen=True)
class JetInstanceResult:
    m: int
    order: int
    kind: str
    p: int
    points: tuple[int, ...]
    rows: int
    cols: int
    rank: int
    surjective: bool


@dataclass
class RestrictionMatrix:
    p: int
    m: int
    order: int
    kind: QuotientKind
    points: tuple[int, ...]
    nrows: int
    ncols: int
    entries: list[tuple[int, int]] = field(default_factory=list)  # (row, col), value 1

    def columns(self) -> list[dict[int, int]]:
        """Nonzero columns only; zero columns never change the rank."""
        cols: dict[int, dict[int, int]] = {}
        for r, c in self.entries:
            cols.setdefault(c, {})[r] = 1
        return [cols[c] for c in sorted(cols)]

    def to_triplets(self) -> str:
        head = f"{self.p} {self.m} {self.order} {len(self.points)} {self.nrows} {self.ncols}"
        body = [f"{r} {c} 1" for r, c in sorted(self.entries, key=lambda t: (t[1], t[0]))]
        return "\n".join([head, *body]) + "\n"


def enumerate_sections(divisor: ToricDivisor, m: int, cap: int | None = None) -> SectionBasis:
    """All lattice points of m * P_D, by bounding box and inequality filter."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    cap = section_cap() if cap is None else cap
    poly = polytope_of(divisor)
    if not poly.vertices:
        raise UnboundedPolytope("divisor is not nef: no vertex of P_D found")
    n = divisor.fan.dim
    lo = [floor(min(v[i] for v in poly.vertices) * m) for i in range(n)]
    hi = [ceil(max(v[i] for v in poly.vertices) * m) for i in range(n)]
    normals = np.array(divisor.fan.rays, dtype=np.int64)
    bounds = -m * np.array(divisor.coeffs, dtype=np.int64)
    scale = max(max(abs(x) for x in lo + hi), 1) * int(np.abs(normals).max()) * n
    if scale > 2**60:
        raise SizeLimit("coordinates too large for exact 64-bit enumeration")

    if n == 1:
        slices = [np.arange(lo[0], hi[0] + 1, dtype=np.int64).reshape(-1, 1)]
    else:
        rest = np.stack(
            np.meshgrid(*[np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo[1:], hi[1:])], indexing="ij"),
            axis=-1,
        ).reshape(-1, n - 1)
        slices = (np.hstack([np.full((len(rest), 1), x0, dtype=np.int64), rest]) for x0 in range(lo[0], hi[0] + 1))

    found, total = [], 0
    for box in slices:
        keep = box[np.all(box @ normals.T >= bounds, axis=1)]
        total += len(keep)
        if total > cap:
            raise SizeLimit(f"m P_D has more than {cap} lattice points")
        found.append(keep)
    pts = np.vstack(found) if found else np.zeros((0, n), dtype=np.int64)
    return SectionBasis(divisor, m, pts)


def local_exponents(divisor: ToricDivisor, cone_index: int, m: int, points: np.ndarray) -> np.ndarray:
    """Vanishing orders <u, v_i> + m a_i along the rays of the cone."""
    fan = divisor.fan
    cone = fan.max_cones[cone_index]
    rays = np.array([fan.rays[i] for i in cone], dtype=np.int64)
    shift = m * np.array([divisor.coeffs[i] for i in cone], dtype=np.int64)
    return points @ rays.T + shift


def restriction_matrix(
    divisor: ToricDivisor,
    m: int,
    points: Sequence[int],
    kind: QuotientKind | str,
    order: int,
    p: int,
    sections: SectionBasis | None = None,
) -> RestrictionMatrix:
    kind = QuotientKind(kind)
    if sections is None:
        sections = enumerate_sections(divisor, m)
    n = divisor.fan.dim
    basis = QuotientBasis(kind, order, p, n)
    entries: list[tuple[int, int]] = []
    offset = 0
    for cone_index in points:
        loc = local_exponents(divisor, cone_index, m, sections.points)
        cols = np.nonzero(basis.mask(loc))[0]
        hit = loc[cols]
        if kind is QuotientKind.FROBENIUS:
            q = basis.q
            size = q**n
            idx = np.zeros(len(hit), dtype=np.int64)
            for i in range(n):
                idx = idx * q + hit[:, i]
            rows = idx.tolist()
        else:
            labels = basis.exponents()
            size = len(labels)
            where = {a: k for k, a in enumerate(labels)}
            rows = [where[tuple(int(x) for x in a)] for a in hit]
        entries.extend(zip((offset + r for r in rows), cols.tolist()))
        offset += size
    return RestrictionMatrix(p, m, order, kind, tuple(points), offset, len(sections), entries)


def matrix_rank(mat: RestrictionMatrix, p: int | None = -1) -> int:
    """Rank over F_p (default: the matrix's own prime) or over Q (p=None)."""
    cols = mat.columns()
    if p is None:
        return _rank.rank_sparse(cols, None)
    if p == -1:
        p = mat.p
    return _rank.rank_mod_p(cols, mat.nrows, p)


def separates(
    divisor: ToricDivisor,
    m: int,
    points: Sequence[int],
    kind: QuotientKind | str,
    order: int,
    p: int,
    sections: SectionBasis | None = None,
) -> JetInstanceResult:
    mat = restriction_matrix(divisor, m, points, kind, order, p, sections)
    r = matrix_rank(mat)
    return JetInstanceResult(
        m, order, QuotientKind(kind).value, p, tuple(points), mat.nrows, mat.ncols, r, r == mat.nrows
    )


def oracle_frobenius_jet_number(
    divisor: ToricDivisor, m: int, cone_index: int, p: int, e_cap: int = 4, sections: SectionBasis | None = None
) -> int:
    """Largest e in 1..e_cap at which O(mD) separates p^e-Frobenius jets (0 if none)."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if sections is None:
        sections = enumerate_sections(divisor, m)
    best = 0
    for e in range(1, e_cap + 1):
        if separates(divisor, m, [cone_index], QuotientKind.FROBENIUS, e, p, sections).surjective:
            best = e
    return best


def oracle_classical_jet_number(
    divisor: ToricDivisor, m: int, cone_index: int, l_cap: int, sections: SectionBasis | None = None, p: int = 2
) -> int:
    if sections is None:
        sections = enumerate_sections(divisor, m)
    best = 0
    for ell in range(0, l_cap + 1):
        if separates(divisor, m, [cone_index], QuotientKind.CLASSICAL, ell, p, sections).surjective:
            best = ell
    return best


def two_jet_separates(
    divisor: ToricDivisor, m: int, cone_index: int, e: int, p: int, sections: SectionBasis | None = None
) -> JetInstanceResult:
    return separates(divisor, m, [cone_index], QuotientKind.FROBENIUS_SQUARE, e, p, sections)
