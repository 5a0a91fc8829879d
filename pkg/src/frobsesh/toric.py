"""Smooth complete toric varieties from fan data.

A divisor ``D = sum a_i D_i`` has polytope ``P_D = {u : <u, v_i> >= -a_i}``.
Each maximal cone ``sigma`` gives a candidate vertex ``u_sigma`` cut out by
the equalities of its rays; nefness, ampleness and global generation are all
read off from where these candidates sit relative to the other facets.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from . import lattice
from .lattice import IntMatrix, RatVector


class MalformedFan(ValueError):
    pass


class FanMismatch(ValueError):
    pass


class NotAVertex(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "max_cones", tuple(tuple(int(i) for i in c) for c in self.max_cones))

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def cone_matrix(self, cone_index: int) -> IntMatrix:
        """Ray generators of a maximal cone, one per row."""
        return tuple(self.rays[i] for i in self.max_cones[cone_index])


@dataclass(frozen=True)
class FanDiagnostics:
    smooth: bool
    complete: bool
    offending_items: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.smooth and self.complete


@dataclass(frozen=True)
class ToricDivisor:
    fan: Fan
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) != self.fan.n_rays:
            raise ValueError(f"{len(self.coeffs)} coefficients for {self.fan.n_rays} rays")

    def scaled(self, m: int) -> "ToricDivisor":
        return ToricDivisor(self.fan, tuple(m * a for a in self.coeffs))


@dataclass(frozen=True)
class LatticePolytopeH:
    """``{u : <u, normal_j> >= -bound_j}`` together with its vertex list."""

    normals: tuple[tuple[int, ...], ...]
    bounds: tuple[int, ...]
    vertices: tuple[RatVector, ...]

    @property
    def dim(self) -> int:
        return len(self.normals[0])

    def contains(self, u: Sequence) -> bool:
        return all(lattice.dot(u, v) >= -b for v, b in zip(self.normals, self.bounds))


@dataclass(frozen=True)
class VertexChart:
    cone_index: int
    vertex: RatVector
    # rows are the rays of the cone: local exponents = to_local @ (u - vertex)
    to_local: IntMatrix

    def local(self, u: Sequence, m: int = 1) -> tuple:
        shifted = [x - m * y for x, y in zip(u, self.vertex)]
        return lattice.matvec(self.to_local, shifted)


@dataclass(frozen=True)
class ChartedPolytope:
    """Polytope in local coordinates at a fixed point: ``<w_F, u> >= c_F``.

    The first ``dim`` inequalities are the coordinate facets ``u_i >= 0``.
    ``facet_rays[j]`` is the ray index of the fan that produced inequality j.
    """

    dim: int
    normals: tuple[tuple[Fraction, ...], ...]
    bounds: tuple[Fraction, ...]
    facet_rays: tuple[int, ...] = field(default=())

    def contains(self, u: Sequence) -> bool:
        return all(lattice.dot(w, u) >= c for w, c in zip(self.normals, self.bounds))

    def scaled(self, m) -> "ChartedPolytope":
        return ChartedPolytope(self.dim, self.normals, tuple(m * c for c in self.bounds), self.facet_rays)


def validate_fan(fan: Fan) -> FanDiagnostics:
    """Check smoothness and completeness of a simplicial fan.

    Completeness uses ridge pairing: every codimension-one face of a maximal
    cone must lie in exactly two maximal cones, and those two cones must sit on
    opposite sides of the ridge. Full face-intersection is not verified.
    """
    if not fan.rays:
        raise MalformedFan("fan has no rays")
    n = fan.dim
    if n < 1:
        raise MalformedFan("rays must have positive dimension")
    for i, r in enumerate(fan.rays):
        if len(r) != n:
            raise MalformedFan(f"ray {i} has dimension {len(r)}, expected {n}")
        if not lattice.is_primitive(r):
            raise MalformedFan(f"ray {i} = {r} is not primitive")
    for k, cone in enumerate(fan.max_cones):
        if len(cone) != n:
            raise MalformedFan(f"cone {k} has {len(cone)} rays, expected {n}")
        if len(set(cone)) != n:
            raise MalformedFan(f"cone {k} repeats a ray")
        for i in cone:
            if not 0 <= i < fan.n_rays:
                raise MalformedFan(f"cone {k} references ray {i}, out of range")

    offending = []
    smooth = True
    for k in range(len(fan.max_cones)):
        d = lattice.det(fan.cone_matrix(k))
        if abs(d) != 1:
            smooth = False
            offending.append(f"cone {k} {fan.max_cones[k]} has det {d}")

    complete = bool(fan.max_cones)
    seen = Counter(frozenset(c) for c in fan.max_cones)
    for cone, count in seen.items():
        if count > 1:
            complete = False
            offending.append(f"cone {sorted(cone)} listed {count} times")

    ridges: dict[frozenset, list[int]] = {}
    for k, cone in enumerate(fan.max_cones):
        for ridge in combinations(sorted(cone), n - 1):
            ridges.setdefault(frozenset(ridge), []).append(k)
    for ridge, owners in sorted(ridges.items(), key=lambda kv: sorted(kv[0])):
        if len(owners) != 2:
            complete = False
            offending.append(f"ridge {sorted(ridge)} lies in {len(owners)} maximal cones")
            continue
        if not _opposite_sides(fan, ridge, owners):
            complete = False
            offending.append(f"cones {owners} lie on the same side of ridge {sorted(ridge)}")
    if not fan.max_cones:
        offending.append("fan has no maximal cones")
    return FanDiagnostics(smooth, complete, tuple(offending))


def _opposite_sides(fan: Fan, ridge: frozenset, owners: list[int]) -> bool:
    n = fan.dim
    extra = [next(i for i in fan.max_cones[k] if i not in ridge) for k in owners]
    if n == 1:
        a, b = fan.rays[extra[0]][0], fan.rays[extra[1]][0]
        return a * b < 0
    base = [fan.rays[i] for i in sorted(ridge)]
    sides = [lattice.det(base + [fan.rays[j]]) for j in extra]
    return sides[0] * sides[1] < 0


def require_valid(fan: Fan) -> None:
    diag = validate_fan(fan)
    if not diag.ok:
        raise MalformedFan("; ".join(diag.offending_items) or "fan is not smooth and complete")


def candidate_vertex(divisor: ToricDivisor, cone_index: int) -> RatVector:
    """Solve <u, v_i> = -a_i over the rays of one maximal cone."""
    fan = divisor.fan
    cone = fan.max_cones[cone_index]
    rhs = [-divisor.coeffs[i] for i in cone]
    return lattice.solve_exact(fan.cone_matrix(cone_index), rhs)


def _slacks(divisor: ToricDivisor, u: Sequence) -> list:
    return [lattice.dot(u, v) + a for v, a in zip(divisor.fan.rays, divisor.coeffs)]


def polytope_of(divisor: ToricDivisor) -> LatticePolytopeH:
    fan = divisor.fan
    verts = set()
    for k in range(len(fan.max_cones)):
        u = candidate_vertex(divisor, k)
        if all(s >= 0 for s in _slacks(divisor, u)):
            verts.add(u)
    return LatticePolytopeH(fan.rays, divisor.coeffs, tuple(sorted(verts)))


def chart_at(divisor: ToricDivisor, cone_index: int) -> tuple[VertexChart, ChartedPolytope]:
    fan = divisor.fan
    n = fan.dim
    u0 = candidate_vertex(divisor, cone_index)
    slack = _slacks(divisor, u0)
    bad = [i for i, s in enumerate(slack) if s < 0]
    if bad:
        raise NotAVertex(
            f"candidate vertex {tuple(map(str, u0))} of cone {cone_index} violates facets {bad}"
        )
    to_local = fan.cone_matrix(cone_index)
    inv = lattice.invert_unimodular(to_local)
    inv_t = lattice.transpose(inv)

    cone = fan.max_cones[cone_index]
    order = list(cone) + [i for i in range(fan.n_rays) if i not in cone]
    normals, bounds = [], []
    for i in order:
        # <u, v> >= -a with u = u0 + inv @ w  becomes  <inv^T v, w> >= -a - <u0, v>
        w = lattice.matvec(inv_t, fan.rays[i])
        normals.append(tuple(Fraction(x) for x in w))
        bounds.append(-Fraction(divisor.coeffs[i]) - lattice.dot(u0, fan.rays[i]))
    chart = VertexChart(cone_index, u0, to_local)
    return chart, ChartedPolytope(n, tuple(normals), tuple(bounds), tuple(order))


def divisor_combine(d1: ToricDivisor, d2: ToricDivisor, s1: int, s2: int) -> ToricDivisor:
    if d1.fan != d2.fan:
        raise FanMismatch("divisors live on different fans")
    return ToricDivisor(d1.fan, tuple(s1 * a + s2 * b for a, b in zip(d1.coeffs, d2.coeffs)))


def nef_at(divisor: ToricDivisor, cone_index: int) -> bool:
    u = candidate_vertex(divisor, cone_index)
    return all(s >= 0 for s in _slacks(divisor, u))


def ample_at(divisor: ToricDivisor, cone_index: int) -> bool:
    u = candidate_vertex(divisor, cone_index)
    cone = set(divisor.fan.max_cones[cone_index])
    return all(s > 0 for i, s in enumerate(_slacks(divisor, u)) if i not in cone)


def is_nef(divisor: ToricDivisor) -> bool:
    return all(nef_at(divisor, k) for k in range(len(divisor.fan.max_cones)))


def is_ample(divisor: ToricDivisor) -> bool:
    return all(ample_at(divisor, k) for k in range(len(divisor.fan.max_cones)))


def ampleness_witness(divisor: ToricDivisor) -> str | None:
    """Describe the first failure of strict convexity, or None if ample."""
    fan = divisor.fan
    for k, cone in enumerate(fan.max_cones):
        u = candidate_vertex(divisor, k)
        for i, s in enumerate(_slacks(divisor, u)):
            if i not in cone and s <= 0:
                return f"cone {k}: vertex {tuple(map(str, u))} has slack {s} on ray {i} {fan.rays[i]}"
    return None


def is_gg_at(divisor: ToricDivisor, cone_index: int) -> bool:
    u = candidate_vertex(divisor, cone_index)
    if any(x.denominator != 1 for x in u):
        return False
    return all(s >= 0 for s in _slacks(divisor, u))


def is_globally_generated(divisor: ToricDivisor) -> bool:
    return all(is_gg_at(divisor, k) for k in range(len(divisor.fan.max_cones)))


def adjoint_divisor(divisor: ToricDivisor) -> ToricDivisor:
    """K_X + D, using K_X = -(sum of all boundary divisors)."""
    return ToricDivisor(divisor.fan, tuple(a - 1 for a in divisor.coeffs))


def anticanonical(fan: Fan) -> ToricDivisor:
    return ToricDivisor(fan, (1,) * fan.n_rays)


def transform_fan(fan: Fan, g: Sequence[Sequence[int]], perm: Sequence[int] | None = None) -> Fan:
    """Apply a lattice automorphism ``g`` of N to the rays, then relabel them.

    ``perm[i]`` is the new index of old ray ``i``.
    """
    perm = list(perm) if perm is not None else list(range(fan.n_rays))
    new_rays: list = [None] * fan.n_rays
    for i, r in enumerate(fan.rays):
        new_rays[perm[i]] = lattice.matvec(g, r)
    cones = tuple(tuple(perm[i] for i in c) for c in fan.max_cones)
    return Fan(tuple(new_rays), cones)


def transform_divisor(divisor: ToricDivisor, g, perm=None) -> ToricDivisor:
    perm = list(perm) if perm is not None else list(range(divisor.fan.n_rays))
    coeffs: list = [0] * len(perm)
    for i, a in enumerate(divisor.coeffs):
        coeffs[perm[i]] = a
    return ToricDivisor(transform_fan(divisor.fan, g, perm), tuple(coeffs))
