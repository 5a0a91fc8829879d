"""Closed-form Seshadri and Frobenius-Seshadri constants at torus-fixed points.

At a fixed point the charted polytope has the origin as a vertex and the
coordinate hyperplanes as facets. The classical constant is the largest
scaling of the standard simplex that fits inside it, the Frobenius variant
the largest scaling of the unit cube. Both reduce to one exact ratio per
facet, so no LP solver is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .toric import ChartedPolytope, ToricDivisor, chart_at


class UnboundedPolytope(ValueError):
    pass


class NotNormalized(ValueError):
    pass


class InvalidPrime(ValueError):
    pass


class NoWitness(ValueError):
    pass


@dataclass(frozen=True)
class BindingFacet:
    facet: int  # ray index of the binding facet in the source fan
    vertex: tuple[int, ...]  # vertex of the unit simplex/cube that touches it


@dataclass(frozen=True)
class SeshadriReport:
    cone_index: int
    dim: int
    epsilon: Fraction
    epsilon_frobenius: Fraction
    binding_facet_classical: BindingFacet
    binding_facet_frobenius: BindingFacet


@dataclass(frozen=True)
class JetTableRow:
    m: int
    s_classical: int
    e_frobenius: int
    ratio: Fraction


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidPrime(f"{p!r} is not a prime")


def _inscribed(cp: ChartedPolytope, corner) -> tuple[Fraction, BindingFacet]:
    """Largest r with r*B inside cp, where ``corner(w)`` returns the vertex of
    the unit body B minimizing <w, .> together with that minimum."""
    if any(c > 0 for c in cp.bounds):
        raise NotNormalized("origin is not a point of the charted polytope")
    best = None
    for j, (w, c) in enumerate(zip(cp.normals, cp.bounds)):
        vertex, low = corner(w)
        if low >= 0:
            continue
        r = Fraction(c) / low
        if best is None or r < best[0]:
            facet = cp.facet_rays[j] if cp.facet_rays else j
            best = (r, BindingFacet(facet, vertex))
    if best is None:
        raise UnboundedPolytope("no facet bounds the inscribed body")
    return best


def _simplex_corner(w):
    i = min(range(len(w)), key=lambda k: w[k])
    vertex = tuple(int(k == i) for k in range(len(w)))
    return vertex, min(Fraction(0), Fraction(w[i]))


def _cube_corner(w):
    vertex = tuple(int(x < 0) for x in w)
    return vertex, sum((Fraction(x) for x in w if x < 0), Fraction(0))


def classical_seshadri(cp: ChartedPolytope) -> Fraction:
    return _inscribed(cp, _simplex_corner)[0]


def frobenius_seshadri(cp: ChartedPolytope) -> Fraction:
    return _inscribed(cp, _cube_corner)[0]


def seshadri_report(cp: ChartedPolytope, cone_index: int = -1) -> SeshadriReport:
    eps, wc = _inscribed(cp, _simplex_corner)
    eps_f, wf = _inscribed(cp, _cube_corner)
    return SeshadriReport(cone_index, cp.dim, eps, eps_f, wc, wf)


def report_at(divisor: ToricDivisor, cone_index: int) -> SeshadriReport:
    _, cp = chart_at(divisor, cone_index)
    return seshadri_report(cp, cone_index)


def classical_jet_number(cp: ChartedPolytope, m: int) -> int:
    if m < 1:
        raise ValueError("m must be a positive integer")
    eps = classical_seshadri(cp)
    s = m * eps
    assert s.denominator == 1, f"classical constant {eps} is not integral"
    assert int(s) == (m * eps.numerator) // eps.denominator
    return int(s)


def max_frobenius_exponent(bound: Fraction, p: int) -> int:
    """Largest e >= 0 with p**e - 1 <= bound, in integer arithmetic."""
    a, b = bound.numerator, bound.denominator
    e, q = 0, 1
    while (q * p - 1) * b <= a:
        e += 1
        q *= p
    return e


def frobenius_jet_number(cp: ChartedPolytope, m: int, p: int) -> int:
    _check_prime(p)
    if m < 1:
        raise ValueError("m must be a positive integer")
    return max_frobenius_exponent(m * frobenius_seshadri(cp), p)


def ratio_sequence(cp: ChartedPolytope, p: int, m_max: int = 200) -> list[JetTableRow]:
    _check_prime(p)
    eps = classical_seshadri(cp)
    eps_f = frobenius_seshadri(cp)
    rows = []
    for m in range(1, m_max + 1):
        e = max_frobenius_exponent(m * eps_f, p)
        rows.append(JetTableRow(m, int(m * eps), e, Fraction(p**e - 1, m)))
    return rows


def limsup_subsequence(cp: ChartedPolytope, p: int, e_max: int) -> list[JetTableRow]:
    """Rows at m_e = n(p^e - 1) - 1, one step short of each jump on the simplex."""
    _check_prime(p)
    rows = []
    for e in range(1, e_max + 1):
        m = cp.dim * (p**e - 1) - 1
        if m < 1:
            continue
        s = frobenius_jet_number(cp, m, p)
        rows.append(JetTableRow(m, classical_jet_number(cp, m), s, Fraction(p**s - 1, m)))
    return rows


def find_witness(cp: ChartedPolytope, p: int, m_bound: int = 10_000) -> tuple[int, int]:
    """Smallest m <= m_bound with a positive Frobenius jet number, and that number."""
    eps_f = frobenius_seshadri(cp)
    if eps_f <= 0:
        raise NoWitness("Frobenius-Seshadri constant is zero")
    # need p - 1 <= m * eps_f
    m = max(1, -(-(p - 1) * eps_f.denominator // eps_f.numerator))
    if m > m_bound:
        raise NoWitness(f"no m <= {m_bound} separates Frobenius jets")
    return m, frobenius_jet_number(cp, m, p)


def scaling_check(cp: ChartedPolytope, p: int, r_max: int, m: int | None = None, m_bound: int = 10_000) -> bool:
    """Check s_F(m * d_r) >= r * e for r = 1..r_max, d_r = (p^{re}-1)/(p^e-1).

    ``e`` is the Frobenius jet number at the witness ``m`` (searched if not given).
    """
    _check_prime(p)
    if m is None:
        m, e = find_witness(cp, p, m_bound)
    else:
        e = frobenius_jet_number(cp, m, p)
        if e < 1:
            raise NoWitness(f"m = {m} has Frobenius jet number 0")
    ok = True
    for r in range(1, r_max + 1):
        d_r = (p ** (r * e) - 1) // (p**e - 1)
        ok = ok and frobenius_jet_number(cp, m * d_r, p) >= r * e
    return ok


def sup_attainable(eps_f: Fraction, p: int) -> int | None:
    """Smallest m at which (p^{s_F}-1)/m equals eps_f, or None if never.

    Equality needs p^e - 1 = m * a / b, i.e. a | p^e - 1, which happens iff
    gcd(a, p) = 1; the first such e is the multiplicative order of p mod a.
    """
    a, b = eps_f.numerator, eps_f.denominator
    if a <= 0 or gcd(a, p) != 1:
        return None
    e = 1
    while pow(p, e, a) != 1 % a:
        e += 1
    return b * (p**e - 1) // a
