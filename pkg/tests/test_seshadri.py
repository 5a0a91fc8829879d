from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobsesh.catalog import CATALOG, corpus, hexagon_divisor, projective_space, product_fan
from frobsesh.seshadri import (
    InvalidPrime,
    NotNormalized,
    NoWitness,
    UnboundedPolytope,
    classical_jet_number,
    classical_seshadri,
    frobenius_jet_number,
    frobenius_seshadri,
    limsup_subsequence,
    ratio_sequence,
    report_at,
    scaling_check,
    sup_attainable,
)
from frobsesh.toric import ChartedPolytope, ToricDivisor, chart_at, divisor_combine

NAMES = [k for k in CATALOG if k != "P4"] + ["hexagon"]


def simplex_chart(n, m=1):
    d = ToricDivisor(projective_space(n), (0,) * n + (m,))
    return chart_at(d, 0)[1]


def box_chart(a, b):
    fan = product_fan(projective_space(1), projective_space(1))
    d = ToricDivisor(fan, (0, a, 0, b))
    return chart_at(d, fan.max_cones.index((0, 2)))[1]


def all_charts(count=80, seed=2):
    for inst in corpus(NAMES, count, seed):
        for k in range(len(inst.divisor.fan.max_cones)):
            yield inst.divisor, k, chart_at(inst.divisor, k)[1]


# independent references -------------------------------------------------


def cube_oracle(cp):
    """max r with r * (every 0/1 corner) inside cp, corner by corner."""
    best = None
    for corner in product((0, 1), repeat=cp.dim):
        for w, c in zip(cp.normals, cp.bounds):
            s = sum(x * y for x, y in zip(w, corner))
            if s < 0:
                r = Fraction(c) / s
                best = r if best is None else min(best, r)
    return best


def edge_oracle(cp):
    """r_0: the largest integer r with r * e_i in cp for every i."""
    r = 0
    while all(cp.contains([r + 1 if j == i else 0 for j in range(cp.dim)]) for i in range(cp.dim)):
        r += 1
    return r


def lattice_frobenius_exponent(cp, m, p, e_cap=6):
    """Largest e with every point of {0..p^e-1}^n in m * cp."""
    scaled = cp.scaled(m)
    best = 0
    for e in range(1, e_cap + 1):
        if all(scaled.contains(u) for u in product(range(p**e), repeat=cp.dim)):
            best = e
        else:
            break
    return best


# examples ---------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projective_space(n):
    cp = simplex_chart(n)
    assert classical_seshadri(cp) == 1
    assert frobenius_seshadri(cp) == Fraction(1, n)


def test_hexagon_binding_facet():
    d = hexagon_divisor()
    rep = report_at(d, 0)
    assert rep.epsilon == rep.epsilon_frobenius == 1
    # facet -u1 + u2 >= -1 comes from ray (-1, 1), touched at cube corner (1, 0)
    assert d.fan.rays[rep.binding_facet_frobenius.facet] == (-1, 1)
    assert rep.binding_facet_frobenius.vertex == (1, 0)


@pytest.mark.parametrize("a, b", [(1, 1), (1, 2), (2, 3), (5, 2)])
def test_box(a, b):
    cp = box_chart(a, b)
    assert classical_seshadri(cp) == min(a, b)
    assert frobenius_seshadri(cp) == min(a, b)


def test_classical_jet_number_examples():
    assert classical_jet_number(simplex_chart(2), 7) == 7
    assert classical_jet_number(chart_at(hexagon_divisor(), 0)[1], 3) == 3
    assert classical_jet_number(box_chart(2, 3), 1) == 2


@pytest.mark.parametrize("m, e", [(1, 0), (2, 1), (5, 1), (6, 2), (13, 2), (14, 3)])
def test_frobenius_jet_number_p2(m, e):
    assert frobenius_jet_number(simplex_chart(2), m, 2) == e


def test_frobenius_jet_number_hexagon():
    cp = chart_at(hexagon_divisor(), 0)[1]
    assert frobenius_jet_number(cp, 1, 3) == 0
    assert frobenius_jet_number(cp, 1, 2) == 1


def test_ratio_sequence_projective_space():
    for n in (1, 2, 3):
        for p in (2, 3):
            rows = ratio_sequence(simplex_chart(n), p, 200)
            assert max(r.ratio for r in rows) == Fraction(1, n)
            for r in rows:
                if r.m == n * (p ** r.e_frobenius - 1) and r.e_frobenius > 0:
                    assert r.ratio == Fraction(1, n)
                if r.e_frobenius == 0:
                    assert r.ratio == 0


def test_limsup_subsequence_formula():
    n, p = 2, 2
    rows = limsup_subsequence(simplex_chart(n), p, 10)
    for e, row in zip(range(1, 11), rows):
        assert row.m == n * (p**e - 1) - 1
        assert row.ratio == Fraction(p ** (e - 1) - 1, n * (p**e - 1) - 1)


def test_scaling_check_examples():
    assert scaling_check(simplex_chart(2), 2, 3, m=2)
    assert frobenius_jet_number(simplex_chart(2), 14, 2) == 3
    hexa = chart_at(hexagon_divisor(), 0)[1]
    assert scaling_check(hexa, 2, 2, m=1)
    assert frobenius_jet_number(hexa, 3, 2) >= 2
    assert scaling_check(hexa, 5, 1)
    with pytest.raises(NoWitness):
        scaling_check(hexa, 3, 2, m=1)


def test_errors():
    open_cone = ChartedPolytope(2, ((1, 0), (0, 1)), (0, 0), (0, 1))
    with pytest.raises(UnboundedPolytope):
        classical_seshadri(open_cone)
    with pytest.raises(UnboundedPolytope):
        frobenius_seshadri(open_cone)
    shifted = ChartedPolytope(1, ((1,), (-1,)), (1, -3), (0, 1))
    with pytest.raises(NotNormalized):
        frobenius_seshadri(shifted)
    with pytest.raises(InvalidPrime):
        frobenius_jet_number(simplex_chart(2), 3, 4)


def test_sup_attainable():
    assert sup_attainable(Fraction(1, 2), 2) == 2
    assert sup_attainable(Fraction(1, 3), 2) == 3
    assert sup_attainable(Fraction(2), 2) is None
    assert sup_attainable(Fraction(3, 2), 2) == 2  # 2^2 - 1 = 3 = 2 * 3/2


# invariants over the corpus ---------------------------------------------


def test_closed_forms_match_oracles():
    for _, _, cp in all_charts():
        assert frobenius_seshadri(cp) == cube_oracle(cp)
        assert classical_seshadri(cp) == edge_oracle(cp)


def test_jet_number_matches_lattice_membership():
    for _, _, cp in all_charts(30, seed=9):
        for p in (2, 3):
            for m in (1, 2, 3, 5):
                if cp.dim > 2 and p == 3:
                    continue
                assert frobenius_jet_number(cp, m, p) == lattice_frobenius_exponent(cp, m, p, e_cap=3 if cp.dim < 3 else 2) or (
                    frobenius_jet_number(cp, m, p) > (3 if cp.dim < 3 else 2)
                )


def test_sandwich():
    for _, _, cp in all_charts():
        eps, eps_f = classical_seshadri(cp), frobenius_seshadri(cp)
        assert eps / cp.dim <= eps_f <= eps
        assert eps > 0 and eps.denominator == 1


def test_dimension_one_coincide():
    for inst in corpus(["P1"], 10, seed=1):
        for k in range(2):
            cp = chart_at(inst.divisor, k)[1]
            assert classical_seshadri(cp) == frobenius_seshadri(cp)


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_homogeneity(r):
    for inst in corpus(NAMES, 40, seed=4):
        d = inst.divisor
        dr = divisor_combine(d, d, r, 0)
        for k in range(len(d.fan.max_cones)):
            a, b = chart_at(d, k)[1], chart_at(dr, k)[1]
            assert frobenius_seshadri(b) == r * frobenius_seshadri(a)
            assert classical_seshadri(b) == r * classical_seshadri(a)


def test_supremum_consistency_and_monotonicity():
    for _, _, cp in all_charts(40, seed=6):
        eps_f = frobenius_seshadri(cp)
        for p in (2, 3, 5):
            rows = ratio_sequence(cp, p, 120)
            assert all(r.ratio <= eps_f for r in rows)
            es = [r.e_frobenius for r in rows]
            assert es == sorted(es)
            m_star = sup_attainable(eps_f, p)
            if m_star is not None:
                more = ratio_sequence(cp, p, m_star)
                assert more[-1].ratio == eps_f


@given(st.integers(1, 3), st.integers(1, 6), st.sampled_from([2, 3, 5]), st.integers(1, 3))
def test_scaling_on_simplices(n, m, p, r_max):
    cp = simplex_chart(n, m)
    assert scaling_check(cp, p, r_max)


def test_scaling_corpus():
    for _, _, cp in all_charts(40, seed=8):
        for p in (2, 3, 5):
            assert scaling_check(cp, p, 3)
