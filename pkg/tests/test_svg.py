import re
from fractions import Fraction

import pytest

from frobsesh.catalog import CATALOG, hexagon_divisor
from frobsesh.svg import MARGIN, PX_PER_UNIT, DimensionUnsupported, charted_vertices, render
from frobsesh.toric import ToricDivisor, chart_at


def polygon(svg, name):
    pts = re.search(rf'id="{name}" points="([^"]*)"', svg).group(1)
    return [tuple(float(v) for v in p.split(",")) for p in pts.split()]


def extent(pts):
    xs, ys = [x for x, _ in pts], [y for _, y in pts]
    return (max(xs) - min(xs)) / PX_PER_UNIT, (max(ys) - min(ys)) / PX_PER_UNIT


def test_hexagon_picture():
    svg = render(hexagon_divisor(), 0)
    assert extent(polygon(svg, "cube")) == (1, 1)
    assert extent(polygon(svg, "simplex")) == (1, 1)
    assert len(polygon(svg, "simplex")) == 3
    assert len(polygon(svg, "polytope")) == 6
    assert extent(polygon(svg, "polytope")) == (2, 2)


def test_p2_degree_three():
    d = ToricDivisor(CATALOG["P2"], (0, 0, 3))
    svg = render(d, 0)
    assert extent(polygon(svg, "cube")) == (1.5, 1.5)
    assert extent(polygon(svg, "simplex")) == (3, 3)
    # the simplex is the polytope itself
    assert sorted(polygon(svg, "simplex")) == sorted(polygon(svg, "polytope"))


def test_origin_at_margin():
    svg = render(ToricDivisor(CATALOG["P1xP1"], (0, 1, 0, 2)), 0)
    xs = [x for x, _ in polygon(svg, "polytope")]
    assert min(xs) == MARGIN


def test_vertices_counter_clockwise():
    _, cp = chart_at(hexagon_divisor(), 0)
    v = charted_vertices(cp)
    area2 = sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(v, v[1:] + v[:1]))
    assert area2 == 2 * Fraction(3)


def test_dimension_three_rejected():
    with pytest.raises(DimensionUnsupported):
        render(ToricDivisor(CATALOG["P3"], (0, 0, 0, 1)))
