"""SVG picture of a charted polygon with its largest inscribed square and triangle."""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

from .seshadri import classical_seshadri, frobenius_seshadri
from .toric import ChartedPolytope, ToricDivisor, chart_at

PX_PER_UNIT = 60
MARGIN = 30
POLYGON_STYLE = 'fill="lightgray" stroke="black" stroke-width="2"'
CUBE_STYLE = 'fill="none" stroke="#1f4e9c" stroke-width="4" stroke-dasharray="8,5"'
SIMPLEX_STYLE = 'fill="none" stroke="#b3261e" stroke-width="4" stroke-dasharray="3,4"'


class DimensionUnsupported(ValueError):
    pass


def charted_vertices(cp: ChartedPolytope) -> list[tuple[Fraction, Fraction]]:
    """Vertices of a 2-d charted polygon in counter-clockwise order."""
    pts = set()
    for i, j in combinations(range(len(cp.normals)), 2):
        a = [cp.normals[i], cp.normals[j]]
        if a[0][0] * a[1][1] - a[0][1] * a[1][0] == 0:
            continue
        x = _solve2(a, [cp.bounds[i], cp.bounds[j]])
        if cp.contains(x):
            pts.add(x)
    cx = sum(x for x, _ in pts) / len(pts)
    cy = sum(y for _, y in pts) / len(pts)
    # exact angular sort: half-plane first, then cross product
    def half(v):
        dx, dy = v[0] - cx, v[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(u, v):
        hu, hv = half(u), half(v)
        if hu != hv:
            return hu - hv
        cross = (u[0] - cx) * (v[1] - cy) - (u[1] - cy) * (v[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(pts, key=cmp_to_key(cmp))


def _solve2(a, b):
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    x = (b[0] * a[1][1] - a[0][1] * b[1]) / det
    y = (a[0][0] * b[1] - b[0] * a[1][0]) / det
    return (Fraction(x), Fraction(y))


def render(divisor: ToricDivisor, cone_index: int = 0) -> str:
    if divisor.fan.dim != 2:
        raise DimensionUnsupported(f"SVG output needs a surface, got dimension {divisor.fan.dim}")
    _, cp = chart_at(divisor, cone_index)
    eps = classical_seshadri(cp)
    eps_f = frobenius_seshadri(cp)
    verts = charted_vertices(cp)
    xmin = min(min(x for x, _ in verts), 0)
    ymax = max(max(y for _, y in verts), 0)
    width = (max(x for x, _ in verts) - xmin) * PX_PER_UNIT + 2 * MARGIN
    height = (ymax - min(min(y for _, y in verts), 0)) * PX_PER_UNIT + 2 * MARGIN

    def pt(x, y):
        # y axis points down in SVG
        return f"{float((x - xmin) * PX_PER_UNIT + MARGIN):g},{float((ymax - y) * PX_PER_UNIT + MARGIN):g}"

    poly = " ".join(pt(x, y) for x, y in verts)
    cube = " ".join(pt(x, y) for x, y in [(0, 0), (eps_f, 0), (eps_f, eps_f), (0, eps_f)])
    simplex = " ".join(pt(x, y) for x, y in [(0, 0), (eps, 0), (0, eps)])
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{float(width):g}" height="{float(height):g}">',
        f"  <!-- cone {cone_index}: epsilon={eps} epsilon_F={eps_f} -->",
        f'  <polygon id="polytope" points="{poly}" {POLYGON_STYLE}/>',
        f'  <polygon id="cube" points="{cube}" {CUBE_STYLE}/>',
        f'  <polygon id="simplex" points="{simplex}" {SIMPLEX_STYLE}/>',
        f'  <circle cx="{pt(0, 0).split(",")[0]}" cy="{pt(0, 0).split(",")[1]}" r="4" fill="black"/>',
        "</svg>",
    ]
    return "\n".join(lines) + "\n"
