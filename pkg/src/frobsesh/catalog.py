"""Standard smooth projective toric varieties and seeded ample-divisor corpora."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations, product

from .toric import Fan, ToricDivisor, is_ample, require_valid


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = list(combinations(range(n + 1), n))
    return Fan(tuple(rays), tuple(cones))


def product_fan(f1: Fan, f2: Fan) -> Fan:
    n1, n2 = f1.dim, f2.dim
    rays = [r + (0,) * n2 for r in f1.rays] + [(0,) * n1 + r for r in f2.rays]
    off = f1.n_rays
    cones = [c1 + tuple(off + i for i in c2) for c1, c2 in product(f1.max_cones, f2.max_cones)]
    return Fan(tuple(rays), tuple(cones))


def surface_fan(rays) -> Fan:
    """Complete 2-d fan whose maximal cones join angularly adjacent rays."""
    rays = sorted((tuple(r) for r in rays), key=lambda r: math.atan2(r[1], r[0]))
    k = len(rays)
    return Fan(tuple(rays), tuple((i, (i + 1) % k) for i in range(k)))


def hirzebruch(a: int) -> Fan:
    return surface_fan([(1, 0), (0, 1), (-1, a), (0, -1)])


def blowup_p2(k: int) -> Fan:
    """P^2 blown up at k <= 3 torus-fixed points."""
    if not 0 <= k <= 3:
        raise ValueError("only up to three torus-fixed points can be blown up")
    extra = [(1, 1), (-1, 0), (0, -1)][:k]
    return surface_fan([(1, 0), (0, 1), (-1, -1)] + extra)


def p1_bundle_over_p2(a: int) -> Fan:
    """P(O + O(a)) over P^2."""
    rays = ((1, 0, 0), (0, 1, 0), (-1, -1, a), (0, 0, 1), (0, 0, -1))
    base = ((0, 1), (1, 2), (2, 0))
    cones = tuple(c + (t,) for c in base for t in (3, 4))
    return Fan(rays, cones)


def hexagon_fan() -> Fan:
    """Fan of the hexagon with vertices (0,0),(1,0),(2,1),(2,2),(1,2),(0,1)."""
    rays = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
    return Fan(rays, tuple((i, (i + 1) % 6) for i in range(6)))


def hexagon_divisor() -> ToricDivisor:
    return ToricDivisor(hexagon_fan(), (0, 0, 1, 2, 2, 1))


def _catalog() -> dict[str, Fan]:
    cat = {}
    for n in range(1, 5):
        cat[f"P{n}"] = projective_space(n)
    for a, b in [(1, 1), (1, 2), (1, 3), (2, 2)]:
        cat[f"P{a}xP{b}"] = product_fan(projective_space(a), projective_space(b))
    for a in range(0, 5):
        cat[f"F{a}"] = hirzebruch(a)
    for k in range(1, 4):
        cat[f"Bl{k}P2"] = blowup_p2(k)
    for a in range(0, 3):
        cat[f"PP2(O+O({a}))"] = p1_bundle_over_p2(a)
    cat["P1xP1xP1"] = product_fan(product_fan(projective_space(1), projective_space(1)), projective_space(1))
    return cat


CATALOG: dict[str, Fan] = _catalog()
SURFACES = [k for k, f in CATALOG.items() if f.dim == 2]
THREEFOLDS = [k for k, f in CATALOG.items() if f.dim == 3]


class NoAmpleSample(RuntimeError):
    pass


def sample_ample(fan: Fan, rng: random.Random, lo: int = 0, hi: int = 3, tries: int = 2000) -> ToricDivisor:
    """Rejection-sample integer coefficients in [lo, hi] until the divisor is ample."""
    for _ in range(tries):
        d = ToricDivisor(fan, tuple(rng.randint(lo, hi) for _ in range(fan.n_rays)))
        if is_ample(d):
            return d
    raise NoAmpleSample(f"no ample divisor found in [{lo}, {hi}] after {tries} tries")


@dataclass(frozen=True)
class Instance:
    id: str
    fan_name: str
    divisor: ToricDivisor


def corpus(names, count: int, seed: int, lo: int = 0, hi: int = 3) -> list[Instance]:
    """Deterministic list of ``count`` ample instances cycling through ``names``.

    The name ``hexagon`` yields the anticanonical divisor of the hexagon fan.
    """
    names = list(names)
    if not names or count <= 0:
        return []
    for name in names:
        if name != "hexagon" and name not in CATALOG:
            raise KeyError(f"unknown catalog entry {name!r}")
    rng = random.Random(seed)
    out = []
    for k in range(count):
        name = names[k % len(names)]
        if name == "hexagon":
            d = hexagon_divisor()
        else:
            fan = CATALOG[name]
            d = sample_ample(fan, rng, lo, coefficient_hi(name, hi))
        out.append(Instance(f"{k:04d}-{name}", name, d))
    return out


def coefficient_hi(name: str, hi: int) -> int:
    # steep Hirzebruch surfaces rarely come out ample with small coefficients
    if name.startswith("F") and name[1:].isdigit():
        return hi + int(name[1:])
    if name.startswith("PP2"):
        return hi + 1
    return hi


def validate_catalog() -> None:
    for fan in CATALOG.values():
        require_valid(fan)
