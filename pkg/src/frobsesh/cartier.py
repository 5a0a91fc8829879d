"""The trace map on top forms ``k[y_1..y_n] dy`` over F_p.

``T(y^i dy) = y^{(i - (p-1))/p} dy`` when every coordinate of ``i`` is
congruent to ``p - 1`` mod p, and zero otherwise. Coefficients live in the
prime field, where Frobenius acts trivially, so they pass through unchanged.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class CapTooSmall(ValueError):
    pass


@dataclass
class MonomialForm:
    """Sum of ``coeff * y^exponent dy`` with coefficients in F_p."""

    p: int
    n: int
    terms: dict[Exponent, int] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[Exponent, int] = {}
        for a, c in self.terms.items():
            a = tuple(int(x) for x in a)
            if len(a) != self.n or any(x < 0 for x in a):
                raise ValueError(f"bad exponent {a} for {self.n} variables")
            c = (clean.get(a, 0) + c) % self.p
            if c:
                clean[a] = c
            else:
                clean.pop(a, None)
        self.terms = clean

    @classmethod
    def monomial(cls, p: int, exponent: Sequence[int], coeff: int = 1) -> "MonomialForm":
        return cls(p, len(exponent), {tuple(exponent): coeff})

    def __eq__(self, other):
        if not isinstance(other, MonomialForm):
            return NotImplemented
        return (self.p, self.n, self.terms) == (other.p, other.n, other.terms)

    def __add__(self, other: "MonomialForm") -> "MonomialForm":
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, 0) + c
        return MonomialForm(self.p, self.n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def times(self, f: Mapping[Exponent, int]) -> "MonomialForm":
        """Multiply by the polynomial function ``f`` (exponent -> coefficient)."""
        out: dict[Exponent, int] = {}
        for a, c in self.terms.items():
            for b, d in f.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = (out.get(k, 0) + c * d) % self.p
        return MonomialForm(self.p, self.n, out)


def poly_mul(f: Mapping[Exponent, int], g: Mapping[Exponent, int], p: int) -> dict[Exponent, int]:
    out: dict[Exponent, int] = {}
    for a, c in f.items():
        for b, d in g.items():
            k = tuple(x + y for x, y in zip(a, b))
            out[k] = (out.get(k, 0) + c * d) % p
    return {k: c for k, c in out.items() if c}


def poly_pow(f: Mapping[Exponent, int], k: int, p: int) -> dict[Exponent, int]:
    n = len(next(iter(f))) if f else 0
    out: dict[Exponent, int] = {(0,) * n: 1}
    for _ in range(k):
        out = poly_mul(out, f, p)
    return out


def _trace_q(f: MonomialForm, q: int) -> MonomialForm:
    out: dict[Exponent, int] = {}
    for a, c in f.terms.items():
        if all(x % q == q - 1 for x in a):
            k = tuple((x - (q - 1)) // q for x in a)
            out[k] = out.get(k, 0) + c
    return MonomialForm(f.p, f.n, out)


def trace(f: MonomialForm) -> MonomialForm:
    return _trace_q(f, f.p)


def trace_iterate(f: MonomialForm, e: int) -> MonomialForm:
    if e < 1:
        raise ValueError("e must be at least 1")
    g = f
    for _ in range(e):
        g = trace(g)
    direct = _trace_q(f, f.p**e)
    assert g == direct, "iterated trace disagrees with the one-step p^e rule"
    return g


def _in_ideal(a: Exponent, generators: Iterable[Exponent]) -> bool:
    return any(all(x >= g for x, g in zip(a, gen)) for gen in generators)


def trace_ideal_check(generators: Sequence[Sequence[int]], e: int, p: int, degree_cap: int) -> bool:
    """Check T^e(J^{[q]} w) = J w on monomials of total degree <= degree_cap.

    (a) every monomial of J^{[q]} dy maps into J dy;
    (b) every monomial y^a of J whose witness y^{q a + (q-1)1} fits under the
        cap is hit by that witness, which lies in J^{[q]}.
    Raises CapTooSmall if some generator's own witness exceeds the cap.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    q = p**e
    frob_gens = [tuple(q * x for x in g) for g in gens]
    for g in gens:
        if q * sum(g) + n * (q - 1) > degree_cap:
            raise CapTooSmall(f"witness for generator {g} has degree above {degree_cap}")

    ok = True
    for b in _monomials(n, degree_cap):
        if not _in_ideal(b, frob_gens):
            continue
        img = trace_iterate(MonomialForm.monomial(p, b), e)
        ok = ok and all(_in_ideal(a, gens) for a in img.terms)
    for a in _monomials(n, (degree_cap - n * (q - 1)) // q):
        if not _in_ideal(a, gens):
            continue
        w = tuple(q * x + q - 1 for x in a)
        ok = ok and _in_ideal(w, frob_gens)
        ok = ok and trace_iterate(MonomialForm.monomial(p, w), e) == MonomialForm.monomial(p, a)
    return ok


def _monomials(n: int, degree: int):
    if degree < 0:
        return
    for a in product(range(degree + 1), repeat=n):
        if sum(a) <= degree:
            yield a


_TERM = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?((?:y\d*(?:\^\d+)?\s*\*?\s*)*)dy\s*$")
_FACTOR = re.compile(r"y(\d*)(?:\^(\d+))?")


def parse_form(text: str, p: int, n: int | None = None) -> MonomialForm:
    """Parse e.g. ``"y^3 dy"`` or ``"2*y1^2*y2 dy + y2 dy"``; ``"0"`` is zero."""
    text = text.strip()
    if text == "0":
        return MonomialForm(p, n or 1)
    parsed = []
    width = n or 1
    for chunk in text.split("+"):
        mt = _TERM.match(chunk)
        if not mt:
            raise ValueError(f"cannot parse term {chunk.strip()!r}")
        coeff = int(mt.group(1) or 1)
        powers: dict[int, int] = {}
        for var, exp in _FACTOR.findall(mt.group(2) or ""):
            idx = int(var) if var else 1
            if idx < 1:
                raise ValueError("variables are numbered from 1")
            powers[idx] = powers.get(idx, 0) + int(exp or 1)
            width = max(width, idx) if n is None else width
        parsed.append((coeff, powers))
    if n is not None and any(i > n for _, pw in parsed for i in pw):
        raise ValueError(f"term uses a variable beyond y{n}")
    terms: dict[Exponent, int] = {}
    for coeff, powers in parsed:
        a = tuple(powers.get(i + 1, 0) for i in range(width))
        terms[a] = terms.get(a, 0) + coeff
    return MonomialForm(p, width, terms)


def format_form(f: MonomialForm) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for a in sorted(f.terms):
        c = f.terms[a]
        factors = []
        for i, x in enumerate(a):
            if x == 0:
                continue
            name = "y" if f.n == 1 else f"y{i + 1}"
            factors.append(name if x == 1 else f"{name}^{x}")
        mono = "*".join(factors)
        lead = "" if c == 1 else f"{c}*" if mono else f"{c} "
        parts.append(f"{lead}{mono} dy" if mono else f"{lead}dy")
    return " + ".join(parts)
