"""Tabulate (p^{s_F(m)} - 1)/m on P^n against 1/n and the 1/(np) subsequence."""

import argparse
from fractions import Fraction

from frobsesh.catalog import projective_space
from frobsesh.seshadri import limsup_subsequence, ratio_sequence
from frobsesh.toric import ToricDivisor, chart_at


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--e-max", type=int, default=10)
    ap.add_argument("--m-max", type=int, default=200)
    args = ap.parse_args()

    n, p = args.n, args.p
    cp = chart_at(ToricDivisor(projective_space(n), (0,) * n + (1,)), 0)[1]
    rows = ratio_sequence(cp, p, args.m_max)
    best = max(rows, key=lambda r: r.ratio)
    print(f"sup over m <= {args.m_max}: {best.ratio} at m = {best.m} (1/n = {Fraction(1, n)})")
    print(f"{'e':>3} {'m_e':>8} {'s_F':>4} {'ratio':>14} {'float':>10}   target 1/(np) = {1 / (n * p):.6f}")
    for e, r in enumerate(limsup_subsequence(cp, p, args.e_max), start=1):
        print(f"{e:>3} {r.m:>8} {r.e_frobenius:>4} {str(r.ratio):>14} {float(r.ratio):>10.6f}")


if __name__ == "__main__":
    main()
