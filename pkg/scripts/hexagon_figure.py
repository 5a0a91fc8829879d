"""Draw the hexagon polytope at each fixed point with its inscribed square and triangle."""

import argparse
from pathlib import Path

from frobsesh.catalog import hexagon_divisor
from frobsesh.seshadri import report_at
from frobsesh.svg import render


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="figures")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    d = hexagon_divisor()
    for k in range(len(d.fan.max_cones)):
        rep = report_at(d, k)
        path = out / f"hexagon_cone{k}.svg"
        path.write_text(render(d, k), encoding="utf-8")
        print(f"cone {k}: epsilon={rep.epsilon} epsilon_F={rep.epsilon_frobenius} -> {path}")


if __name__ == "__main__":
    main()
