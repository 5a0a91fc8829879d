"""Run the seeded corpus scan over surfaces and threefolds and write the report."""

import argparse
import sys
import time

from frobsesh.catalog import SURFACES, THREEFOLDS
from frobsesh.scan import ScanConfig, format_report, run_scan


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--surfaces", type=int, default=100)
    ap.add_argument("--threefolds", type=int, default=20)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--oracle-m-max", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="scan_report.txt")
    args = ap.parse_args()

    t0 = time.perf_counter()
    parts = [
        run_scan(ScanConfig(tuple(SURFACES) + ("hexagon",), args.surfaces, args.seed,
                            oracle_m_max=args.oracle_m_max, workers=args.workers)),
        run_scan(ScanConfig(tuple(THREEFOLDS), args.threefolds, args.seed + 1, hi=1,
                            oracle_m_max=min(args.oracle_m_max, 2), workers=args.workers)),
    ]
    with open(args.out, "w", encoding="utf-8") as fh:
        for rep in parts:
            fh.write(format_report(rep))
    for rep in parts:
        print(" ".join(f"{k}={v}" for k, v in rep.summary.items()))
    print(f"wrote {args.out} in {time.perf_counter() - t0:.1f}s")
    return 0 if all(r.ok for r in parts) else 1


if __name__ == "__main__":
    sys.exit(main())
