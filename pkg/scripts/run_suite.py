#!/usr/bin/env python3
"""Randomized verification sweep; prints a per-(n, max_deg) tally and every failing check.

    python3 scripts/run_suite.py --count 30 --seed 7
"""

from __future__ import annotations

import argparse
import time

from regstab.cli import SuiteConfig, run_suite


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--no-strands", action="store_true")
    args = ap.parse_args()

    grid = [(2, 3), (2, 4), (3, 2), (3, 3)]
    for n, D in grid:
        cfg = SuiteConfig(n, D, args.count, args.seed, args.jobs, not args.no_strands)
        t = time.perf_counter()
        res = run_suite(cfg)
        tally = {s: sum(r["status"] == s for r in res) for s in ("pass", "fail", "inconclusive")}
        nondeg = sum(r.get("degenerate") is False for r in res)
        print(f"n<={n} deg<={D}: {tally}  non-degenerate={nondeg}  {time.perf_counter() - t:.1f}s")
        for r in res:
            for c in r["checks"]:
                if c.status == "fail":
                    print(f"  #{r['id']} {c.name}: {c.lhs} {c.relation} {c.rhs}")


if __name__ == "__main__":
    main()
