#!/usr/bin/env python3
"""Hilbert functions of powers of monomial complete intersections, closed form vs. elimination.

    python3 scripts/ci_table.py --n 3 --d 2 --tmax 4
"""

from __future__ import annotations

import argparse

from regstab.groebner import groebner
from regstab.hilbert import ci_power_dimension, hilbert_table
from regstab.instances import complete_intersection
from regstab.pieces import engine_for


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--tmax", type=int, default=4)
    args = ap.parse_args()
    n, d = args.n, args.d
    I = complete_intersection(n, d)
    base = hilbert_table(groebner(I))
    eng = engine_for(I)
    top = (n - 1) * (d - 1)
    mus = range(-d, top + 2)
    print("t\\mu " + " ".join(f"{mu:>5d}" for mu in mus) + "   reg  td+(n-1)(d-1)")
    for t in range(1, args.tmax + 1):
        cells = []
        for mu in mus:
            a, b = ci_power_dimension([d] * n, base, mu, t), eng.hilbert(t, mu + t * d)
            cells.append(f"{a:>5d}" if a == b else f"{a}!={b}")
        print(f"{t:>4d} " + " ".join(cells) + f"   {eng.full_threshold(t):>3d}  {t * d + top:>3d}")


if __name__ == "__main__":
    main()
