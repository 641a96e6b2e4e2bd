#!/usr/bin/env python3
"""Rees strand at mu = b for (x^3, y^3, z^3, general cubic): f = 2,2,2,1,... so Stab = 4 > n.

Prints the Koszul Betti table of the strand, reg_B, the end of H^1 and the checks.
"""

from __future__ import annotations

import random

from regstab.algebra import DEFAULT_FIELD, IdealSpec, Polynomial
from regstab.instances import random_form
from regstab.report import fmt
from regstab.stabilization import stabilization_report
from regstab.strands import verify_simple_stab


def main(seed: int = 3) -> None:
    rng = random.Random(seed)
    n = 3
    gens = [Polynomial.monomial(DEFAULT_FIELD, n, tuple(3 * (j == i) for j in range(n))) for i in range(n)]
    gens.append(random_form(rng, DEFAULT_FIELD, n, 3))
    I = IdealSpec(DEFAULT_FIELD, ("x", "y", "z"), tuple(gens))
    rep = stabilization_report(I)
    print(I)
    print(f"d={rep.d} b={rep.b} c={rep.c} t0={rep.t0} Stab={rep.stab} f={rep.fvals()}")
    v = verify_simple_stab(I, seed, rep=rep)
    beta = v.result["betti"]["beta"]
    print("j\\t " + " ".join(f"{t:>3d}" for t in range(len(beta[0]))))
    for j, row in enumerate(beta):
        print(f"{j:>3d} " + " ".join(f"{x:>3d}" for x in row))
    print(f"reg_B={fmt(v.result['reg_B'])} end_h1={fmt(v.result['cohomology']['end_h1'])}")
    for c in v.checks:
        print(f"  {c.status:12s} {c.name}: {fmt(c.lhs)} {c.relation} {fmt(c.rhs)}")


if __name__ == "__main__":
    main()
