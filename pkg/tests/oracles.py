"""Independent reference computations used to pin expected values.

Nothing here touches the package's linear algebra or Groebner code:
monomial ideals are handled by direct divisibility enumeration and
non-monomial ideals by sympy's Groebner bases.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

import sympy


def monomials(n, e):
    """All exponent vectors of degree e (any order)."""
    if n == 1:
        return [(e,)]
    return [(a,) + rest for a in range(e, -1, -1) for rest in monomials(n - 1, e - a)]


def monomial_power(gens, t):
    return {tuple(map(sum, zip(*combo))) for combo in combinations_with_replacement(gens, t)}


def divisible(m, gens):
    return any(all(a >= b for a, b in zip(m, g)) for g in gens)


def monomial_quotient_dim(gens, e):
    n = len(gens[0])
    return sum(1 for m in monomials(n, e) if not divisible(m, gens))


def monomial_end(gens):
    """end(A/I) for an m-primary monomial ideal, scanning up to a safe bound."""
    n = len(gens[0])
    top = n * max(sum(g) for g in gens)
    nz = [e for e in range(top + 1) if monomial_quotient_dim(gens, e)]
    return max(nz) if nz else float("-inf")


def monomial_reg_power(gens, t):
    return monomial_end(sorted(monomial_power(gens, t))) + 1


# ----------------------------------------------------------------------------


def to_sympy(I):
    syms = sympy.symbols(" ".join(I.variables))
    syms = syms if isinstance(syms, tuple) else (syms,)
    polys = []
    for g in I.generators:
        expr = 0
        for m, c in g.terms.items():
            term = sympy.Integer(c) if I.field.is_prime else sympy.Rational(c.numerator, c.denominator)
            for s, k in zip(syms, m):
                term *= s**k
            expr += term
        polys.append(expr)
    return polys, syms


def sympy_basis(I):
    polys, syms = to_sympy(I)
    kw = {"modulus": I.field.p} if I.field.is_prime else {}
    return sympy.groebner(polys, *syms, order="grevlex", **kw), syms


def sympy_leads(I):
    G, syms = sympy_basis(I)
    return sorted(sympy.Poly(g, *syms).monoms(order="grevlex")[0] for g in G.exprs)


def sympy_quotient_dim(I, e):
    return monomial_quotient_dim(sympy_leads(I), e)


def sympy_reg(I):
    return monomial_end(sympy_leads(I)) + 1
