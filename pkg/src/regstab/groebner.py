"""Reduced degrevlex Groebner bases, normal forms and ideal operations.

Two constructions produce a :class:`GroebnerBasis`:

* :func:`buchberger` -- generic homogeneous Buchberger with the normal
  selection strategy and the product/chain criteria;
* :func:`macaulay_groebner` (in :mod:`regstab.pieces`) -- degree-by-degree
  elimination, only for m-primary ideals over a prime field, much faster on
  ideal powers.

:func:`groebner` picks between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from .algebra import FieldSpec, IdealSpec, Polynomial, degrevlex_key

ORDER = "degrevlex"


@dataclass(frozen=True)
class GroebnerBasis:
    ideal: IdealSpec
    basis: tuple[Polynomial, ...]
    order: str = ORDER
    method: str = "buchberger"
    _leads: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_leads", tuple(g.lead_monomial for g in self.basis))

    @property
    def field(self) -> FieldSpec:
        return self.ideal.field

    @property
    def nvars(self) -> int:
        return self.ideal.nvars

    @property
    def lead_monomials(self) -> tuple[tuple[int, ...], ...]:
        return self._leads

    def lead_array(self) -> np.ndarray:
        if not self._leads:
            return np.zeros((0, self.nvars), dtype=np.int64)
        return np.array(self._leads, dtype=np.int64)

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self._leads)


# --------------------------------------------------------------------------
# reduction


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(terms: dict, basis: list[tuple[tuple, dict]], F: FieldSpec, full: bool = True) -> dict:
    """Reduce a term dict modulo monic polynomials ``(lead, terms)``."""
    terms = dict(terms)
    out: dict = {}
    while terms:
        m = max(terms, key=degrevlex_key)
        c = terms.pop(m)
        for lead, g in basis:
            if _divides(lead, m):
                q = tuple(a - b for a, b in zip(m, lead))
                for gm, gc in g.items():
                    if gm == lead:
                        continue
                    mm = tuple(a + b for a, b in zip(gm, q))
                    v = F.sub(terms.get(mm, F.zero()), F.mul(c, gc))
                    if v:
                        terms[mm] = v
                    else:
                        terms.pop(mm, None)
                break
        else:
            if not full:
                out[m] = c
                out.update(terms)
                return out
            out[m] = c
    return out


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Full remainder of ``f`` modulo ``G``; zero iff ``f`` lies in the ideal."""
    if f.nvars != G.nvars or f.field != G.field:
        raise ValueError("polynomial and basis live in different rings")
    basis = [(g.lead_monomial, g.monic().terms) for g in G.basis]
    return Polynomial(f.field, f.nvars, _reduce(f.terms, basis, f.field))


# --------------------------------------------------------------------------
# Buchberger


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _spoly(f: dict, lf, g: dict, lg, F: FieldSpec) -> dict:
    L = _lcm(lf, lg)
    qf = tuple(a - b for a, b in zip(L, lf))
    qg = tuple(a - b for a, b in zip(L, lg))
    out: dict = {}
    for m, c in f.items():
        out[tuple(a + b for a, b in zip(m, qf))] = c
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, qg))
        v = F.sub(out.get(mm, F.zero()), c)
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _monic(terms: dict, F: FieldSpec) -> tuple[tuple, dict]:
    lead = max(terms, key=degrevlex_key)
    inv = F.inv(terms[lead])
    return lead, {m: F.mul(c, inv) for m, c in terms.items()}


def _interreduce(polys: list[tuple[tuple, dict]], F: FieldSpec) -> list[tuple[tuple, dict]]:
    # drop elements whose lead is divisible by another lead, then tail-reduce
    polys = sorted(polys, key=lambda p: degrevlex_key(p[0]))
    minimal: list[tuple[tuple, dict]] = []
    for lead, g in polys:
        if not any(_divides(l2, lead) for l2, _ in minimal):
            minimal.append((lead, g))
    out = []
    for i, (lead, g) in enumerate(minimal):
        others = [q for j, q in enumerate(minimal) if j != i]
        tail = dict(g)
        c = tail.pop(lead)
        red = _reduce(tail, others, F)
        red[lead] = c
        out.append(_monic(red, F))
    out.sort(key=lambda p: degrevlex_key(p[0]), reverse=True)
    return out


def buchberger(I: IdealSpec) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm (homogeneous input)."""
    F = I.field
    G: list[tuple[tuple, dict]] = []
    pairs: list[tuple[tuple, int, int]] = []  # (lcm, i, j)
    queue = sorted(
        (g.monic().terms for g in I.generators if not g.is_zero()),
        key=lambda t: degrevlex_key(next(iter(t))),
    )

    def add(h: dict):
        lead, h = _monic(h, F)
        k = len(G)
        # Gebauer-Moeller style update: chain criterion on old pairs
        kept = []
        for L, i, j in pairs:
            if (
                _divides(lead, L)
                and _lcm(G[i][0], lead) != L
                and _lcm(G[j][0], lead) != L
            ):
                continue
            kept.append((L, i, j))
        new = []
        for i, (li, _) in enumerate(G):
            if li is None:
                continue
            new.append((_lcm(li, lead), i, k))
        # among new pairs keep one per lcm, drop those dominated by another lcm
        new.sort(key=lambda x: degrevlex_key(x[0]))
        filtered = []
        for L, i, j in new:
            if any(_divides(L2, L) and L2 != L for L2, _, _ in new):
                continue
            if any(L2 == L for L2, _, _ in filtered):
                continue
            filtered.append((L, i, j))
        # product criterion: coprime leads need no pair
        filtered = [
            (L, i, j)
            for L, i, j in filtered
            if any(a and b for a, b in zip(G[i][0], lead))
        ]
        pairs[:] = kept + filtered
        G.append((lead, h))

    for g in queue:
        red = _reduce(g, [x for x in G if x[0] is not None], F)
        if red:
            add(red)
    while pairs:
        pairs.sort(key=lambda x: (sum(x[0]), degrevlex_key(x[0])), reverse=True)
        L, i, j = pairs.pop()
        s = _spoly(G[i][1], G[i][0], G[j][1], G[j][0], F)
        if not s:
            continue
        red = _reduce(s, G, F)
        if red:
            add(red)
    reduced = _interreduce(G, F)
    basis = tuple(Polynomial(F, I.nvars, t) for _, t in reduced)
    return GroebnerBasis(I, basis, ORDER, "buchberger")


def groebner(I: IdealSpec, method: str = "auto") -> GroebnerBasis:
    """Reduced degrevlex Groebner basis of ``I``.

    ``method="auto"`` tries the degree-by-degree elimination route for prime
    fields and falls back to Buchberger when the ideal is not m-primary.
    """
    if method == "buchberger" or not I.generators:
        return buchberger(I)
    if method in ("auto", "macaulay"):
        from .pieces import NotMPrimary, macaulay_groebner

        if I.field.is_prime or method == "macaulay":
            try:
                return macaulay_groebner(I)
            except NotMPrimary:
                if method == "macaulay":
                    raise
        return buchberger(I)
    raise ValueError(f"unknown method {method!r}")


# --------------------------------------------------------------------------
# ideal operations


def ideal_power(I: IdealSpec, t: int) -> IdealSpec:
    """Generators of ``I^t``: all products of ``t`` generators, deduplicated."""
    if t <= 0:
        raise ValueError("power must be >= 1")
    gens = []
    seen = set()
    for combo in combinations_with_replacement(range(len(I.generators)), t):
        prod = I.generators[combo[0]]
        for k in combo[1:]:
            prod = prod * I.generators[k]
        if prod not in seen:
            seen.add(prod)
            gens.append(prod)
    return I.with_generators(gens)


def ideal_product(I: IdealSpec, H: IdealSpec) -> IdealSpec:
    if I.field != H.field or I.variables != H.variables:
        raise ValueError("ideals live in different rings")
    gens = []
    seen = set()
    for f in I.generators:
        for g in H.generators:
            prod = f * g
            if prod not in seen:
                seen.add(prod)
                gens.append(prod)
    return I.with_generators(gens)


def subideal_up_to_degree(I: IdealSpec, mu: int) -> IdealSpec:
    """The ideal generated by the given generators of degree <= mu."""
    if mu < 0:
        raise ValueError("degree bound must be >= 0")
    return I.with_generators(g for g in I.generators if g.degree <= mu)


def contains_ideal(G: GroebnerBasis, H: IdealSpec) -> bool:
    return all(normal_form(h, G).is_zero() for h in H.generators)


def is_m_primary(G: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the lead monomials."""
    return not missing_pure_powers(G)


def missing_pure_powers(G: GroebnerBasis) -> list[int]:
    """Indices of variables with no pure power among the lead monomials."""
    n = G.nvars
    have = set()
    for m in G.lead_monomials:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            have.add(support[0])
        elif not support:
            return []
    return [i for i in range(n) if i not in have]


def same_ideal(I: IdealSpec, H: IdealSpec) -> bool:
    return contains_ideal(groebner(I), H) and contains_ideal(groebner(H), I)


def binomial(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0
