"""Random and named m-primary test ideals."""

from __future__ import annotations

import random

from .algebra import DEFAULT_FIELD, FieldSpec, IdealSpec, Polynomial, basis_tuples, ideal_from_monomials

VARS = ("x", "y", "z", "w")


def random_form(rng: random.Random, field: FieldSpec, n: int, e: int, density: float = 1.0) -> Polynomial:
    mons = list(basis_tuples(n, e))
    k = max(1, round(density * len(mons)))
    hi = field.p - 1 if field.is_prime else 9
    terms = {m: rng.randint(1, hi) for m in rng.sample(mons, k)}
    return Polynomial(field, n, terms)


def random_mprimary(
    rng: random.Random,
    n: int,
    max_deg: int,
    extra: int | None = None,
    field: FieldSpec = DEFAULT_FIELD,
    min_deg: int = 1,
) -> IdealSpec:
    """Pure powers x_i^{d_i} (so the ideal is m-primary) plus random extra forms."""
    degs = [rng.randint(max(min_deg, 1), max_deg) for _ in range(n)]
    gens = [Polynomial.monomial(field, n, tuple(d if j == i else 0 for j in range(n))) for i, d in enumerate(degs)]
    if extra is None:
        extra = rng.randint(1, 2)
    for _ in range(extra):
        e = rng.randint(max(min_deg, 2), max(max_deg, 2))
        gens.append(random_form(rng, field, n, e, density=rng.choice((0.34, 0.67, 1.0))))
    return IdealSpec(field, VARS[:n], tuple(gens))


def complete_intersection(n: int, d: int, field: FieldSpec = DEFAULT_FIELD) -> IdealSpec:
    """(x_1^d, ..., x_n^d)."""
    return ideal_from_monomials([tuple(d if j == i else 0 for j in range(n)) for i in range(n)], field, VARS[:n])


def maximal_ideal(n: int, field: FieldSpec = DEFAULT_FIELD) -> IdealSpec:
    return complete_intersection(n, 1, field)
