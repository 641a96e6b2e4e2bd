"""Hilbert functions of Artinian quotients A/I from lead monomials."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import NEG_INF, basis_tuples, count_monomials
from .groebner import GroebnerBasis, binomial, is_m_primary, missing_pure_powers


class NotArtinian(ValueError):
    """A/I has infinite length, so its end degree would be +infinity."""


def hilbert_function(G: GroebnerBasis, e: int) -> int:
    """dim_k (A/I)_e: the number of degree-e standard monomials."""
    if e < 0:
        return 0
    n = G.nvars
    leads = G.lead_array()
    total = count_monomials(n, e)
    if leads.shape[0] == 0:
        return total
    leads = leads[leads.sum(axis=1) <= e]
    if leads.shape[0] == 0:
        return total
    mons = np.array(basis_tuples(n, e), dtype=np.int64)
    divisible = (mons[:, None, :] >= leads[None, :, :]).all(axis=2).any(axis=1)
    return int(total - divisible.sum())


@dataclass(frozen=True)
class HilbertTable:
    """dim (A/I)_e for e = 0..end+1; ``end`` is -inf for the zero quotient."""

    dims: tuple[int, ...]
    end: int | float

    def __getitem__(self, e: int) -> int:
        if e < 0 or e >= len(self.dims):
            return 0
        return self.dims[e]


def hilbert_table(G: GroebnerBasis) -> HilbertTable:
    if not is_m_primary(G):
        raise NotArtinian(
            f"quotient is not Artinian: no pure power of variable(s) {missing_pure_powers(G)}"
        )
    dims = []
    e = 0
    while True:
        h = hilbert_function(G, e)
        dims.append(h)
        if h == 0:
            break
        e += 1
    end = len(dims) - 2 if len(dims) > 1 else NEG_INF
    return HilbertTable(tuple(dims), end)


def artinian_end(G: GroebnerBasis) -> int | float:
    """Largest e with (A/I)_e != 0.

    The scan stops at the first vanishing degree: a graded quotient of A is
    generated in degree 0, so one zero piece forces all later ones to vanish.
    """
    return hilbert_table(G).end


def reg_mprimary(G: GroebnerBasis) -> int | float:
    """reg(I) = end(A/I) + 1 for m-primary I."""
    return artinian_end(G) + 1


def ci_power_dimension(degrees, base: HilbertTable, mu: int, t: int) -> int:
    """dim_k (A/I^t)_{mu+td} for a complete intersection of n forms of one degree d.

    ``base`` is the Hilbert table of A/I.  Evaluates
    sum_{i=0}^{t-1} C(i+n-1, n-1) * dim (A/I)_{mu+(t-i)d}.
    """
    degrees = list(degrees)
    if not degrees:
        raise ValueError("need at least one degree")
    if len(set(degrees)) != 1:
        raise NotImplementedError("only equigenerated complete intersections are supported")
    if t < 1:
        raise ValueError("power must be >= 1")
    n = len(degrees)
    d = degrees[0]
    return sum(binomial(i + n - 1, n - 1) * base[mu + (t - i) * d] for i in range(t))
