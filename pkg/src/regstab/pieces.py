"""Graded pieces (I^t)_e of ideal powers, by exact linear algebra.

``(I^t)_e`` is spanned by ``f * (I^{t-1})_{e - deg f}`` over the generators f
of I.  Each piece is kept in reduced row echelon form with respect to the
descending-degrevlex monomial basis of A_e, so the pivot columns are exactly
the lead monomials of degree e of I^t and the non-pivot columns are the
standard monomials.  This yields Hilbert functions, normal-form projections
and reduced Groebner bases of powers without ever expanding the products of
generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache, cached_property

import numpy as np

from .algebra import (
    IdealSpec,
    Polynomial,
    basis_index,
    basis_tuples,
    count_monomials,
)
from .linalg import as_field_array, mat_mul, rref, zeros


class NotMPrimary(ValueError):
    """The ideal is not primary to the irrelevant maximal ideal."""


@dataclass
class Piece:
    """RREF basis of a subspace of A_e."""

    degree: int
    rows: np.ndarray  # r x dim A_e
    pivots: list[int]
    ambient: int

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.pivots)

    @property
    def full(self) -> bool:
        return len(self.pivots) == self.ambient

    @cached_property
    def standard(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def project(self, V: np.ndarray, field) -> np.ndarray:
        """Coordinates of the classes of the rows of V in A_e / piece (standard monomials)."""
        std = self.standard
        if not self.pivots:
            return V[:, std]
        if field.is_prime:
            return (V[:, std] - mat_mul(V[:, self.pivots], self.rows[:, std], field)) % field.p
        return V[:, std] - V[:, self.pivots].dot(self.rows[:, std])

    def coordinates(self, V: np.ndarray) -> np.ndarray:
        """Coordinates in the RREF basis of rows V known to lie in the piece."""
        return V[:, self.pivots]


def poly_vector(f: Polynomial, field) -> np.ndarray:
    """Dense coordinate vector of a homogeneous polynomial in A_{deg f}."""
    idx = basis_index(f.nvars, f.degree)
    v = zeros(field, 1, len(idx))[0]
    for m, c in f.terms.items():
        v[idx[m]] = c
    return v


def vector_poly(v, field, n: int, e: int) -> Polynomial:
    mons = basis_tuples(n, e)
    return Polynomial(field, n, {mons[i]: v[i] for i in np.nonzero(v)[0]})


@cache
def shift_columns(n: int, src: int, u: tuple[int, ...]) -> np.ndarray:
    """Index in A_{src+deg u} of m*u for each monomial m of A_src."""
    idx = basis_index(n, src + sum(u))
    mons = basis_tuples(n, src)
    return np.fromiter(
        (idx[tuple(a + b for a, b in zip(m, u))] for m in mons), dtype=np.int64, count=len(mons)
    )


def multiply_rows(V: np.ndarray, f: Polynomial, src: int, field) -> np.ndarray:
    """Rows of V (vectors in A_src) multiplied by the homogeneous polynomial f."""
    n = f.nvars
    dst = src + f.degree
    out = zeros(field, V.shape[0], count_monomials(n, dst))
    if V.shape[0] == 0 or src < 0:
        return out
    for u, c in f.terms.items():
        cols = shift_columns(n, src, u)
        out[:, cols] += V * c
    if field.is_prime:
        out %= field.p
    return out


def full_piece(field, n: int, e: int) -> Piece:
    N = count_monomials(n, e)
    rows = zeros(field, N, N)
    for i in range(N):
        rows[i, i] = field.one()
    return Piece(e, rows, list(range(N)), N)


class PowerPieces:
    """Memoized pieces ``(I^t)_e`` of the powers of a homogeneous ideal."""

    def __init__(self, I: IdealSpec):
        self.ideal = I
        self.field = I.field
        self.n = I.nvars
        self.gens = list(I.generators)
        self._cache: dict[tuple[int, int], Piece] = {}
        self._full_from: dict[int, int] = {}
        self._sub_thresholds: list[tuple[int, int]] | None = None

    # ------------------------------------------------------------------
    def _empty(self, e: int) -> Piece:
        N = count_monomials(self.n, e)
        return Piece(e, zeros(self.field, 0, N), [], N)

    def _known_full(self, t: int, e: int) -> bool:
        thr = self._full_from.get(t)
        return thr is not None and e >= thr

    def _sub_full_thresholds(self) -> list[tuple[int, int]]:
        """(D, e_D): the subideal of generators of degree <= D is full from degree e_D."""
        if self._sub_thresholds is None:
            out = []
            for D in sorted(set(g.degree for g in self.gens)):
                sub = self.ideal.with_generators(g for g in self.gens if g.degree <= D)
                eng = self if len(sub.generators) == len(self.gens) else PowerPieces(sub)
                try:
                    out.append((D, eng.full_threshold(1)))
                except NotMPrimary:
                    continue
            self._sub_thresholds = out
        return self._sub_thresholds

    def _forced_full(self, t: int, e: int) -> bool:
        # f * A_{e-D} lies in I^t when A_{e-D} lies in I^{t-1} and deg f <= D
        if t < 2:
            return False
        for D, thr in self._sub_full_thresholds():
            # fullness only propagates upward from a degree that exists
            if e >= thr and e - D >= 0 and self.piece(t - 1, e - D).full:
                return True
        return False

    def piece(self, t: int, e: int) -> Piece:
        key = (t, e)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if e < 0:
            p = self._empty(e)
        elif t == 0 or self._known_full(t, e):
            p = full_piece(self.field, self.n, e)
        elif t >= 2 and self._sub_thresholds is not None and self._forced_full(t, e):
            p = full_piece(self.field, self.n, e)
        else:
            p = self._compute(t, e)
        self._cache[key] = p
        return p

    def _compute(self, t: int, e: int) -> Piece:
        blocks = []
        for f in self.gens:
            src = e - f.degree
            if src < 0:
                continue
            if t == 1:
                lower = full_piece(self.field, self.n, src)
            else:
                lower = self.piece(t - 1, src)
            if lower.dim:
                blocks.append(multiply_rows(lower.rows, f, src, self.field))
        N = count_monomials(self.n, e)
        if not blocks:
            return self._empty(e)
        R, piv = rref(np.vstack(blocks), self.field)
        return Piece(e, R, piv, N)

    # ------------------------------------------------------------------
    def max_generator_degree(self) -> int:
        return max(g.degree for g in self.gens)

    def full_threshold(self, t: int) -> int:
        """Smallest e with (I^t)_e = A_e; raises NotMPrimary if there is none."""
        if t in self._full_from:
            return self._full_from[t]
        if not self.gens:
            raise NotMPrimary("zero ideal")
        if t >= 2:
            self._sub_full_thresholds()
        # an m-primary ideal generated in degrees <= D is full from n(D-1)+1 on
        D = t * self.max_generator_degree()
        bound = self.n * (D - 1) + 1
        start = t * min(g.degree for g in self.gens)
        e = start
        while e <= bound:
            if self.piece(t, e).full:
                self._full_from[t] = e
                return e
            e += 1
        raise NotMPrimary(f"power {t} is not full in degree {bound}")

    def end(self, t: int) -> int | float:
        """end(A/I^t): top degree with a standard monomial."""
        return self.full_threshold(t) - 1 if self.full_threshold(t) > 0 else float("-inf")

    def hilbert(self, t: int, e: int) -> int:
        if e < 0:
            return 0
        if t == 0:
            return 0
        if self._known_full(t, e):
            return 0
        return self.piece(t, e).codim

    def groebner_elements(self, t: int) -> list[Polynomial]:
        """Reduced Groebner basis of I^t read off the pieces (m-primary only)."""
        top = self.full_threshold(t)
        leads: list[tuple[int, ...]] = []
        out = []
        for e in range(0, top + 1):
            p = self.piece(t, e)
            mons = basis_tuples(self.n, e)
            for r, c in enumerate(p.pivots):
                m = mons[c]
                if any(all(a <= b for a, b in zip(l, m)) for l in leads):
                    continue
                out.append(vector_poly(p.rows[r], self.field, self.n, e))
            leads.extend(mons[c] for c in p.pivots)
        return out


def macaulay_groebner(I: IdealSpec):
    """Reduced Groebner basis of an m-primary ideal by degree-wise elimination."""
    from .groebner import GroebnerBasis

    if not I.generators:
        raise NotMPrimary("zero ideal")
    eng = PowerPieces(I)
    basis = eng.groebner_elements(1)
    return GroebnerBasis(I, tuple(basis), "degrevlex", "macaulay")


_ENGINES: dict = {}


def engine_for(I: IdealSpec) -> PowerPieces:
    """Shared engine per ideal (ideals are immutable and hashable)."""
    eng = _ENGINES.get(I)
    if eng is None:
        if len(_ENGINES) > 64:
            _ENGINES.clear()
        eng = _ENGINES[I] = PowerPieces(I)
    return eng


__all__ = [
    "NotMPrimary",
    "Piece",
    "PowerPieces",
    "engine_for",
    "full_piece",
    "macaulay_groebner",
    "multiply_rows",
    "poly_vector",
    "vector_poly",
    "as_field_array",
]
