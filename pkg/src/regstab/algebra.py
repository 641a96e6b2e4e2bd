"""Exact fields, monomials and homogeneous polynomials over k[x_1..x_n].

Everything here is immutable after construction.  Exponent vectors are plain
tuples internally; :class:`Monomial` is a thin tuple subclass for the public
surface.  The monomial order is always degrevlex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

NEG_INF = float("-inf")
POS_INF = float("inf")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    r = math.isqrt(p)
    f = 3
    while f <= r:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field F_p (``kind="prime"``) or the rationals (``kind="rational"``)."""

    kind: str = "prime"
    p: int = 32003

    def __post_init__(self):
        if self.kind not in ("prime", "rational"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "prime" and not _is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.kind == "rational":
            object.__setattr__(self, "p", 0)

    @classmethod
    def prime(cls, p: int = 32003) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rational", 0)

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return f"Fp {self.p}" if self.is_prime else "Q"

    def elem(self, x):
        if self.is_prime:
            if isinstance(x, Fraction):
                return (x.numerator % self.p) * pow(x.denominator % self.p, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def add(self, a, b):
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.is_prime else a * b

    def neg(self, a):
        return (-a) % self.p if self.is_prime else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.is_prime else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    def one(self):
        return 1 if self.is_prime else Fraction(1)


DEFAULT_FIELD = FieldSpec.prime(32003)


# --------------------------------------------------------------------------
# monomials


class Monomial(tuple):
    """Exponent vector; ``*`` multiplies monomials (it does not repeat the tuple)."""

    __slots__ = ()

    def __new__(cls, exps: Iterable[int]):
        exps = tuple(int(e) for e in exps)
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        return super().__new__(cls, exps)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def degree(self) -> int:
        return sum(self)

    def __mul__(self, other):
        return Monomial(a + b for a, b in zip(self, other, strict=True))

    __rmul__ = __mul__

    def divides(self, other) -> bool:
        return all(a <= b for a, b in zip(self, other))

    def __repr__(self):
        return f"Monomial({tuple(self)})"


def degrevlex_key(exps: Sequence[int]) -> tuple:
    """Sort key; a larger key is a larger monomial in degrevlex."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def compare_degrevlex(a: Sequence[int], b: Sequence[int]) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise ValueError(f"monomials in different rings: {len(a)} vs {len(b)} variables")
    ka, kb = degrevlex_key(a), degrevlex_key(b)
    return (ka > kb) - (ka < kb)


@cache
def _monomial_basis(n: int, e: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),) if e == 0 else ()
    out = []
    for combo in combinations_with_replacement(range(n), e):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    out.sort(key=degrevlex_key, reverse=True)
    return tuple(out)


def monomial_basis(n: int, e: int) -> list[Monomial]:
    """All degree-``e`` monomials in ``n`` variables, descending degrevlex."""
    if n < 1 or e < 0:
        raise ValueError("need n >= 1 and e >= 0")
    return [Monomial(m) for m in _monomial_basis(n, e)]


def basis_tuples(n: int, e: int) -> tuple[tuple[int, ...], ...]:
    """Raw-tuple version of :func:`monomial_basis`; empty for ``e < 0``."""
    if e < 0:
        return ()
    return _monomial_basis(n, e)


@cache
def basis_index(n: int, e: int) -> dict[tuple[int, ...], int]:
    return {m: i for i, m in enumerate(basis_tuples(n, e))}


def count_monomials(n: int, e: int) -> int:
    return math.comb(e + n - 1, n - 1) if e >= 0 else 0


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse polynomial; terms stored in strictly descending degrevlex order."""

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], object] = {}
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have {nvars} entries")
            c = field.elem(c)
            if exps in acc:
                acc[exps] = field.add(acc[exps], c)
            else:
                acc[exps] = c
        ordered = sorted((m for m, c in acc.items() if c), key=degrevlex_key, reverse=True)
        self.field = field
        self.nvars = nvars
        self.terms = {m: acc[m] for m in ordered}
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, field, nvars, exps, c=1):
        return cls(field, nvars, {tuple(exps): c})

    def _new(self, terms: dict) -> "Polynomial":
        # terms already canonical (nonzero, field elements); only reorder
        p = object.__new__(Polynomial)
        p.field = self.field
        p.nvars = self.nvars
        p.terms = {m: terms[m] for m in sorted(terms, key=degrevlex_key, reverse=True)}
        p._hash = None
        return p

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lead_monomial(self) -> tuple[int, ...]:
        return next(iter(self.terms))

    @property
    def lead_coefficient(self):
        return next(iter(self.terms.values()))

    def term_degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.term_degrees()) <= 1

    @property
    def degree(self) -> int:
        """Common degree of a homogeneous polynomial (total degree otherwise)."""
        if not self.terms:
            return -1
        return max(self.term_degrees())

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.field.inv(self.lead_coefficient)
        return self._new({m: self.field.mul(c, inv) for m, c in self.terms.items()})

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial.constant(self.field, self.nvars, other)
        if other.field != self.field or other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        F = self.field
        acc = dict(self.terms)
        for m, c in other.terms.items():
            v = F.add(acc.get(m, F.zero()), c)
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return self._new(acc)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: self.field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> "Polynomial":
        c = self.field.elem(c)
        if not c:
            return self._new({})
        return self._new({m: self.field.mul(v, c) for m, v in self.terms.items()})

    def shift(self, exps, c=1) -> "Polynomial":
        """Multiply by the term ``c * x^exps``."""
        c = self.field.elem(c)
        if not c:
            return self._new({})
        F = self.field
        return self._new(
            {tuple(a + b for a, b in zip(m, exps)): F.mul(v, c) for m, v in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        F = self.field
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                acc[m] = F.add(acc.get(m, F.zero()), F.mul(c1, c2))
        return self._new({m: c for m, c in acc.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison / hashing
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, tuple(self.terms.items())))
        return self._hash

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            mon = "*".join(
                (v if e == 1 else f"{v}^{e}") for v, e in zip(names, m) if e
            )
            coeff = str(c)
            if mon:
                text = mon if c == 1 else f"{coeff}*{mon}"
            else:
                text = coeff
            parts.append(text)
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self.to_string()})"


# --------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class IdealSpec:
    """A homogeneous ideal given by generators; generator list may be empty (zero ideal)."""

    field: FieldSpec
    variables: tuple[str, ...]
    generators: tuple[Polynomial, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        if not self.variables:
            raise ValueError("need at least one variable")
        for i, g in enumerate(self.generators):
            if g.field != self.field or g.nvars != len(self.variables):
                raise ValueError(f"generator {i + 1} lives in a different ring")
            if g.is_zero():
                raise ValueError(f"generator {i + 1} is zero")
            if not g.is_homogeneous:
                raise ValueError(
                    f"generator {i + 1} is not homogeneous (term degrees {sorted(g.term_degrees())})"
                )

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    def with_generators(self, gens: Iterable[Polynomial]) -> "IdealSpec":
        return IdealSpec(self.field, self.variables, tuple(gens))

    def maximal_ideal(self) -> "IdealSpec":
        n = self.nvars
        return self.with_generators(Polynomial.variable(self.field, n, i) for i in range(n))

    def __str__(self):
        return "(" + ", ".join(g.to_string(self.variables) for g in self.generators) + ")"


def ideal_from_monomials(exps_list, field: FieldSpec = DEFAULT_FIELD, names=None) -> IdealSpec:
    """Convenience: monomial ideal from exponent vectors."""
    exps_list = [tuple(e) for e in exps_list]
    n = len(exps_list[0])
    names = names or (("x", "y", "z", "w")[:n] if n <= 4 else tuple(f"x{i + 1}" for i in range(n)))
    return IdealSpec(field, names, tuple(Polynomial.monomial(field, n, e) for e in exps_list))
