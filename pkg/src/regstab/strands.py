"""Graded strands of the Rees algebra as modules over B = k[T_1..T_m].

A strand is described degreewise.  The ambient space in B-degree t is
``A_{mu + t d}`` and ``T_i`` acts as multiplication by a degree-d form
``g_i``.  A strand is either a g-stable subspace ``V_t`` of the ambient
spaces (``mode="sub"``, e.g. ``(I^t)_{mu+td}``) or the quotient by one
(``mode="quo"``, e.g. ``(A/I^t)_{mu+td}``).  Bases, action matrices, Koszul
homology, local cohomology ends and growth degrees are all computed by
exact linear algebra.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Callable

import numpy as np

from .algebra import NEG_INF, POS_INF, FieldSpec, IdealSpec, Polynomial, count_monomials
from .groebner import groebner, is_m_primary
from .linalg import mat_mul, rank, rref, zeros
from .pieces import Piece, PowerPieces, engine_for, full_piece, multiply_rows, shift_columns, vector_poly
from .report import AtLeast


class FieldTooSmall(RuntimeError):
    pass


class CutoffTooLarge(ValueError):
    def __init__(self, cutoff: int, horizon: int, needed: int):
        self.needed = needed
        super().__init__(f"cutoff {cutoff} needs horizon T >= {needed} (have T={horizon})")


# --------------------------------------------------------------------------
# reductions


@dataclass(frozen=True)
class Reduction:
    gens: tuple[Polynomial, ...]
    seed: int
    attempts: int

    @property
    def degree(self) -> int:
        return self.gens[0].degree


def sample_general_reduction(
    I: IdealSpec, d: int, seed: int, count: int | None = None, max_attempts: int = 32
) -> Reduction:
    """``count`` (default n) random elements of I_d generating an m-primary ideal.

    With fewer than n elements m-primality is impossible and is not checked.
    """
    n = I.nvars
    count = n if count is None else count
    F = I.field
    piece = engine_for(I).piece(1, d)
    if piece.dim == 0:
        raise ValueError(f"I has no elements of degree {d}")
    rng = random.Random(seed)
    hi = F.p - 1 if F.is_prime else 1000
    for attempt in range(1, max_attempts + 1):
        coeffs = [[rng.randint(0, hi) for _ in range(piece.dim)] for _ in range(count)]
        C = np.array(coeffs, dtype=np.int64 if F.is_prime else object)
        if not F.is_prime:
            C = np.vectorize(F.elem, otypes=[object])(C)
        vecs = mat_mul(C, piece.rows, F)
        gens = tuple(vector_poly(v, F, n, d) for v in vecs)
        if any(g.is_zero() for g in gens):
            continue
        if count < n:
            return Reduction(gens, seed, attempt)
        if is_m_primary(groebner(I.with_generators(gens))):
            return Reduction(gens, seed, attempt)
    raise FieldTooSmall(
        f"no m-primary choice of {count} general elements of I_{d} in {max_attempts} attempts; "
        "use a larger prime"
    )


# --------------------------------------------------------------------------
# strands


@dataclass(eq=False)
class StrandModule:
    """Degreewise model of a graded B-module; pieces and maps are built lazily.

    ``maps(t)[i]`` is the matrix (dim M_{t+1} x dim M_t) of T_i acting on
    column coordinate vectors.
    """

    kind: str
    mode: str
    mu: int
    horizon: int
    field: FieldSpec
    n_ambient: int
    d: int
    action: tuple[Polynomial, ...]
    space: Callable[[int], Piece] = field(repr=False)
    ideal: IdealSpec | None = field(default=None, repr=False)

    def __post_init__(self):
        self._maps: dict[int, list[np.ndarray]] = {}
        self._bases: dict[int, np.ndarray] = {}

    @property
    def nvars(self) -> int:
        """Number of variables of B."""
        return len(self.action)

    def ambient_degree(self, t: int) -> int:
        return self.mu + t * self.d

    def ambient_dim(self, t: int) -> int:
        return count_monomials(self.n_ambient, self.ambient_degree(t)) if t >= 0 else 0

    def _piece(self, t: int) -> Piece:
        return self.space(t)

    def dim(self, t: int) -> int:
        if t < 0 or t > self.horizon:
            if t < 0:
                return 0
            raise IndexError(f"degree {t} beyond horizon {self.horizon}")
        p = self._piece(t)
        return p.dim if self.mode == "sub" else p.codim

    @property
    def dims(self) -> list[int]:
        return [self.dim(t) for t in range(self.horizon + 1)]

    def basis(self, t: int) -> np.ndarray:
        """Basis rows in ambient coordinates (standard monomials for quotients)."""
        if t not in self._bases:
            p = self._piece(t)
            if self.mode == "sub":
                B = p.rows
            else:
                B = zeros(self.field, p.codim, p.ambient)
                for k, c in enumerate(p.standard):
                    B[k, c] = self.field.one()
            self._bases[t] = B
        return self._bases[t]

    def maps(self, t: int) -> list[np.ndarray]:
        if t < 0:
            return [zeros(self.field, self.dim(t + 1), 0) for _ in self.action]
        if t + 1 > self.horizon:
            raise IndexError(f"map out of degree {t} needs horizon {t + 1}")
        if t not in self._maps:
            src = self.basis(t)
            nxt = self._piece(t + 1)
            out = []
            for g in self.action:
                W = multiply_rows(src, g, self.ambient_degree(t), self.field)
                if self.mode == "sub":
                    coords = nxt.coordinates(W)
                else:
                    coords = nxt.project(W, self.field)
                out.append(coords.T.copy())
            self._maps[t] = out
        return self._maps[t]

    def ambient_projection(self, t: int) -> np.ndarray:
        """Matrix (ambient x codim) of A_{mu+td} -> A_{mu+td} / V_t for a sub-strand."""
        p = self._piece(t)
        eye = full_piece(self.field, self.n_ambient, self.ambient_degree(t)).rows
        return p.project(eye, self.field)


def build_strand(I: IdealSpec, J: Reduction, mu: int, T: int, kind: str = "rees") -> StrandModule:
    """(R_I)_{mu,*} (``kind="rees"``) or N_{mu,*} (``kind="quotient"``) up to B-degree T."""
    n = I.nvars
    if mu <= -n:
        raise ValueError(f"mu={mu} is out of range: strands need mu > -n = {-n}")
    if T < 1:
        raise ValueError("horizon must be >= 1")
    d = J.degree
    eng = engine_for(I)
    if kind == "rees":
        space = lambda t: eng.piece(t, mu + t * d)  # noqa: E731
        mode = "sub"
    elif kind == "quotient":
        # N_{mu,0} = 0: the t = 0 quotient is by all of A_mu
        space = lambda t: full_piece(I.field, n, mu) if t == 0 else eng.piece(t, mu + t * d)  # noqa: E731
        mode = "quo"
    else:
        raise ValueError(f"unknown strand kind {kind!r}")
    return StrandModule(kind, mode, mu, T, I.field, n, d, tuple(J.gens), space, I)


def ideal_module(K: IdealSpec, T: int, quotient: bool = False) -> StrandModule:
    """The ideal K of B = k[T_1..T_m] (or B/K) as a graded B-module, degrees 0..T."""
    eng = PowerPieces(K)
    m = K.nvars
    F = K.field
    action = tuple(Polynomial.variable(F, m, i) for i in range(m))
    space = lambda t: eng.piece(1, t) if K.generators else eng._empty(t)  # noqa: E731
    return StrandModule(
        "ideal-quotient" if quotient else "ideal", "quo" if quotient else "sub", 0, T, F, m, 1, action, space
    )


def free_module(m: int, T: int, field: FieldSpec | None = None) -> StrandModule:
    F = field or FieldSpec.prime()
    names = tuple(f"T{i + 1}" for i in range(m))
    unit = IdealSpec(F, names, (Polynomial.constant(F, m, 1),))
    return ideal_module(unit, T)


def residue_field(m: int, T: int, field: FieldSpec | None = None) -> StrandModule:
    F = field or FieldSpec.prime()
    names = tuple(f"T{i + 1}" for i in range(m))
    mx = IdealSpec(F, names, tuple(Polynomial.variable(F, m, i) for i in range(m)))
    return ideal_module(mx, T, quotient=True)


# --------------------------------------------------------------------------
# Koszul homology


@dataclass
class BettiTable:
    """beta[j][t] = dim H_j(K(T_1..T_m) (x) M)_t for t = 0..cutoff."""

    beta: list[list[int]]
    cutoff: int
    reg_B: int | float | AtLeast
    certified: bool
    growth_degree: int | float | str = "undetermined"
    infinite_regularity: bool = False

    def nonzero(self) -> list[tuple[int, int, int]]:
        return [(j, t, v) for j, row in enumerate(self.beta) for t, v in enumerate(row) if v]

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "cutoff": self.cutoff,
            "reg_B": self.reg_B,
            "certified": self.certified,
            "growth_degree": self.growth_degree,
            "infinite_regularity": self.infinite_regularity,
        }


def koszul_matrix(M: StrandModule, j: int, t: int) -> np.ndarray:
    """Differential K_j -> K_{j-1} in internal degree t.

    e_S (x) v  |->  sum_k (-1)^k e_{S minus s_k} (x) T_{s_k} v   (k counted from 0).
    """
    m = M.nvars
    src_sets = list(combinations(range(m), j))
    dst_sets = list(combinations(range(m), j - 1))
    dst_pos = {S: i for i, S in enumerate(dst_sets)}
    a = M.dim(t - j)
    b = M.dim(t - j + 1)
    D = zeros(M.field, len(dst_sets) * b, len(src_sets) * a)
    if a == 0 or b == 0:
        return D
    maps = M.maps(t - j)
    F = M.field
    for c, S in enumerate(src_sets):
        for k, s in enumerate(S):
            r = dst_pos[S[:k] + S[k + 1 :]]
            blk = maps[s] if k % 2 == 0 else (F.p - maps[s]) % F.p if F.is_prime else -maps[s]
            D[r * b : (r + 1) * b, c * a : (c + 1) * a] = blk
    return D


def koszul_betti(M: StrandModule, cutoff: int) -> BettiTable:
    m = M.nvars
    if cutoff > M.horizon - m:
        raise CutoffTooLarge(cutoff, M.horizon, cutoff + m)
    beta = [[0] * (cutoff + 1) for _ in range(m + 1)]
    for t in range(cutoff + 1):
        ranks = [0] * (m + 2)
        for j in range(1, m + 1):
            if M.dim(t - j) and M.dim(t - j + 1):
                ranks[j] = rank(koszul_matrix(M, j, t), M.field)
        for j in range(m + 1):
            size = math.comb(m, j) * M.dim(t - j)
            beta[j][t] = size - ranks[j] - ranks[j + 1]
    return _finish_betti(M, beta, cutoff)


def _finish_betti(M: StrandModule, beta, cutoff: int) -> BettiTable:
    m = M.nvars
    nz = [t - j for j in range(m + 1) for t in range(cutoff + 1) if beta[j][t]]
    lo = max(0, cutoff - m + 1)
    window_zero = all(beta[j][t] == 0 for j in range(m + 1) for t in range(lo, cutoff + 1))
    reg = max(nz) if nz else NEG_INF
    g = growth_degree(M)
    infinite = M.kind == "rees" and m < M.n_ambient and g == M.n_ambient - 1
    if infinite:
        return BettiTable(beta, cutoff, POS_INF, True, g, True)
    if not window_zero:
        return BettiTable(beta, cutoff, AtLeast(reg), False, g)
    return BettiTable(beta, cutoff, reg, True, g)


def koszul_betti_sequence(M: StrandModule, cutoff: int) -> BettiTable:
    """Betti numbers of a Rees strand from those of the matching N-strand.

    With F_t = A_{mu+td} free over B (J m-primary) and 0 -> M -> F -> N -> 0:
    beta_j(M) = beta_{j+1}(N) for j >= 1 and
    beta_0(M)_t = dim (A/J)_{mu+td} - beta_0(N)_t + beta_1(N)_t.

    F_{>=0} is free only when A_{mu-d} = 0, i.e. mu < d; otherwise part of
    the free module lives in negative B-degrees and the route does not apply.
    """
    if M.kind != "rees" or M.ideal is None:
        raise ValueError("sequence route needs a Rees strand")
    if M.mu >= M.d or M.nvars != M.n_ambient:
        raise ValueError("sequence route needs mu < d and n general forms")
    m = M.nvars
    if cutoff > M.horizon - m:
        raise CutoffTooLarge(cutoff, M.horizon, cutoff + m)
    J = M.ideal.with_generators(M.action)
    N = build_strand(M.ideal, Reduction(M.action, 0, 0), M.mu, M.horizon, "quotient")
    bn = koszul_betti(N, cutoff) if m else None
    engJ = PowerPieces(J)
    beta = [[0] * (cutoff + 1) for _ in range(m + 1)]
    for t in range(cutoff + 1):
        free_gens = engJ.hilbert(1, M.ambient_degree(t)) if M.ambient_degree(t) >= 0 else 0
        beta[0][t] = free_gens - bn.beta[0][t] + bn.beta[1][t]
        for j in range(1, m + 1):
            beta[j][t] = bn.beta[j + 1][t] if j + 1 <= m else 0
    return _finish_betti(M, beta, cutoff)


# --------------------------------------------------------------------------
# local cohomology ends


def socle_dims(M: StrandModule) -> list[int]:
    """dim (0 :_M n)_t for t = 0..horizon-1."""
    out = []
    for t in range(M.horizon):
        a = M.dim(t)
        if a == 0:
            out.append(0)
            continue
        stacked = np.vstack(M.maps(t))
        out.append(a - rank(stacked, M.field))
    return out


def h0_end(M: StrandModule) -> int | float | AtLeast:
    """end of the n-torsion H^0_n(M).

    The top degree of the torsion submodule is also the top degree of the
    socle (0 :_M n), which is what is computed.  A socle element inside the
    last m computed degrees means the torsion may continue past the
    horizon; the result is then reported as a lower bound.
    """
    soc = socle_dims(M)
    nz = [t for t, v in enumerate(soc) if v]
    if not nz:
        return NEG_INF
    if nz[-1] >= M.horizon - M.nvars:
        return AtLeast(nz[-1])
    return nz[-1]


@dataclass
class CohEndReport:
    end_h0: int | float | AtLeast
    end_h1: int | float | AtLeast
    K: int | None
    certified: bool
    method: str
    h1_dims: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "end_h0": self.end_h0,
            "end_h1": self.end_h1,
            "K": self.K,
            "certified": self.certified,
            "method": self.method,
            "h1_dims": self.h1_dims,
        }


def _h1_dims_ambient(M: StrandModule, top: int, upto: int) -> list[int]:
    """dim H^1_t for t = 0..upto, saturating inside the free module F_t = A_{mu+td}."""
    F = M.field
    n = M.n_ambient
    Q = M.ambient_projection(top)  # F_top -> F_top / M_top
    dims: dict[int, int] = {}
    for t in range(top - 1, -1, -1):
        src = M.ambient_degree(t)
        a = M.ambient_dim(t)
        if a == 0:
            Q = zeros(F, 0, 0)
            dims[t] = 0
            continue
        blocks = []
        for g in M.action:
            C = zeros(F, a, Q.shape[1])
            if Q.shape[1]:
                for u, c in g.terms.items():
                    C += Q[shift_columns(n, src, u)] * c
                if F.is_prime:
                    C %= F.p
            blocks.append(C)
        C = np.hstack(blocks)
        if C.shape[1]:
            R, piv = rref(C.T, F)
            Q = R.T.copy()
        else:
            Q = zeros(F, a, 0)
        # dim sat_t = a - rank; dim H^1_t = dim sat_t - dim M_t
        dims[t] = a - Q.shape[1] - M.dim(t)
    return [dims[t] for t in range(0, upto + 1)]


def _h1_dims_families(M: StrandModule, K: int, upto: int) -> list[int]:
    """dim H^1_t = dim Hom(n^K, M)_t - rank(M_t -> Hom(n^K, M)_t)."""
    m = M.nvars
    F = M.field
    out = []
    alphas = list(combinations_with_replacement(range(m), K))
    apos = {a: i for i, a in enumerate(alphas)}
    betas = list(combinations_with_replacement(range(m), K + 1))
    for t in range(0, upto + 1):
        a_dim = M.dim(t + K)
        b_dim = M.dim(t + K + 1)
        if a_dim == 0:
            out.append(0)
            continue
        Tm = M.maps(t + K)
        rows = []
        for beta in betas:
            present = sorted(set(beta))
            for i, j in combinations(present, 2):
                bi = list(beta)
                bi.remove(i)
                bj = list(beta)
                bj.remove(j)
                blk = zeros(F, b_dim, len(alphas) * a_dim)
                ci, cj = apos[tuple(bi)], apos[tuple(bj)]
                blk[:, ci * a_dim : (ci + 1) * a_dim] = Tm[i]
                neg = (F.p - Tm[j]) % F.p if F.is_prime else -Tm[j]
                blk[:, cj * a_dim : (cj + 1) * a_dim] = neg
                rows.append(blk)
        ncols = len(alphas) * a_dim
        hom = ncols - (rank(np.vstack(rows), F) if rows and b_dim else 0)
        # image of M_t: v -> (T^alpha v)_alpha
        d0 = M.dim(t)
        if d0 == 0:
            out.append(hom)
            continue
        blocks = []
        for alpha in alphas:
            P = np.eye(d0, dtype=np.int64) if F.is_prime else _eye_obj(d0)
            for step, i in enumerate(alpha):
                P = mat_mul(M.maps(t + step)[i], P, F)
            blocks.append(P)
        out.append(hom - rank(np.vstack(blocks), F))
    return out


def _eye_obj(k: int) -> np.ndarray:
    from fractions import Fraction

    E = np.empty((k, k), dtype=object)
    E.fill(Fraction(0))
    for i in range(k):
        E[i, i] = Fraction(1)
    return E


def _ambient_ok(M: StrandModule) -> bool:
    # F = (+)_t A_{mu+td} is a free, hence saturated, B-module when the
    # action forms are an m-primary set of n elements and n >= 2
    return M.kind == "rees" and M.nvars == M.n_ambient >= 2


def h1_end(M: StrandModule, K: int | None = None, cutoff: int | None = None, method: str = "auto") -> CohEndReport:
    """end of H^1_n(M) = coker(M -> saturation of M), scanned over t = 0..cutoff.

    Without ``K`` every degree t is saturated with the largest power the
    horizon allows, and the computation is repeated with one less to check
    stability.
    """
    m = M.nvars
    if cutoff is None:
        cutoff = M.horizon - 2
    if method == "auto":
        method = "ambient" if _ambient_ok(M) else "families"
    if method == "ambient" and not _ambient_ok(M):
        raise ValueError("ambient saturation needs a Rees strand acted on by n >= 2 forms")
    if K is not None and cutoff + K + 1 > M.horizon:
        raise CutoffTooLarge(cutoff, M.horizon, cutoff + K + 1)
    if K is None and cutoff > M.horizon - 2:
        raise CutoffTooLarge(cutoff, M.horizon, cutoff + 2)

    if method == "ambient":
        if K is not None:
            main = [_h1_dims_ambient(M, t + K, t)[t] for t in range(cutoff + 1)]
            prev = [_h1_dims_ambient(M, t + K + 1, t)[t] for t in range(cutoff + 1)] if cutoff + K + 2 <= M.horizon else main
        else:
            main = _h1_dims_ambient(M, M.horizon, cutoff)
            prev = _h1_dims_ambient(M, M.horizon - 1, cutoff)
        used_K = K if K is not None else M.horizon - cutoff
    elif method == "families":
        if K is not None:
            main = _h1_dims_families(M, K, cutoff)
            prev = _h1_dims_families(M, K - 1, cutoff) if K > 1 else main
            used_K = K
        else:
            main, prev = [], []
            for t in range(cutoff + 1):
                k = M.horizon - 1 - t
                main.append(_h1_dims_families(M, k, t)[t])
                prev.append(_h1_dims_families(M, k - 1, t)[t] if k > 1 else main[-1])
            used_K = M.horizon - 1 - cutoff
    else:
        raise ValueError(f"unknown method {method!r}")

    stable = main == prev
    nz = [t for t, v in enumerate(main) if v]
    lo = max(0, cutoff - m + 1)
    window_zero = all(v == 0 for v in main[lo:])
    if not nz:
        end1 = NEG_INF
    elif not window_zero:
        end1 = AtLeast(nz[-1])
    else:
        end1 = nz[-1]
    return CohEndReport(h0_end(M), end1, used_K, stable and window_zero, method, main)


# --------------------------------------------------------------------------
# growth


def growth_degree(M_or_dims, window: int | None = None):
    """Degree of the polynomial eventually interpolating t -> dim M_t.

    Returns -inf for an eventually-zero sequence and ``"undetermined"`` when
    no difference order is constant over the trailing window.
    """
    if isinstance(M_or_dims, StrandModule):
        dims = M_or_dims.dims
        m = M_or_dims.nvars
    else:
        dims = list(M_or_dims)
        m = 2
    w = window or max(3, m + 1)
    seq = list(dims)
    k = 0
    while len(seq) >= w:
        tail = seq[-w:]
        if len(set(tail)) == 1:
            if k == 0 and tail[0] == 0:
                return NEG_INF
            return k
        seq = [b - a for a, b in zip(seq, seq[1:])]
        k += 1
    return "undetermined"


def krull_dimension(M: StrandModule, g=None):
    """growth degree + 1; 0 for a nonzero module with vanishing tail; -inf for zero."""
    g = growth_degree(M) if g is None else g
    if g == "undetermined":
        return g
    if g == NEG_INF:
        return 0 if any(M.dims) else NEG_INF
    return g + 1


# --------------------------------------------------------------------------
# theorem checks on strands


@dataclass
class StrandVerdict:
    command: str
    mu: int
    seed: int
    horizon: int
    cutoff: int
    result: dict
    checks: list

    @property
    def status(self) -> str:
        from .report import summarize

        return summarize(self.checks)


def default_strand_cutoff(stab: int, n: int) -> int:
    # nonzero Betti numbers sit in t <= reg_B + n <= max(Stab, n) + n; one more
    # window of n zero degrees above that is required for certification
    return max(stab, n) + 2 * n


def verify_simple_stab(
    I: IdealSpec, seed: int, T: int | None = None, cutoff: int | None = None, rep=None
) -> StrandVerdict:
    """Compare Stab with end H^1 + 1 and reg_B of the Rees strand at mu = b."""
    from .report import compare
    from .stabilization import stabilization_report

    n = I.nvars
    if n < 2:
        raise ValueError("strand checks need n >= 2")
    rep = rep or stabilization_report(I)
    b = rep.b
    cutoff = default_strand_cutoff(rep.stab, n) if cutoff is None else cutoff
    T = cutoff + n if T is None else T
    if cutoff > T - n:
        raise CutoffTooLarge(cutoff, T, cutoff + n)
    J = sample_general_reduction(I, rep.d, seed)
    R = build_strand(I, J, b, T, "rees")
    N = build_strand(I, J, b, T, "quotient")
    betti = koszul_betti(R, cutoff)
    coh = h1_end(R, cutoff=min(T - 2, cutoff))
    h0N = h0_end(N)
    e_b = rep.e_table.get(b)
    if e_b is None:
        from .stabilization import n_strand_dimensions, strand_end

        e_b = strand_end(n_strand_dimensions(I, b, rep.horizon, rep.d))
    cert = rep.certified
    raw = rep.stab_raw
    checks = []
    end1 = coh.end_h1
    rhs = end1 + 1 if not isinstance(end1, AtLeast) else end1
    checks.append(
        compare("stab-is-h1-end", "Stab = end H^1(R_b) + 1 (raw, -inf when N_b = 0)", raw, "==", rhs,
                cert and coh.certified, "degenerate: N_{b,*} = 0" if rep.degenerate else "")
    )
    checks.append(
        compare("h0N-is-e_b", "end H^0(N_b) = e_b", h0N, "==", e_b, cert)
    )
    checks.append(
        compare("h1-below-regB", "end H^1(R_b) <= reg_B(R_b) - 1", end1, "<=",
                betti.reg_B - 1 if not isinstance(betti.reg_B, AtLeast) else betti.reg_B,
                coh.certified and betti.certified)
    )
    checks.append(
        compare("stab-le-regB", "Stab <= reg_B(R_b)", raw, "<=", betti.reg_B, cert and betti.certified,
                "raw Stab used (floor at 1 dropped)" if rep.degenerate else "")
    )
    upper = max(rep.stab, n)
    checks.append(
        compare("regB-le-max", "reg_B(R_b) <= max(Stab, n)", betti.reg_B, "<=", upper, cert and betti.certified)
    )
    rb = betti.reg_B
    if not isinstance(rb, AtLeast) and (rep.stab >= n or rb > n) and not rep.degenerate:
        checks.append(
            compare("stab-eq-regB", "Stab = reg_B(R_b) when Stab >= n or reg_B > n", rep.stab, "==", rb,
                    cert and betti.certified)
        )
    result = {
        "b": b,
        "d": rep.d,
        "stab": rep.stab,
        "stab_raw": raw,
        "degenerate": rep.degenerate,
        "e_b": e_b,
        "reg_B": betti.reg_B,
        "end_h0_N": h0N,
        "cohomology": coh.to_dict(),
        "betti": betti.to_dict(),
        "reduction": [g.to_string(I.variables) for g in J.gens],
        "rees_dims": R.dims,
    }
    return StrandVerdict("simple-stab", b, seed, T, cutoff, result, checks)


def verify_compcoh(
    I: IdealSpec, seed: int, mu: int, T: int | None = None, cutoff: int | None = None, rep=None,
    escalate: int = 2,
) -> StrandVerdict:
    """Compare reg_B of the Rees strand R_mu with that of N_mu.

    Without an explicit cutoff or horizon the cutoff starts at the default and
    grows by n up to ``escalate`` times while the verdict stays inconclusive.
    """
    from .stabilization import stabilization_report

    n = I.nvars
    if n < 2:
        raise ValueError("strand checks need n >= 2")
    rep = rep or stabilization_report(I)
    J = sample_general_reduction(I, rep.d, seed)
    if cutoff is not None or T is not None:
        if cutoff is None:
            cutoff = T - n
        return _compcoh_once(I, J, seed, mu, cutoff + n if T is None else T, cutoff, rep)
    # below b the strand can need generators well past Stab; widen until certified
    base = default_strand_cutoff(max(rep.stab, rep.c - mu + 1), n)
    for step in range(escalate + 1):
        cutoff = base + step * n
        v = _compcoh_once(I, J, seed, mu, cutoff + n, cutoff, rep)
        if v.status != "inconclusive":
            break
    return v


def _compcoh_once(I: IdealSpec, J: Reduction, seed: int, mu: int, T: int, cutoff: int, rep) -> StrandVerdict:
    from .report import compare

    n = I.nvars
    if cutoff > T - n:
        raise CutoffTooLarge(cutoff, T, cutoff + n)
    R = build_strand(I, J, mu, T, "rees")
    N = build_strand(I, J, mu, T, "quotient")
    bR = koszul_betti(R, cutoff)
    bN = koszul_betti(N, cutoff)
    gN = bN.growth_degree
    gR = bR.growth_degree
    dmu = krull_dimension(N, gN)
    cd = krull_dimension(R, gR)
    cert = bR.certified and bN.certified and gN != "undetermined" and gR != "undetermined"
    rR, rN = bR.reg_B, bN.reg_B

    checks = []
    if dmu == "undetermined" or cd == "undetermined":
        checks.append(compare("dimension-known", "growth degree determined", "undetermined", "==", "known", False))
    else:
        checks.append(compare("cd-le-n", "cd(R_mu) <= n", cd, "<=", n, cert))
        if not isinstance(rR, AtLeast):
            checks.append(
                compare("regN-bound", "reg_B(N_mu) <= max(reg_B(R_mu) - 1, dim N_mu)", rN, "<=",
                        max(rR - 1, dmu), cert)
            )
        else:
            checks.append(compare("regN-bound", "reg_B(N_mu) <= max(reg_B(R_mu) - 1, dim N_mu)", rN, "<=", rR, False))
        if not isinstance(rN, AtLeast):
            checks.append(
                compare("regR-bound", "reg_B(R_mu) <= max(reg_B(N_mu) + 1, cd(R_mu))", rR, "<=",
                        max(rN + 1, cd), cert)
            )
        else:
            checks.append(compare("regR-bound", "reg_B(R_mu) <= max(reg_B(N_mu) + 1, cd(R_mu))", rR, "<=", rN, False))
        has_low = any(g.degree < rep.d for g in I.generators)
        if not isinstance(rR, AtLeast) and not isinstance(rN, AtLeast):
            if (rN >= n and has_low) or max(rN, rR) > n:
                checks.append(
                    compare("regN-eq-regR-1", "reg_B(N_mu) = reg_B(R_mu) - 1 in the large range", rN, "==",
                            rR - 1, cert)
                )
    result = {
        "mu": mu,
        "b": rep.b,
        "reg_B_R": rR,
        "reg_B_N": rN,
        "dim_N": dmu,
        "cd_R": cd,
        "betti_R": bR.to_dict(),
        "betti_N": bN.to_dict(),
        "reduction": [g.to_string(I.variables) for g in J.gens],
    }
    return StrandVerdict("compcoh", mu, seed, T, cutoff, result, checks)
