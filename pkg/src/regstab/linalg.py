"""Dense exact linear algebra over F_p and Q.

Prime-field matrices are int64 numpy arrays with entries in [0, p).  Products
go through float64 BLAS in inner-dimension chunks small enough that every
partial sum is an exactly representable integer (< 2**53), so results are
exact.  Rational matrices are numpy object arrays of :class:`Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import FieldSpec

_EXACT = 2**53
_SMALL = 48  # below this many rows, eliminate pivot by pivot


def _chunk(p: int) -> int:
    return _EXACT // ((p - 1) ** 2) if p > 1 else 1 << 30


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact ``A @ B mod p`` for int64 inputs already reduced mod p."""
    k = A.shape[1]
    if k == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    step = _chunk(p)
    if step < 1:
        out = (A.astype(object) @ B.astype(object)) % p
        return out.astype(np.int64)
    out = None
    for s in range(0, k, step):
        part = np.fmod(A[:, s : s + step].astype(np.float64) @ B[s : s + step].astype(np.float64), p)
        part = part.astype(np.int64)
        out = part if out is None else (out + part) % p
    return out


def _rref_small_mod(V: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    V = V.copy()
    rows = V.shape[0]
    pivots: list[int] = []
    r = 0
    while r < rows:
        live = V[r:] != 0
        any_col = live.any(axis=0)
        if not any_col.any():
            break
        c = int(np.argmax(any_col))
        i = r + int(np.argmax(live[:, c]))
        if i != r:
            V[[r, i]] = V[[i, r]]
        V[r] = (V[r] * pow(int(V[r, c]), -1, p)) % p
        col = V[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size:
            V[nz] = (V[nz] - np.outer(col[nz], V[r])) % p
        pivots.append(c)
        r += 1
    return V[:r], pivots


def _rref_mod(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    rows = M.shape[0]
    if rows <= _SMALL:
        return _rref_small_mod(M, p)
    half = rows // 2
    R, piv = _rref_mod(M[:half], p)
    V = M[half:]
    if piv:
        V = (V - matmul_mod(V[:, piv], R, p)) % p
    W, q = _rref_mod(V, p)
    if q:
        if piv:
            R = (R - matmul_mod(R[:, q], W, p)) % p
        R = np.vstack([R, W])
        piv = piv + q
        order = np.argsort(piv, kind="stable")
        R = R[order]
        piv = [piv[i] for i in order]
    return R, piv


def _rref_fraction(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = [[Fraction(x) for x in row] for row in M.tolist()]
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        i = next((k for k in range(r, rows) if A[k][c] != 0), None)
        if i is None:
            continue
        A[r], A[i] = A[i], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for k in range(rows):
            if k != r and A[k][c] != 0:
                f = A[k][c]
                A[k] = [x - f * y for x, y in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
    out = np.empty((r, cols), dtype=object)
    for k in range(r):
        out[k] = A[k]
    return out, pivots


def zeros(field: FieldSpec, rows: int, cols: int) -> np.ndarray:
    if field.is_prime:
        return np.zeros((rows, cols), dtype=np.int64)
    out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def as_field_array(M, field: FieldSpec) -> np.ndarray:
    if field.is_prime:
        A = np.asarray(M)
        if A.dtype == object:
            A = np.vectorize(field.elem, otypes=[np.int64])(A) if A.size else A.astype(np.int64)
        return np.asarray(A, dtype=np.int64) % field.p
    A = np.asarray(M, dtype=object)
    if A.size:
        A = np.vectorize(Fraction, otypes=[object])(A)
    return A


def rref(M, field: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the (increasing) pivot columns."""
    A = as_field_array(M, field)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A[:0], []
    if field.is_prime:
        return _rref_mod(A, field.p)
    return _rref_fraction(A)


def rank(M, field: FieldSpec) -> int:
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    return len(rref(A, field)[1])


def kernel_from_rref(R: np.ndarray, pivots: list[int], cols: int, field: FieldSpec) -> np.ndarray:
    """Basis (as rows) of the null space of a matrix with the given RREF."""
    free = [c for c in range(cols) if c not in set(pivots)]
    K = zeros(field, len(free), cols)
    for k, f in enumerate(free):
        K[k, f] = field.one()
        for r, pc in enumerate(pivots):
            v = R[r, f]
            if v:
                K[k, pc] = field.neg(v)
    return K


def reduce_rows(V: np.ndarray, R: np.ndarray, pivots: list[int], field: FieldSpec) -> np.ndarray:
    """Reduce the rows of ``V`` modulo the row space of the RREF ``R``."""
    if not pivots or V.shape[0] == 0:
        return V
    if field.is_prime:
        return (V - matmul_mod(V[:, pivots], R, field.p)) % field.p
    return V - V[:, pivots].dot(R)


def mat_mul(A: np.ndarray, B: np.ndarray, field: FieldSpec) -> np.ndarray:
    if field.is_prime:
        return matmul_mod(A, B, field.p)
    if A.shape[1] == 0:
        return zeros(field, A.shape[0], B.shape[1])
    return A.dot(B)


@dataclass(frozen=True)
class ExactMatrix:
    field: FieldSpec
    entries: np.ndarray

    def __post_init__(self):
        A = as_field_array(self.entries, self.field)
        if A.ndim != 2:
            raise ValueError("ExactMatrix needs a 2-d array")
        A.setflags(write=False)
        object.__setattr__(self, "entries", A)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


def kernel_and_rank(M: ExactMatrix) -> tuple[int, list[list]]:
    """Exact rank and a basis of ``{v : M v = 0}``."""
    if M.rows == 0:
        K = [[M.field.one() if i == j else M.field.zero() for i in range(M.cols)] for j in range(M.cols)]
        return 0, K
    R, piv = rref(M.entries, M.field)
    K = kernel_from_rref(R, piv, M.cols, M.field)
    return len(piv), [list(row) for row in K]
