"""Dense exact linear algebra over a Field.

Matrices are 2-D numpy int16 arrays of field elements; every routine takes
the field first and never mutates its input.  Submatrix scans enumerate row
subsets (outer) and column subsets (inner) in lexicographic order and report
the first failure, so counterexamples are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from qmds.gf import Field

__all__ = [
    "as_matrix",
    "identity",
    "mat_mul",
    "rref",
    "rank",
    "det",
    "inverse",
    "null_space",
    "same_row_space",
    "SubmatrixReport",
    "all_minors_nonsingular",
    "rect_rank_condition",
]


def as_matrix(field: Field, rows) -> np.ndarray:
    a = np.array(rows, dtype=np.int16)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError("matrix data must be 2-dimensional")
    if a.size and (a.min() < 0 or a.max() >= field.order):
        raise ValueError("matrix entries outside the field's element range")
    return a


def identity(field: Field, n: int, scale: int = 1) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.int16)
    np.fill_diagonal(out, scale)
    return out


def mat_mul(field: Field, a, b) -> np.ndarray:
    a, b = np.asarray(a, dtype=np.int16), np.asarray(b, dtype=np.int16)
    n, m = a.shape
    m2, p = b.shape
    if m != m2:
        raise ValueError("incompatible shapes for matrix product")
    acc = np.zeros((n, p), dtype=np.int16)
    for t in range(m):
        acc = field.add(acc, field.mul(a[:, t][:, None], b[t, :][None, :]))
    return acc


def rref(field: Field, a) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form and the pivot column indices."""
    r = np.array(a, dtype=np.int16, copy=True)
    rows, cols = r.shape
    pivots = []
    pr = 0
    for c in range(cols):
        if pr >= rows:
            break
        nz = np.flatnonzero(r[pr:, c])
        if nz.size == 0:
            continue
        p0 = pr + int(nz[0])
        if p0 != pr:
            r[[pr, p0]] = r[[p0, pr]]
        piv = int(r[pr, c])
        if piv != 1:
            r[pr] = field.mul(r[pr], int(field.inv(piv)))
        col = r[:, c].copy()
        col[pr] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            r[hit] = field.sub(r[hit], field.mul(col[hit, None], r[pr][None, :]))
        pivots.append(c)
        pr += 1
    return r, tuple(pivots)


def rank(field: Field, a) -> int:
    return len(rref(field, a)[1])


def det(field: Field, a) -> int:
    a = np.array(a, dtype=np.int16, copy=True)
    n, m = a.shape
    if n != m:
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return 1
    if n == 1:
        return int(a[0, 0])
    if n == 2:
        return int(field.sub(field.mul(a[0, 0], a[1, 1]), field.mul(a[0, 1], a[1, 0])))
    acc = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        p0 = c + int(nz[0])
        if p0 != c:
            a[[c, p0]] = a[[p0, c]]
            acc = int(field.neg(acc))
        piv = int(a[c, c])
        acc = int(field.mul(acc, piv))
        if c + 1 < n:
            factors = field.mul(a[c + 1 :, c], int(field.inv(piv)))
            a[c + 1 :, c:] = field.sub(
                a[c + 1 :, c:], field.mul(factors[:, None], a[c, c:][None, :])
            )
    return acc


def inverse(field: Field, a) -> np.ndarray:
    a = as_matrix(field, a)
    n, m = a.shape
    if n != m:
        raise ValueError("inverse requires a square matrix")
    aug = np.hstack([a, identity(field, n)])
    r, pivots = rref(field, aug)
    if pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def null_space(field: Field, a) -> np.ndarray:
    """Basis rows of the right kernel {v : a v^T = 0}, one per free column."""
    a = as_matrix(field, a)
    r, pivots = rref(field, a)
    cols = a.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int16)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for ri, pc in enumerate(pivots):
            basis[bi, pc] = field.neg(int(r[ri, fc]))
    return basis


def same_row_space(field: Field, a, b) -> bool:
    a, b = as_matrix(field, a), as_matrix(field, b)
    if a.shape[1] != b.shape[1]:
        return False
    ra, rb = rank(field, a), rank(field, b)
    return ra == rb == rank(field, np.vstack([a, b]))


@dataclass(frozen=True)
class SubmatrixReport:
    """Outcome of a bulk submatrix scan.

    ``failure`` is None on success, else (j, row_indices, col_indices) for
    the first submatrix that violated the condition, in scan order.
    """

    ok: bool
    checked: int
    failure: tuple[int, tuple[int, ...], tuple[int, ...]] | None


def all_minors_nonsingular(field: Field, a, j_max: int) -> SubmatrixReport:
    """Check that every j x j submatrix is nonsingular for j = 1..j_max."""
    a = as_matrix(field, a)
    rows, cols = a.shape
    if j_max > min(rows, cols):
        raise ValueError("j_max exceeds the matrix dimensions")
    checked = 0
    for j in range(1, j_max + 1):
        for rset in combinations(range(rows), j):
            sub_rows = a[rset, :]
            for cset in combinations(range(cols), j):
                checked += 1
                if det(field, sub_rows[:, cset]) == 0:
                    return SubmatrixReport(False, checked, (j, rset, cset))
    return SubmatrixReport(True, checked, None)


def rect_rank_condition(field: Field, a, d: int) -> SubmatrixReport:
    """Check every j x (k-d+1+j) submatrix has rank j, for j = 1..d-1.

    A k x k matrix passing this scan generates, as the right block of
    (I_k | M), a rate-one-half code of minimum distance at least d.
    """
    a = as_matrix(field, a)
    k, m = a.shape
    if k != m:
        raise ValueError("condition is defined for square matrices")
    if not 1 <= d <= k + 1:
        raise ValueError("distance must lie in 1..k+1")
    checked = 0
    for j in range(1, d):
        width = k - d + 1 + j
        for rset in combinations(range(k), j):
            sub_rows = a[rset, :]
            for cset in combinations(range(k), width):
                checked += 1
                if rank(field, sub_rows[:, cset]) != j:
                    return SubmatrixReport(False, checked, (j, rset, cset))
    return SubmatrixReport(True, checked, None)
