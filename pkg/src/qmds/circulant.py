"""Doubly circulant codes (scale*I | M) over GF(q^2).

For a circulant matrix M with first row x, the row-by-conjugated-row products
are the twisted autocorrelations H_m = sum_i x_i x_(i+m)^q (indices cyclic).
If H_m = 0 for m = 1..floor(k/2), H_0 != 0, and all small square submatrices
of M are nonsingular, then (scale*I | M) with norm(scale) = -H_0 generates a
Hermitian self-dual [2k, k, k+1] MDS code, certifying a [[2k, 0, k+1]]_q
quantum MDS code.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qmds.codes import CheckFailed, CirculantProvenance, LinearCode, hermitian_gram
from qmds.gf import Field
from qmds.linalg import SubmatrixReport, all_minors_nonsingular, det, identity, mat_mul

__all__ = [
    "circulant_matrix",
    "hermitian_autocorrelation",
    "CandidateReport",
    "check_candidate",
    "choose_scale",
    "build_code",
    "sesqui_inverse_condition",
    "symmetric_expand",
]

_EVEN_K_MESSAGE = (
    "symmetric first rows need odd k: for even k the mirrored entries form a "
    "2x2 submatrix with equal columns, hence zero determinant"
)


def circulant_matrix(field: Field, x) -> np.ndarray:
    """The k x k matrix whose row i+1 is row i cyclically shifted right."""
    x = np.asarray(x, dtype=np.int16)
    k = x.shape[0]
    if k < 2:
        raise ValueError("circulant first row needs length >= 2")
    idx = (np.arange(k)[None, :] - np.arange(k)[:, None]) % k
    return x[idx]


def hermitian_autocorrelation(field: Field, x, m: int) -> int:
    """H_m(x) = sum_i x_i conj(x_(i+m)), indices modulo len(x)."""
    x = np.asarray(x, dtype=np.int16)
    if not 0 <= m <= x.shape[0] - 1:
        raise ValueError("shift must lie in 0..k-1")
    terms = field.mul(x, field.conj(np.roll(x, -m)))
    acc = 0
    for t in terms:
        acc = field.add(acc, t)
    return int(acc)


@dataclass(frozen=True)
class CandidateReport:
    """Fail-fast audit of a circulant first row.

    ``autocorrelations[m]`` holds H_m for m = 0..floor(k/2); entries are None
    past the first violated condition.  ``scale`` is the identity-block scale
    on a pass, ``failed_condition`` names the first violation otherwise.
    """

    x: tuple[int, ...]
    passed: bool
    failed_condition: str | None
    autocorrelations: tuple[int | None, ...]
    minor_scan: SubmatrixReport | None
    scale: int | None


def check_candidate(field: Field, x) -> CandidateReport:
    """Evaluate, in order: entries nonzero, H_m = 0 for m = 1..floor(k/2),
    H_0 != 0, and all j x j minors nonsingular for j up to floor(k/2)."""
    x = tuple(int(c) for c in x)
    k = len(x)
    if k < 2:
        raise ValueError("candidate needs length >= 2")
    half = k // 2
    ac: list[int | None] = [None] * (half + 1)

    def fail(name: str, scan=None) -> CandidateReport:
        return CandidateReport(x, False, name, tuple(ac), scan, None)

    if any(c == 0 for c in x):
        return fail("nonzero_entries")
    for m in range(1, half + 1):
        ac[m] = hermitian_autocorrelation(field, x, m)
        if ac[m] != 0:
            return fail(f"autocorrelation_{m}")
    ac[0] = hermitian_autocorrelation(field, x, 0)
    if ac[0] == 0:
        return fail("norm_sum")
    scan = all_minors_nonsingular(field, circulant_matrix(field, x), half)
    if not scan.ok:
        return fail(f"minors_{scan.failure[0]}", scan)
    return CandidateReport(x, True, None, tuple(ac), scan, choose_scale(field, x))


def choose_scale(field: Field, x) -> int:
    """Smallest-exponent scale with norm(scale) = -H_0(x), which makes every
    row of (scale*I | circulant(x)) self-orthogonal once the H_m vanish."""
    h0 = hermitian_autocorrelation(field, x, 0)
    if h0 == 0:
        raise ValueError("norm sum is zero: no identity-block scale exists")
    target = int(field.neg(h0))
    for j in range(field.order - 1):
        lam = field.exp(j)
        if int(field.norm(lam)) == target:
            return lam
    raise RuntimeError("unreachable: the norm map is onto the subfield")


def build_code(field: Field, x) -> LinearCode:
    """The [2k, k] doubly circulant code of a passing candidate.

    Self-orthogonality of the assembled generator is verified directly, so
    correctness does not rest on the sign convention inside choose_scale.
    """
    report = check_candidate(field, x)
    if not report.passed:
        raise CheckFailed(report.failed_condition, "candidate fails the circulant conditions")
    m = circulant_matrix(field, report.x)
    g = np.hstack([identity(field, len(report.x), report.scale), m])
    if np.any(hermitian_gram(field, g)):
        raise RuntimeError("assembled generator is not self-orthogonal")
    return LinearCode(field, g, provenance=CirculantProvenance(report.x, report.scale))


def sesqui_inverse_condition(field: Field, m, scale: int) -> bool:
    """Whether conj(M)^T M = -norm(scale) * I, i.e. the conjugate transpose
    of M is -norm(scale) times its inverse."""
    m = np.asarray(m, dtype=np.int16)
    if m.shape[0] != m.shape[1]:
        raise ValueError("condition is defined for square matrices")
    if det(field, m) == 0:
        raise ValueError("matrix is singular")
    left = mat_mul(field, field.conj(m).T, m)
    target = identity(field, m.shape[0], int(field.neg(field.norm(scale))))
    return bool(np.array_equal(left, target))


def symmetric_expand(free, k: int) -> tuple[int, ...]:
    """Expand mirror-symmetric free entries (x_1..x_((k+1)/2)) to the full
    first row with x_j = x_(k+2-j); defined for odd k only."""
    if k % 2 == 0:
        raise ValueError(_EVEN_K_MESSAGE)
    need = (k + 1) // 2
    free = tuple(int(c) for c in free)
    if len(free) != need:
        raise ValueError(f"expected {need} free entries for k={k}, got {len(free)}")
    # 0-based position p holds x_(p+1) = x_(k+1-p) = free[k-p]
    return free + tuple(free[k - p] for p in range(need, k))
