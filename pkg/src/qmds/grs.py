"""Evaluation (generalised Reed-Solomon) codes contained in their Hermitian dual.

The length q^2+1 construction evaluates polynomials of degree < k at every
element of GF(q^2), scales coordinate j by h(a_j) for a root-free monic
multiplier polynomial h of degree q-k, and appends the top coefficient as an
extra coordinate.  The result is a [q^2+1, k, q^2+2-k] MDS code lying inside
its Hermitian dual whenever k <= q and k != q-1.

For k >= q+1 no evaluation code of any length is self-orthogonal; the
scanner corroborates this on small parameters by enumerating multiplier
assignments up to the only data the orthogonality sums depend on, the norm
classes v_i^(q+1) in GF(q)*.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from qmds.codes import (
    BudgetExceeded,
    CheckFailed,
    GrsProvenance,
    LinearCode,
    hermitian_gram,
)
from qmds.gf import (
    Field,
    poly_degree,
    poly_eval,
    poly_is_monic,
    poly_pow,
    poly_trim,
    smallest_irreducible,
    square_field,
)

__all__ = [
    "canonical_points",
    "GrsSpec",
    "grs_spec",
    "generator_matrix",
    "grs_construct",
    "GeneralGrsSpec",
    "grs_encode",
    "GrsIdentityReport",
    "verify_grs_identity",
    "ScanFinding",
    "ScanResult",
    "scan_selforthogonal_grs",
]


def canonical_points(field: Field) -> tuple[int, ...]:
    """All field elements in the canonical order e^0, e^1, ..., with 0 last."""
    return field.nonzero_elements() + (0,)


@dataclass(frozen=True)
class GrsSpec:
    """Data of the length q^2+1 construction: exhaustive points, multiplier
    polynomial h, and the top-coefficient extension column."""

    field: Field
    k: int
    h: tuple[int, ...]
    points: tuple[int, ...]
    extended: bool = True


def grs_spec(field: Field, k: int, h=None) -> GrsSpec:
    """Validated spec; picks the default h when none is given.

    h defaults to 1 for k = q and to the smallest monic irreducible of
    degree q-k for k <= q-2.  k = q-1 is rejected: a root-free monic
    multiplier of degree 1 cannot exist, so the construction has no valid h.
    """
    q = field.q
    if q is None:
        raise ValueError("the construction needs a field of square order")
    if not 1 <= k <= q or k == q - 1:
        raise ValueError(
            f"k={k} is outside the construction's hypothesis: k <= q and k != q-1 "
            f"(q={q}; a root-free monic multiplier of degree q-k is required, and "
            "every monic polynomial of degree 1 has a root)"
        )
    points = canonical_points(field)
    if h is None:
        h = (1,) if k == q else smallest_irreducible(field, q - k)
    else:
        h = poly_trim(h)
        if poly_degree(h) != q - k:
            raise CheckFailed("h_degree", f"h must have degree q-k={q - k}, got {poly_degree(h)}")
        if not poly_is_monic(h):
            raise CheckFailed("h_monic", "multiplier polynomial must be monic")
        bad = [a for a in points if poly_eval(field, h, a) == 0]
        if bad:
            raise CheckFailed(
                "h_nonvanishing", f"h vanishes at {field.format_element(bad[0])}"
            )
    return GrsSpec(field, k, h, points, True)


def _multipliers(spec: GrsSpec) -> tuple[int, ...]:
    return tuple(poly_eval(spec.field, spec.h, a) for a in spec.points)


def generator_matrix(spec: GrsSpec) -> np.ndarray:
    field, k = spec.field, spec.k
    mult = _multipliers(spec)
    npts = len(spec.points)
    n = npts + (1 if spec.extended else 0)
    g = np.zeros((k, n), dtype=np.int16)
    for i in range(k):
        g[i, :npts] = [field.mul(m, field.pow(a, i)) for m, a in zip(mult, spec.points)]
    if spec.extended:
        g[k - 1, n - 1] = 1
    return g


def grs_construct(q: int, k: int, h=None, *, field: Field | None = None) -> LinearCode:
    """The [q^2+1, k, q^2+2-k] code contained in its Hermitian dual."""
    field = field if field is not None else square_field(q)
    if field.q != q:
        raise ValueError(f"field has order {field.order}, expected {q * q}")
    spec = grs_spec(field, k, h)
    prov = GrsProvenance(spec.points, _multipliers(spec), spec.h, spec.extended)
    return LinearCode(field, generator_matrix(spec), provenance=prov)


@dataclass(frozen=True)
class GeneralGrsSpec:
    """A general evaluation code: distinct points, arbitrary multipliers
    (zeros truncate the corresponding coordinate), and an optional
    top-coefficient column scaled by ``extension`` (None = no column)."""

    field: Field
    k: int
    points: tuple[int, ...]
    multipliers: tuple[int, ...]
    extension: int | None = None

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise ValueError("evaluation points must be pairwise distinct")
        if len(self.multipliers) != len(self.points):
            raise ValueError("one multiplier per evaluation point required")


def grs_encode(spec: GeneralGrsSpec, f) -> np.ndarray:
    """The codeword of a polynomial f of degree <= k-1."""
    field = spec.field
    f = poly_trim(f)
    if poly_degree(f) > spec.k - 1:
        raise ValueError(f"polynomial degree {poly_degree(f)} exceeds k-1={spec.k - 1}")
    vals = [
        int(field.mul(v, poly_eval(field, f, a)))
        for v, a in zip(spec.multipliers, spec.points)
    ]
    if spec.extension is not None:
        top = f[spec.k - 1] if len(f) >= spec.k else 0
        vals.append(int(field.mul(spec.extension, top)))
    return np.array(vals, dtype=np.int16)


@dataclass(frozen=True)
class GrsIdentityReport:
    """Self-orthogonality audit of a length q^2+1 spec: the basis gram must
    vanish, and the coefficient of X^((q-k)(q+1)) in h^(q+1) must be 1
    (equivalently h is monic), which is what cancels the extension column."""

    gram_zero: bool
    failing_pair: tuple[int, int] | None
    top_coeff_ok: bool
    top_index: int
    top_coeff: int
    h_nonvanishing: bool


def verify_grs_identity(spec: GrsSpec) -> GrsIdentityReport:
    field, k = spec.field, spec.k
    q = field.q
    hq = poly_pow(field, spec.h, q + 1)
    top_index = (q - k) * (q + 1)
    top = hq[top_index] if top_index < len(hq) else 0
    nonvan = all(poly_eval(field, spec.h, a) != 0 for a in spec.points)
    gram = hermitian_gram(field, generator_matrix(spec))
    bad = np.argwhere(gram != 0)
    failing = (int(bad[0][0]), int(bad[0][1])) if bad.size else None
    return GrsIdentityReport(
        gram_zero=failing is None,
        failing_pair=failing,
        top_coeff_ok=top == 1,
        top_index=top_index,
        top_coeff=int(top),
        h_nonvanishing=nonvan,
    )


@dataclass(frozen=True)
class ScanFinding:
    """A self-orthogonal instance: point subset, per-point norm classes in
    GF(q)*, and the extension column's norm class (None if absent)."""

    n: int
    points: tuple[int, ...]
    classes: tuple[int, ...]
    extension_class: int | None


@dataclass(frozen=True)
class ScanResult:
    findings: tuple[ScanFinding, ...]
    instances: int
    by_length: tuple[tuple[int, int], ...]


def _scan_budget(q: int, lengths, order: int) -> int:
    total = 0
    for n in lengths:
        for extended in (False, True):
            m = n - (1 if extended else 0)
            if m < 1 or m > order:
                continue
            total += math.comb(order, m) * (q - 1) ** m * ((q - 1) if extended else 1)
    return total


def scan_selforthogonal_grs(
    q: int,
    k: int,
    lengths,
    *,
    budget: int = 10**7,
    field: Field | None = None,
) -> ScanResult:
    """Enumerate evaluation codes of the given lengths up to multiplier
    scaling and report every instance contained in its Hermitian dual.

    Only the norm classes w_i = v_i^(q+1) in GF(q)* enter the orthogonality
    sums, so the scan runs over (q-1)^n class vectors instead of (q^2-1)^n
    multiplier vectors.  Zero multipliers truncate coordinates, which is the
    same as scanning a shorter length.
    """
    field = field if field is not None else square_field(q)
    if field.q != q:
        raise ValueError(f"field has order {field.order}, expected {q * q}")
    if k < 1:
        raise ValueError("dimension must be >= 1")
    lengths = tuple(int(n) for n in lengths)
    total = _scan_budget(q, lengths, field.order)
    if total > budget:
        raise BudgetExceeded(f"scan needs {total} instances, budget is {budget}")

    points = canonical_points(field)
    units = field.subfield_units()
    # per-point monomial table: powers a^(i + j q) for basis pairs (X^i, X^j)
    pre = {
        a: np.array(
            [[field.pow(a, i + j * q) for j in range(k)] for i in range(k)],
            dtype=np.int16,
        )
        for a in points
    }

    findings = []
    instances = 0
    by_length = []
    for n in lengths:
        n_instances = 0
        for extended in (False, True):
            m = n - (1 if extended else 0)
            if m < 1 or m > field.order:
                continue
            ext_options = units if extended else (None,)
            for subset in itertools.combinations(points, m):
                tables = [pre[a] for a in subset]
                for classes in itertools.product(units, repeat=m):
                    for ext in ext_options:
                        n_instances += 1
                        if _sums_vanish(field, tables, classes, ext, k):
                            finding = ScanFinding(n, subset, classes, ext)
                            _cross_check_finding(field, q, k, finding)
                            findings.append(finding)
        instances += n_instances
        by_length.append((n, n_instances))
    return ScanResult(tuple(findings), instances, tuple(by_length))


def _sums_vanish(field: Field, tables, classes, ext, k: int) -> bool:
    for i in range(k):
        for j in range(k):
            s = 0
            for w, table in zip(classes, tables):
                s = field.add(s, field.mul(w, table[i, j]))
            if ext is not None and i == k - 1 and j == k - 1:
                s = field.add(s, ext)
            if s != 0:
                return False
    return True


def _class_representative(field: Field, w: int) -> int:
    # units of GF(q) are exactly the norms; exp(t) has norm exp((q+1) t)
    return field.exp(field.log(w) // (field.q + 1))


def _cross_check_finding(field: Field, q: int, k: int, finding: ScanFinding) -> None:
    """Rebuild an actual code from norm-class representatives and confirm the
    gram matrix vanishes; guards the class-level shortcut."""
    mult = [_class_representative(field, w) for w in finding.classes]
    npts = len(finding.points)
    n = npts + (1 if finding.extension_class is not None else 0)
    g = np.zeros((k, n), dtype=np.int16)
    for i in range(k):
        g[i, :npts] = [field.mul(v, field.pow(a, i)) for v, a in zip(mult, finding.points)]
    if finding.extension_class is not None:
        g[k - 1, n - 1] = _class_representative(field, finding.extension_class)
    if np.any(hermitian_gram(field, g)):
        raise RuntimeError("scan finding failed its reconstruction cross-check")
