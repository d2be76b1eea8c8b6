"""Hermitian self-orthogonal MDS codes over GF(q^2), their certificates,
and exhaustive searches for doubly circulant constructions."""

from qmds.cert import (
    Certificate,
    QuantumParams,
    derive_params,
    format_certificate,
    make_certificate,
    parse_certificate,
    verify_certificate,
)
from qmds.circulant import (
    build_code,
    check_candidate,
    choose_scale,
    circulant_matrix,
    hermitian_autocorrelation,
    sesqui_inverse_condition,
    symmetric_expand,
)
from qmds.codes import (
    BudgetExceeded,
    CheckFailed,
    LinearCode,
    contains_hermitian_dual,
    hermitian_dual,
    hermitian_inner,
    is_hermitian_self_dual,
    is_hermitian_self_orthogonal,
    mds_certify,
    min_distance_bruteforce,
    quadric_dimension,
)
from qmds.gf import Field, smallest_irreducible, square_field
from qmds.grs import grs_construct, grs_encode, scan_selforthogonal_grs, verify_grs_identity
from qmds.search import SearchConfig, SearchResult, normalize, partition, search
from qmds.witnesses import WITNESSES, check_example

__all__ = [
    "Field",
    "square_field",
    "smallest_irreducible",
    "LinearCode",
    "BudgetExceeded",
    "CheckFailed",
    "hermitian_inner",
    "hermitian_dual",
    "contains_hermitian_dual",
    "is_hermitian_self_dual",
    "is_hermitian_self_orthogonal",
    "mds_certify",
    "min_distance_bruteforce",
    "quadric_dimension",
    "grs_construct",
    "grs_encode",
    "verify_grs_identity",
    "scan_selforthogonal_grs",
    "circulant_matrix",
    "hermitian_autocorrelation",
    "check_candidate",
    "choose_scale",
    "build_code",
    "sesqui_inverse_condition",
    "symmetric_expand",
    "SearchConfig",
    "SearchResult",
    "normalize",
    "partition",
    "search",
    "Certificate",
    "QuantumParams",
    "make_certificate",
    "derive_params",
    "format_certificate",
    "parse_certificate",
    "verify_certificate",
    "WITNESSES",
    "check_example",
]
