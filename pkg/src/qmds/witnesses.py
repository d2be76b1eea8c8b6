"""Registry of known circulant first rows over small fields.

Each entry records the exponent form of x (in the field presentation
returned by square_field) and the quantum parameter triple the resulting
doubly circulant code certifies.  check_example rebuilds the code, runs the
full certification, and confirms the expected triple.
"""

from __future__ import annotations

from dataclasses import dataclass

from qmds.cert import Certificate, CheckFailed, QuantumParams, make_certificate
from qmds.circulant import build_code
from qmds.gf import Field, square_field

__all__ = ["Witness", "WITNESSES", "witness_vector", "check_example"]


@dataclass(frozen=True)
class Witness:
    name: str
    q: int
    k: int
    x_exponents: tuple[int, ...]
    quantum: tuple[int, int, int]  # (n, dim, dist)


_ALL = (
    Witness("k5_q3", 3, 5, (2, 3, 3, 2, 0), (10, 0, 6)),
    Witness("k5_q4", 4, 5, (2, 12, 12, 2, 0), (10, 0, 6)),
    Witness("k6_q7", 7, 6, (21, 44, 8, 9, 12, 0), (12, 0, 7)),
    Witness("k7_q5", 5, 7, (10, 10, 0, 6, 3, 6, 0), (14, 0, 8)),
    Witness("k7_q7", 7, 7, (4, 40, 45, 0, 0, 45, 40), (14, 0, 8)),
    Witness("k9_q5", 5, 9, (0, 14, 21, 16, 17, 17, 16, 21, 14), (18, 0, 10)),
    Witness("k9_q7", 7, 9, (0, 12, 2, 17, 13, 13, 17, 2, 12), (18, 0, 10)),
)

WITNESSES: dict[str, Witness] = {w.name: w for w in _ALL}


def witness_vector(field: Field, witness: Witness) -> tuple[int, ...]:
    return tuple(field.exp(j) for j in witness.x_exponents)


def check_example(name: str, *, mds_budget: int = 10**6) -> Certificate:
    """Full pipeline for a registered witness; raises CheckFailed on any
    failing check or a quantum-triple mismatch."""
    try:
        witness = WITNESSES[name]
    except KeyError:
        known = ", ".join(sorted(WITNESSES))
        raise ValueError(f"unknown witness {name!r}; known: {known}") from None
    field = square_field(witness.q)
    code = build_code(field, witness_vector(field, witness))
    cert = make_certificate(code, mds_budget=mds_budget)
    expected = QuantumParams(*witness.quantum, witness.q)
    if cert.quantum != expected:
        raise CheckFailed(
            "quantum_params", f"certified {cert.quantum}, registry expects {expected}"
        )
    return cert
