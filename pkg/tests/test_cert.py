import hashlib

import pytest

from qmds.cert import (
    Certificate,
    CertificateIntegrityError,
    CertificateParseError,
    QuantumParams,
    derive_params,
    format_certificate,
    make_certificate,
    parse_certificate,
    verify_certificate,
)
from qmds.grs import grs_construct
from qmds.witnesses import WITNESSES, check_example


@pytest.fixture(scope="module")
def k5_cert():
    return check_example("k5_q3")


@pytest.fixture(scope="module")
def grs_cert():
    return make_certificate(grs_construct(3, 3))


def _retamper(text: str, old: str, new: str) -> str:
    """Swap a substring and refresh the digest so only the semantics change."""
    body = text[: text.rindex("digest: ")]
    body = body.replace(old, new)
    digest = hashlib.sha256(body.encode()).hexdigest()
    return body + f"digest: {digest}\n"


# -- quantum parameters ----------------------------------------------------------


def test_grs_quantum_triple(grs_cert):
    assert grs_cert.quantum == QuantumParams(10, 4, 4, 3)
    assert (grs_cert.n, grs_cert.dim, grs_cert.dist) == (10, 3, 8)


def test_witness_quantum_triples():
    assert check_example("k7_q5").quantum == QuantumParams(14, 0, 8, 5)
    assert check_example("k5_q4").quantum == QuantumParams(10, 0, 6, 4)


def test_quantum_singleton_equality(k5_cert, grs_cert):
    for cert in (k5_cert, grs_cert):
        qp = cert.quantum
        assert qp.dim == qp.n - 2 * qp.dist + 2


def test_make_certificate_requires_provenance(f9):
    from qmds.codes import LinearCode
    from qmds.linalg import identity

    with pytest.raises(ValueError, match="provenance"):
        make_certificate(LinearCode(f9, identity(f9, 2)))


# -- shortening chain -------------------------------------------------------------


def test_derive_params_examples(k5_cert):
    cert18 = Certificate(
        **{**k5_cert.__dict__, "quantum": QuantumParams(18, 0, 10, 5), "dim": 9, "n": 18}
    )
    assert derive_params(cert18, 3) == QuantumParams(15, 3, 7, 5)
    assert derive_params(cert18, 0) == QuantumParams(18, 0, 10, 5)


def test_derive_params_range(k5_cert):
    cert14 = Certificate(
        **{**k5_cert.__dict__, "quantum": QuantumParams(14, 0, 8, 5), "dim": 7, "n": 14}
    )
    assert derive_params(cert14, 6) == QuantumParams(8, 6, 2, 5)
    with pytest.raises(ValueError, match="0..6"):
        derive_params(cert14, 7)


def test_derive_params_chain(k5_cert):
    # one step at a time equals the direct formula
    qp = k5_cert.quantum
    for r in range(k5_cert.dim):
        stepped = qp
        for _ in range(r):
            stepped = QuantumParams(stepped.n - 1, stepped.dim + 1, stepped.dist - 1, stepped.q)
        assert stepped == derive_params(k5_cert, r)


def test_derive_params_needs_dimension_zero(grs_cert):
    with pytest.raises(ValueError, match="dimension 0"):
        derive_params(grs_cert, 1)


def test_singleton_equality_preserved_by_derivation(k5_cert):
    for r in range(k5_cert.dim):
        qp = derive_params(k5_cert, r)
        assert qp.dim == qp.n - 2 * qp.dist + 2


# -- file format -------------------------------------------------------------------


def test_round_trip_bit_exact(k5_cert, grs_cert):
    for cert in (k5_cert, grs_cert):
        text = format_certificate(cert)
        again = parse_certificate(text)
        assert again == cert
        assert format_certificate(again) == text


def test_format_key_order(k5_cert):
    keys = [line.split(":")[0] for line in format_certificate(k5_cert).splitlines()]
    assert keys[:7] == ["format-version", "p", "e", "modulus", "q", "kind", "k"]
    assert keys[7:9] == ["x", "lambda"]
    assert keys[9:12] == ["n", "dim", "dist"]
    assert all(k.startswith("checks.") for k in keys[12:-2])
    assert keys[-2:] == ["quantum", "digest"]


def test_grs_format_has_h_not_lambda(grs_cert):
    text = format_certificate(grs_cert)
    assert "\nh: " in text and "\nlambda: " not in text and "\nx: " not in text


def test_truncated_file_is_parse_error(k5_cert):
    text = format_certificate(k5_cert)
    with pytest.raises(CertificateParseError):
        parse_certificate("\n".join(text.splitlines()[:5]) + "\n")
    with pytest.raises(CertificateParseError):
        parse_certificate("")


def test_bit_tamper_breaks_integrity(k5_cert):
    text = format_certificate(k5_cert).replace("x: e^2", "x: e^3", 1)
    with pytest.raises(CertificateIntegrityError):
        parse_certificate(text)
    report = verify_certificate(text)
    assert not report.ok and report.status == "integrity_mismatch"


# -- verification -------------------------------------------------------------------


def test_verify_round_trip(k5_cert, grs_cert):
    for cert in (k5_cert, grs_cert):
        report = verify_certificate(format_certificate(cert))
        assert report.ok and report.status == "verified"


def test_verify_all_witnesses_small():
    for name in ("k5_q3", "k5_q4", "k7_q5"):
        report = verify_certificate(format_certificate(check_example(name)))
        assert report.ok, name


def test_semantic_tamper_names_failing_check(k5_cert):
    # change one x entry (digest refreshed): the candidate re-check must fail
    # at an autocorrelation or minor condition
    text = _retamper(format_certificate(k5_cert), "x: e^2,e^3", "x: e^4,e^3")
    report = verify_certificate(text)
    assert not report.ok and report.status == "divergence"
    assert report.failed_check.startswith(("autocorrelation", "minors", "norm_sum"))


def test_tampered_quantum_line_diverges(k5_cert):
    text = _retamper(format_certificate(k5_cert), "[[10,0,6]]_3", "[[10,0,7]]_3")
    report = verify_certificate(text)
    assert not report.ok and report.status == "divergence"
    assert report.failed_check == "quantum"


def test_tampered_lambda_diverges(k5_cert):
    text = _retamper(format_certificate(k5_cert), "lambda: e^1", "lambda: e^3")
    report = verify_certificate(text)
    assert not report.ok and report.status == "divergence"


def test_verify_grs_with_analytic_strategy(f49):
    code = grs_construct(7, 7)
    cert = make_certificate(code, samples=1500)
    report = verify_certificate(format_certificate(cert))
    assert report.ok


# -- the registry --------------------------------------------------------------


def test_unknown_witness_name():
    with pytest.raises(ValueError, match="unknown witness"):
        check_example("k4_q9")


def test_registry_shapes():
    assert len(WITNESSES) == 7
    for w in WITNESSES.values():
        assert len(w.x_exponents) == w.k
        n, dim, dist = w.quantum
        assert n == 2 * w.k and dim == 0 and dist == w.k + 1
