"""Certificates: verified construction records and their file format.

A certificate carries the field presentation, the construction data (kind
"grs" or "circulant"), the classical code parameters, the named checks that
were run, and the quantum parameter triple the classical code certifies.
Classical [n, n-k, k+1] codes containing their Hermitian dual yield
[[n, n-2k, k+1]]_q; Hermitian self-dual [2k, k, k+1] codes yield
[[2k, 0, k+1]]_q, and the shortening chain [[2k-r, r, k+1-r]]_q for
r = 0..k-1 is recorded as theorem-implied, never as re-verified.

File format: line-oriented UTF-8 "key: value" with the key order
format-version, p, e, modulus, q, kind, k, h|x, lambda, n, dim, dist,
checks.*, quantum, digest.  Field elements are serialized as "e^j" / "0",
the modulus as its coefficients below X^e (constant first), and the final
line holds a sha256 digest of everything above it.
"""

from __future__ import annotations

import functools
import hashlib
import math
import re
from dataclasses import dataclass

from qmds.circulant import build_code, check_candidate
from qmds.codes import (
    CheckFailed,
    CirculantProvenance,
    GrsProvenance,
    LinearCode,
    is_contained_in_dual,
    is_hermitian_self_dual,
    is_hermitian_self_orthogonal,
    mds_certify,
    quadric_report,
)
from qmds.gf import Field, format_poly, parse_poly
from qmds.grs import GrsSpec, verify_grs_identity

__all__ = [
    "FORMAT_VERSION",
    "CertificateParseError",
    "CertificateIntegrityError",
    "Check",
    "QuantumParams",
    "Certificate",
    "make_certificate",
    "derive_params",
    "format_certificate",
    "parse_certificate",
    "write_certificate",
    "read_certificate",
    "VerifyReport",
    "verify_certificate",
]

FORMAT_VERSION = "1"


class CertificateParseError(ValueError):
    """The certificate text is structurally malformed."""


class CertificateIntegrityError(ValueError):
    """The digest line does not match the certificate content."""


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    details: tuple[tuple[str, str], ...] = ()

    def detail(self, key: str) -> str | None:
        for k, v in self.details:
            if k == key:
                return v
        return None


@dataclass(frozen=True)
class QuantumParams:
    n: int
    dim: int
    dist: int
    q: int

    def __str__(self) -> str:
        return f"[[{self.n},{self.dim},{self.dist}]]_{self.q}"

    @classmethod
    def parse(cls, text: str) -> "QuantumParams":
        m = re.fullmatch(r"\[\[(\d+),(\d+),(\d+)\]\]_(\d+)", text.strip())
        if not m:
            raise CertificateParseError(f"bad quantum triple {text!r}")
        return cls(*(int(g) for g in m.groups()))


@dataclass(frozen=True)
class Certificate:
    p: int
    e: int
    modulus: tuple[int, ...]
    q: int
    kind: str
    k: int
    h: tuple[int, ...] | None
    x: tuple[int, ...] | None
    scale: int | None
    n: int
    dim: int
    dist: int
    checks: tuple[Check, ...]
    quantum: QuantumParams

    def field(self) -> Field:
        return _field(self.p, self.e, self.modulus)


@functools.lru_cache(maxsize=None)
def _field(p: int, e: int, modulus: tuple[int, ...]) -> Field:
    return Field(p, e, modulus)


def _fmt(field: Field, a: int) -> str:
    return field.format_element(a)


def _require(cond: bool, check: str, message: str) -> None:
    if not cond:
        raise CheckFailed(check, message)


def _circulant_checks(code: LinearCode, prov: CirculantProvenance, budget: int):
    field = code.field
    x = prov.x
    k = len(x)
    half = k // 2
    report = check_candidate(field, x)
    if not report.passed:
        raise CheckFailed(report.failed_condition, "circulant conditions fail")
    _require(report.scale == prov.scale, "lambda", "stored scale disagrees with the canonical choice")
    checks = [
        Check("nonzero_entries", True),
        Check(
            "autocorrelations",
            True,
            (
                ("m_max", str(half)),
                ("values", ",".join(_fmt(field, v) for v in report.autocorrelations[1:])),
            ),
        ),
        Check("norm_sum", True, (("value", _fmt(field, report.autocorrelations[0])),)),
        Check(
            "minors",
            True,
            (("j_max", str(half)), ("checked", str(report.minor_scan.checked))),
        ),
    ]
    _require(is_hermitian_self_orthogonal(code), "self_orthogonality", "gram matrix is nonzero")
    checks.append(Check("self_orthogonality", True))
    _require(is_hermitian_self_dual(code), "self_dual", "code is not Hermitian self-dual")
    checks.append(Check("self_dual", True))
    mds = mds_certify(code, "full_minors", budget=budget)
    _require(mds.passed and mds.certifying, "mds", "full minor enumeration found a zero minor")
    checks.append(
        Check("mds", True, (("strategy", "full_minors"), ("checked", str(mds.checked))))
    )
    checks.append(_quadric_check(code))
    return checks


def _grs_checks(code: LinearCode, prov: GrsProvenance, strategy, budget, samples, seed):
    field = code.field
    spec = GrsSpec(field, code.k, prov.h, prov.points, prov.extended)
    idr = verify_grs_identity(spec)
    _require(
        idr.top_coeff_ok,
        "h_monic",
        f"coefficient of X^{idr.top_index} in h^(q+1) is {_fmt(field, idr.top_coeff)}, not e^0",
    )
    _require(idr.h_nonvanishing, "h_nonvanishing", "h vanishes at an evaluation point")
    _require(idr.gram_zero, "self_orthogonality", f"basis pair {idr.failing_pair} not orthogonal")
    checks = [
        Check("h_monic", True, (("top_index", str(idr.top_index)),)),
        Check("h_nonvanishing", True),
        Check("self_orthogonality", True),
    ]
    _require(is_contained_in_dual(code), "dual_containment", "rank-of-stack containment fails")
    checks.append(Check("dual_containment", True))
    if strategy is None:
        strategy = "full_minors" if math.comb(code.n, code.k) <= budget else "analytic_grs"
    mds = mds_certify(code, strategy, budget=budget, samples=samples, seed=seed)
    _require(mds.passed and mds.certifying, "mds", f"{strategy} certification failed")
    details = [("strategy", strategy), ("checked", str(mds.checked))]
    if strategy != "full_minors":
        details += [("samples", str(samples)), ("seed", str(seed))]
    checks.append(Check("mds", True, tuple(details)))
    checks.append(_quadric_check(code))
    return checks


def _quadric_check(code: LinearCode) -> Check:
    qr = quadric_report(code)
    return Check(
        "quadric",
        True,
        (
            ("dimension", str(qr.dimension)),
            ("grs_dimension", str(qr.grs_dimension)),
            ("converse_applies", "yes" if qr.converse_applies else "no"),
        ),
    )


def make_certificate(
    code: LinearCode,
    *,
    mds_strategy: str | None = None,
    mds_budget: int = 10**6,
    samples: int = 10**4,
    seed: int = 0,
) -> Certificate:
    """Run every check for the code's construction kind and assemble the
    certificate; raises CheckFailed naming the first check that fails."""
    field = code.field
    if field.q is None:
        raise ValueError("certificates require a field of square order")
    prov = code.provenance
    if isinstance(prov, CirculantProvenance):
        checks = _circulant_checks(code, prov, mds_budget)
        k = code.k
        quantum = QuantumParams(2 * k, 0, k + 1, field.q)
        return Certificate(
            field.p, field.e, field.modulus, field.q, "circulant", k,
            None, prov.x, prov.scale, code.n, k, k + 1, tuple(checks), quantum,
        )
    if isinstance(prov, GrsProvenance):
        checks = _grs_checks(code, prov, mds_strategy, mds_budget, samples, seed)
        k = code.k
        quantum = QuantumParams(code.n, code.n - 2 * k, k + 1, field.q)
        return Certificate(
            field.p, field.e, field.modulus, field.q, "grs", k,
            prov.h, None, None, code.n, k, code.n - k + 1, tuple(checks), quantum,
        )
    raise ValueError("code carries no recognised construction provenance")


def derive_params(cert: Certificate, r: int) -> QuantumParams:
    """Shortened parameters [[2k-r, r, k+1-r]]_q for a self-dual certificate.

    The derived triples are theorem-implied (pure codes shorten step by
    step); the shortened codes themselves are not constructed or re-checked.
    """
    if cert.quantum.dim != 0:
        raise ValueError("the shortening chain starts from a quantum dimension 0 certificate")
    k = cert.dim
    r = int(r)
    if not 0 <= r <= k - 1:
        raise ValueError(f"shortening steps must lie in 0..{k - 1}, got {r}")
    return QuantumParams(cert.quantum.n - r, r, cert.quantum.dist - r, cert.quantum.q)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def format_certificate(cert: Certificate) -> str:
    field = cert.field()
    lines = [
        f"format-version: {FORMAT_VERSION}",
        f"p: {cert.p}",
        f"e: {cert.e}",
        f"modulus: {','.join(str(c) for c in cert.modulus)}",
        f"q: {cert.q}",
        f"kind: {cert.kind}",
        f"k: {cert.k}",
    ]
    if cert.kind == "grs":
        lines.append(f"h: {format_poly(field, cert.h)}")
    else:
        lines.append(f"x: {','.join(_fmt(field, c) for c in cert.x)}")
        lines.append(f"lambda: {_fmt(field, cert.scale)}")
    lines += [f"n: {cert.n}", f"dim: {cert.dim}", f"dist: {cert.dist}"]
    for check in cert.checks:
        value = "pass" if check.passed else "fail"
        extra = "".join(f" {k}={v}" for k, v in check.details)
        lines.append(f"checks.{check.name}: {value}{extra}")
    lines.append(f"quantum: {cert.quantum}")
    content = "".join(line + "\n" for line in lines)
    digest = hashlib.sha256(content.encode("utf-8")).hexdigest()
    return content + f"digest: {digest}\n"


def _parse_kv(lines: list[str]) -> list[tuple[str, str]]:
    out = []
    for i, line in enumerate(lines):
        if ": " not in line:
            raise CertificateParseError(f"line {i + 1} is not 'key: value'")
        key, value = line.split(": ", 1)
        out.append((key, value))
    return out


def parse_certificate(text: str) -> Certificate:
    """Strict parse; raises CertificateIntegrityError if the digest line does
    not match the content, CertificateParseError on any structural defect."""
    lines = text.splitlines()
    if not lines or not lines[-1].startswith("digest: "):
        raise CertificateParseError("missing digest line")
    content = "".join(line + "\n" for line in lines[:-1])
    claimed = lines[-1][len("digest: "):].strip()
    actual = hashlib.sha256(content.encode("utf-8")).hexdigest()
    if claimed != actual:
        raise CertificateIntegrityError("digest mismatch: certificate content was altered")
    pairs = _parse_kv(lines[:-1])
    kv = dict(pairs)
    try:
        if kv["format-version"] != FORMAT_VERSION:
            raise CertificateParseError(f"unsupported format-version {kv['format-version']!r}")
        p, e = int(kv["p"]), int(kv["e"])
        modulus = tuple(int(c) for c in kv["modulus"].split(","))
        field = _field(p, e, modulus)
        q, kind, k = int(kv["q"]), kv["kind"], int(kv["k"])
        if kind == "grs":
            h, x, scale = parse_poly(field, kv["h"]), None, None
        elif kind == "circulant":
            h = None
            x = tuple(field.parse_element(part) for part in kv["x"].split(","))
            scale = field.parse_element(kv["lambda"])
        else:
            raise CertificateParseError(f"unknown kind {kind!r}")
        n, dim, dist = int(kv["n"]), int(kv["dim"]), int(kv["dist"])
        checks = []
        for key, value in pairs:
            if not key.startswith("checks."):
                continue
            parts = value.split(" ")
            if parts[0] not in ("pass", "fail"):
                raise CertificateParseError(f"check {key} must be pass/fail")
            details = []
            for part in parts[1:]:
                if "=" not in part:
                    raise CertificateParseError(f"bad check detail {part!r}")
                dk, dv = part.split("=", 1)
                details.append((dk, dv))
            checks.append(Check(key[len("checks."):], parts[0] == "pass", tuple(details)))
        quantum = QuantumParams.parse(kv["quantum"])
    except KeyError as exc:
        raise CertificateParseError(f"missing key {exc.args[0]!r}") from None
    except ValueError as exc:
        if isinstance(exc, (CertificateParseError, CertificateIntegrityError)):
            raise
        raise CertificateParseError(str(exc)) from None
    if field.q != q:
        raise CertificateParseError("q disagrees with the field presentation")
    return Certificate(p, e, modulus, q, kind, k, h, x, scale, n, dim, dist, tuple(checks), quantum)


def write_certificate(cert: Certificate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_certificate(cert))


def read_certificate(path) -> Certificate:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_certificate(fh.read())


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    status: str  # verified | integrity_mismatch | divergence
    failed_check: str | None
    message: str


def _rebuild(cert: Certificate) -> Certificate:
    field = cert.field()
    if cert.kind == "circulant":
        code = build_code(field, cert.x)
        return make_certificate(code)
    from qmds.grs import grs_construct  # local import avoids a cycle

    mds = next((c for c in cert.checks if c.name == "mds"), None)
    strategy = mds.detail("strategy") if mds else None
    samples = int(mds.detail("samples") or 10**4) if mds else 10**4
    seed = int(mds.detail("seed") or 0) if mds else 0
    code = grs_construct(cert.q, cert.k, cert.h, field=field)
    return make_certificate(code, mds_strategy=strategy, samples=samples, seed=seed)


def verify_certificate(text: str) -> VerifyReport:
    """Re-run every claimed check from the construction data alone and
    report agreement or the first divergence.  Parse errors raise."""
    try:
        cert = parse_certificate(text)
    except CertificateIntegrityError as exc:
        return VerifyReport(False, "integrity_mismatch", None, str(exc))
    try:
        rebuilt = _rebuild(cert)
    except CheckFailed as exc:
        return VerifyReport(False, "divergence", exc.check, f"re-check failed: {exc}")
    except (ValueError, RuntimeError) as exc:
        return VerifyReport(False, "divergence", None, f"reconstruction failed: {exc}")
    for name in ("n", "dim", "dist", "scale", "quantum"):
        if getattr(cert, name) != getattr(rebuilt, name):
            return VerifyReport(
                False, "divergence", name,
                f"{name} recomputes to {getattr(rebuilt, name)}, certificate says {getattr(cert, name)}",
            )
    if len(cert.checks) != len(rebuilt.checks):
        return VerifyReport(False, "divergence", None, "check list differs from reconstruction")
    for stored, fresh in zip(cert.checks, rebuilt.checks):
        if stored != fresh:
            return VerifyReport(
                False, "divergence", fresh.name,
                f"check {fresh.name} recomputes differently",
            )
    return VerifyReport(True, "verified", None, f"{len(cert.checks)} checks re-verified")
