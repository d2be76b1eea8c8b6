"""Command line interface.

Subcommands: construct-grs, nogrs-scan, verify-circulant, search,
derive-params, verify, check-example.  Results go to stdout, progress and
diagnostics to stderr.  Exit codes: 0 success / report produced, 1 a check
failed or a verification diverged, 2 malformed input or parse error,
3 certificate integrity (digest) mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from qmds.cert import (
    CertificateParseError,
    CheckFailed,
    derive_params,
    make_certificate,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from qmds.circulant import build_code, check_candidate
from qmds.codes import BudgetExceeded
from qmds.gf import parse_poly, square_field
from qmds.grs import grs_construct, scan_selforthogonal_grs
from qmds.search import SearchConfig, search
from qmds.witnesses import WITNESSES, check_example


def _field_for(q: int):
    try:
        return square_field(q)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")


def _cmd_construct_grs(args) -> int:
    field = _field_for(args.q)
    h = parse_poly(field, args.h) if args.h else None
    try:
        code = grs_construct(args.q, args.k, h, field=field)
        cert = make_certificate(code, mds_budget=args.budget, samples=args.samples)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Path(args.out or f"grs_q{args.q}_k{args.k}.cert")
    write_certificate(cert, out)
    print(f"wrote {out}")
    print(f"classical: [{cert.n},{cert.dim},{cert.dist}] over GF({field.order})")
    print(f"quantum:   {cert.quantum}")
    return 0


def _cmd_nogrs_scan(args) -> int:
    lengths = [int(n) for n in args.n.split(",")]
    try:
        result = scan_selforthogonal_grs(args.q, args.k, lengths, budget=args.budget)
    except (ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = [f"scan q={args.q} k={args.k} lengths={args.n}"]
    for n, count in result.by_length:
        lines.append(f"length {n}: {count} instances")
    lines.append(f"instances checked: {result.instances}")
    if result.findings:
        lines.append(f"findings ({len(result.findings)}):")
        field = square_field(args.q)
        for f in result.findings:
            pts = ",".join(field.format_element(a) for a in f.points)
            cls = ",".join(field.format_element(w) for w in f.classes)
            ext = field.format_element(f.extension_class) if f.extension_class is not None else "-"
            lines.append(f"  n={f.n} points={pts} classes={cls} extension_class={ext}")
    else:
        lines.append("findings: none")
    report = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(report, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(report)
    return 0


def _cmd_verify_circulant(args) -> int:
    field = _field_for(args.q)
    try:
        x = tuple(field.parse_element(part) for part in args.x.split(","))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if len(x) != args.k:
        print(f"error: x has {len(x)} entries, expected k={args.k}", file=sys.stderr)
        return 2
    report = check_candidate(field, x)
    half = args.k // 2
    print(f"candidate x = {args.x} over GF({field.order}) (k={args.k})")
    if not report.passed:
        print(f"result: FAIL at {report.failed_condition}")
        return 1
    values = ",".join(field.format_element(v) for v in report.autocorrelations[1:])
    print(f"autocorrelations m=1..{half}: {values} (all zero)")
    print(f"norm_sum: {field.format_element(report.autocorrelations[0])}")
    print(f"minors j<=:{half}: pass ({report.minor_scan.checked} checked)")
    print(f"lambda: {field.format_element(report.scale)}")
    cert = make_certificate(build_code(field, x), mds_budget=args.budget)
    print("result: PASS")
    print(f"classical: [{cert.n},{cert.dim},{cert.dist}] over GF({field.order})")
    print(f"quantum:   {cert.quantum}")
    out = Path(args.out or f"circulant_q{args.q}_k{args.k}.cert")
    write_certificate(cert, out)
    print(f"wrote {out}")
    return 0


def _cmd_search(args) -> int:
    field = _field_for(args.q)
    equalities = tuple(
        tuple(int(p) for p in pair.split(",")) for pair in (args.equal or [])
    )
    cfg = SearchConfig(
        field=field,
        k=args.k,
        symmetric=args.symmetric,
        equalities=equalities,
        budget=args.budget,
        workers=args.workers,
    )
    try:
        result = search(cfg)
    except (ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    mode = "symmetric" if args.symmetric else "full"
    print(f"search q={args.q} k={args.k} mode={mode} workers={args.workers}")
    print(f"examined {result.examined} candidates in {result.elapsed:.2f}s")
    pruned = " ".join(f"{k}={v}" for k, v in sorted(result.pruned.items()))
    print(f"pruned: {pruned or 'none'}")
    print(f"solutions ({len(result.solutions)}):")
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for i, x in enumerate(result.solutions, 1):
        text = ",".join(field.format_element(c) for c in x)
        print(f"  {text}")
        if args.certs:
            cert = make_certificate(build_code(field, x))
            path = outdir / f"circulant_q{args.q}_k{args.k}_sol{i:03d}.cert"
            write_certificate(cert, path)
            print(f"  wrote {path}", file=sys.stderr)
    return 0


def _cmd_derive_params(args) -> int:
    try:
        cert = read_certificate(args.cert)
    except CertificateParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        derived = derive_params(cert, args.r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(
        f"{derived} (derived by shortening from {cert.quantum} with r={args.r}; "
        "theorem-implied, not re-verified)"
    )
    return 0


def _cmd_verify(args) -> int:
    try:
        text = Path(args.cert).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        report = verify_certificate(text)
    except CertificateParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    if report.ok:
        print(f"certificate verifies: {report.message}")
        return 0
    if report.status == "integrity_mismatch":
        print(f"integrity failure: {report.message}", file=sys.stderr)
        return 3
    where = report.failed_check or "structure"
    print(f"divergence at {where}: {report.message}", file=sys.stderr)
    return 1


def _cmd_check_example(args) -> int:
    names = sorted(WITNESSES) if args.all else [args.name]
    if not args.all and args.name is None:
        print("error: give --name or --all", file=sys.stderr)
        return 2
    status = 0
    for name in names:
        witness = WITNESSES.get(name)
        if witness is None:
            print(f"error: unknown witness {name!r}; known: {', '.join(sorted(WITNESSES))}",
                  file=sys.stderr)
            return 2
        try:
            cert = check_example(name)
        except CheckFailed as exc:
            print(f"{name}: FAIL ({exc})")
            status = 1
            continue
        print(f"{name}: PASS classical=[{cert.n},{cert.dim},{cert.dist}]_{cert.q**2} "
              f"quantum={cert.quantum}")
        if args.out_dir:
            outdir = Path(args.out_dir)
            outdir.mkdir(parents=True, exist_ok=True)
            path = outdir / f"{name}.cert"
            write_certificate(cert, path)
            print(f"  wrote {path}", file=sys.stderr)
    return status


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmds",
        description="Hermitian self-orthogonal MDS codes over GF(q^2) and their certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct-grs", help="build the length q^2+1 evaluation code")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", help="explicit multiplier polynomial, e.g. 'e^1,0,e^0'")
    p.add_argument("--out", help="certificate path (default grs_q<q>_k<k>.cert)")
    p.add_argument("--budget", type=int, default=10**6)
    p.add_argument("--samples", type=int, default=10**4)
    p.set_defaults(func=_cmd_construct_grs)

    p = sub.add_parser("nogrs-scan", help="scan evaluation codes for dual containment")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", required=True, help="comma-separated lengths, e.g. 8,9,10")
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--out", help="write the findings report to a file")
    p.set_defaults(func=_cmd_nogrs_scan)

    p = sub.add_parser("verify-circulant", help="check a circulant first row")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", required=True, help="first row, e.g. 'e^2,e^3,e^3,e^2,e^0'")
    p.add_argument("--out", help="certificate path on pass")
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=_cmd_verify_circulant)

    p = sub.add_parser("search", help="exhaustive search over circulant first rows")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--equal", action="append", metavar="I,J",
                   help="force coordinates I and J equal (1-based, repeatable)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, default=10**9)
    p.add_argument("--out-dir", default=".", help="directory for solution certificates")
    p.add_argument("--no-certs", dest="certs", action="store_false",
                   help="report solutions without emitting certificates")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("derive-params", help="shortened quantum parameters of a certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=_cmd_derive_params)

    p = sub.add_parser("verify", help="re-run every check recorded in a certificate")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check-example", help="certify a registered witness")
    p.add_argument("--name", help="witness id, e.g. k5_q3")
    p.add_argument("--all", action="store_true")
    p.add_argument("--out-dir", help="write certificates here")
    p.set_defaults(func=_cmd_check_example)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
