import hashlib

from qmds.cli import main


def test_construct_grs_and_verify(tmp_path, capsys):
    cert = tmp_path / "grs.cert"
    assert main(["construct-grs", "--q", "3", "--k", "3", "--out", str(cert)]) == 0
    out = capsys.readouterr().out
    assert "[[10,4,4]]_3" in out and cert.exists()
    assert main(["verify", "--cert", str(cert)]) == 0
    assert "verifies" in capsys.readouterr().out


def test_construct_grs_rejects_bad_k(capsys):
    assert main(["construct-grs", "--q", "3", "--k", "2"]) == 2
    assert "k != q-1" in capsys.readouterr().err


def test_construct_grs_non_monic_h(tmp_path, capsys):
    # eps * (smallest irreducible) over GF(9) serialized low-first
    code = main(
        ["construct-grs", "--q", "3", "--k", "1", "--h", "e^2,0,e^1",
         "--out", str(tmp_path / "x.cert")]
    )
    assert code == 1
    assert "h_monic" in capsys.readouterr().err


def test_verify_circulant_pass(tmp_path, capsys):
    out = tmp_path / "w.cert"
    rc = main(
        ["verify-circulant", "--q", "3", "--k", "5",
         "--x", "e^2,e^3,e^3,e^2,e^0", "--out", str(out)]
    )
    assert rc == 0
    text = capsys.readouterr().out
    assert "result: PASS" in text and "[[10,0,6]]_3" in text
    assert out.exists()


def test_verify_circulant_fail(capsys):
    rc = main(["verify-circulant", "--q", "3", "--k", "5", "--x", "e^0,e^0,e^0,e^0,e^0"])
    assert rc == 1
    assert "FAIL at autocorrelation_1" in capsys.readouterr().out


def test_verify_circulant_bad_element(capsys):
    rc = main(["verify-circulant", "--q", "3", "--k", "2", "--x", "e^9,e^0"])
    assert rc == 2


def test_nogrs_scan_empty(capsys):
    assert main(["nogrs-scan", "--q", "3", "--k", "4", "--n", "8,9,10"]) == 0
    out = capsys.readouterr().out
    assert "findings: none" in out and "instances checked: 17664" in out


def test_nogrs_scan_findings(capsys):
    assert main(["nogrs-scan", "--q", "3", "--k", "3", "--n", "10"]) == 0
    assert "findings (" in capsys.readouterr().out


def test_search_cli(tmp_path, capsys):
    rc = main(
        ["search", "--q", "3", "--k", "5", "--workers", "2", "--out-dir", str(tmp_path)]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "solutions (4):" in out
    assert len(list(tmp_path.glob("circulant_q3_k5_sol*.cert"))) == 4


def test_search_cli_no_certs(tmp_path, capsys):
    rc = main(
        ["search", "--q", "3", "--k", "3", "--no-certs", "--out-dir", str(tmp_path)]
    )
    assert rc == 0
    assert not list(tmp_path.glob("*.cert"))


def test_derive_params_cli(tmp_path, capsys):
    cert = tmp_path / "w.cert"
    main(["check-example", "--name", "k7_q5", "--out-dir", str(tmp_path)])
    capsys.readouterr()
    rc = main(["derive-params", "--cert", str(tmp_path / "k7_q5.cert"), "--r", "3"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "[[11,3,5]]_5" in out and "theorem-implied" in out
    assert main(["derive-params", "--cert", str(tmp_path / "k7_q5.cert"), "--r", "7"]) == 2


def test_check_example_pass(capsys):
    assert main(["check-example", "--name", "k5_q3"]) == 0
    assert "k5_q3: PASS" in capsys.readouterr().out


def test_check_example_unknown(capsys):
    assert main(["check-example", "--name", "nope"]) == 2


def test_verify_exit_codes(tmp_path, capsys):
    cert = tmp_path / "c.cert"
    main(["verify-circulant", "--q", "3", "--k", "5", "--x", "e^2,e^3,e^3,e^2,e^0",
          "--out", str(cert)])
    capsys.readouterr()

    text = cert.read_text()
    # raw bit tamper: integrity exit 3
    broken = tmp_path / "broken.cert"
    broken.write_text(text.replace("x: e^2", "x: e^4", 1))
    assert main(["verify", "--cert", str(broken)]) == 3

    # semantic tamper with a refreshed digest: divergence exit 1
    body = text[: text.rindex("digest: ")].replace("x: e^2,e^3", "x: e^4,e^3")
    digest = hashlib.sha256(body.encode()).hexdigest()
    diverged = tmp_path / "diverged.cert"
    diverged.write_text(body + f"digest: {digest}\n")
    assert main(["verify", "--cert", str(diverged)]) == 1
    assert "divergence" in capsys.readouterr().err

    # truncation: parse error exit 2
    trunc = tmp_path / "trunc.cert"
    trunc.write_text("\n".join(text.splitlines()[:4]) + "\n")
    assert main(["verify", "--cert", str(trunc)]) == 2
