import json

import pytest

from pbrauer.errors import ParseError, UnsupportedPrime
from pbrauer.cli import Request, execute, main, parse_request


def _run(argv):
    return execute(parse_request(argv))


# ----------------------------------------------------------------------------
# request parsing

def test_parse_request_fields():
    req = parse_request(["k2-vanish", "--p", "3", "--vars", "t1, t2",
                         "sym(t1, t2)"])
    assert req == Request("k2-vanish", 3, ("t1", "t2"), None, 0, "json",
                          None, "sym(t1, t2)")


def test_parse_request_rejects_bad_primes():
    with pytest.raises(ParseError):
        parse_request(["k2-vanish", "--p", "7", "--vars", "t1", "sym(t1, t1)"])
    with pytest.raises(UnsupportedPrime):
        parse_request(["normal-form", "--p", "3", "--vars", "t1",
                       "sym(t1, t1)"])
    # residue-field commands accept all supported primes
    parse_request(["omega-cert", "--p", "5", "--vars", "t1,t2",
                   "cert(1, t1, t2)"])


def test_usage_errors_exit_one():
    for argv in (["bogus-command"],
                 ["k2-vanish"],                       # missing EXPR
                 ["brdim", "--p"],                    # missing value
                 ["k2-vanish", "--json", "--text", "sym(t1, t1)"]):
        with pytest.raises(SystemExit) as exc:
            parse_request(argv)
        assert exc.value.code == 1


# ----------------------------------------------------------------------------
# command execution

def test_k2_vanish_checks():
    report, code = _run(["k2-vanish", "--vars", "t1", "sym(t1, t1)"])
    assert code == 0
    assert report["status"] == "ok"
    assert report["verdicts"]["vanishes"] is True
    assert report["verdicts"]["omega2_support"] == []

    report, code = _run(["k2-vanish", "--vars", "t1,t2", "sym(t1, t2)"])
    assert code == 0
    assert report["verdicts"]["vanishes"] is False
    assert report["verdicts"]["omega2_support"] == [["dt1^dt2", "(1)/(t1*t2)"]]

    # Steinberg relation at p = 3
    report, code = _run(["k2-vanish", "--p", "3", "--vars", "t1",
                         "sym(t1, 1 - t1)"])
    assert code == 0
    assert report["verdicts"]["vanishes"] is True


def test_normal_form_report():
    report, code = _run(["normal-form", "--vars", "t1",
                         "sym(t1, t1) + sym(pi, 1 + 2*t1)"])
    assert code == 0
    v = report["verdicts"]
    assert v["level"] == 1
    assert v["is_zero"] is False
    assert v["normal_form"]["lambda[t1]"] == "(7)"
    assert v["layer_support"]["columns"] == ["t1", "pi"]
    assert v["layer_support"]["grid"] == [[1, 1], [1, 1]]
    kinds = {c["kind"]: c for c in report["certificates"]}
    assert kinds["difference-extraction"]["exact"] is True
    assert kinds["difference-extraction"]["level"] == "infinity"
    assert kinds["hilbert-specialization"]["points"] == 20
    assert kinds["hilbert-specialization"]["agreements"] == 20


def test_index_bounds_report():
    report, code = _run(["index-bounds", "--vars", "t1,t2,t3,t4",
                         "sym(t1, t2) + sym(t3, t4)"])
    assert code == 0
    v = report["verdicts"]
    assert (v["lower_exp"], v["upper_exp"]) == (2, 2)
    assert (v["index_lower"], v["index_upper"]) == (4, 4)
    assert v["exact"] is True


def test_split_field_report():
    report, code = _run(["split-field", "--vars", "t1,t2", "0"])
    assert code == 0
    v = report["verdicts"]
    assert v["generators"] == [["t1", 4], ["t2", 2], ["pi", 2]]
    assert v["total_degree"] == 16


def test_brdim_report_command():
    report, code = _run(["brdim", "--vars", "t1"])
    assert code == 0
    assert (report["verdicts"]["lower"], report["verdicts"]["upper"]) == (1, 2)
    assert report["verdicts"]["witness"] is None

    report, code = _run(["brdim", "--vars", "t1,t2,t3,t4"])
    assert code == 0
    v = report["verdicts"]
    assert (v["lower"], v["upper"]) == (2, 8)
    assert v["witness"]["lower_exp"] == 2
    assert v["witness"]["upper_exp"] == 2


def test_omega_cert_report():
    report, code = _run(["omega-cert", "--vars", "t1,t2,t3,t4", "--seed", "5",
                         "cert(1, t1, t2) + cert(1, t3, t4)"])
    assert code == 0
    v = report["verdicts"]
    assert v["bound_exponent"] == 2
    assert v["nonvanishing_below_degree"] == 4
    assert v["generator_rank"] == 4
    kinds = {c["kind"]: c for c in report["certificates"]}
    sample = kinds["radical-restriction-sample"]
    assert sample["nonzero"] == sample["samples"] == 50


def test_mathematical_rejection_exits_two():
    report, code = _run(["normal-form", "--vars", "t1", "sym(3*t1, 2*t1)"])
    assert code == 2
    assert report["status"] == "rejected"
    assert report["error"]["type"] == "NotInBr1"
    assert report["error"]["datum"]["unit_class"] == "t1"
    assert report["verdicts"] == {}


def test_grammar_error_exits_one():
    report, code = _run(["k2-vanish", "--vars", "t1", "sym(t1,"])
    assert code == 1
    assert report["status"] == "usage-error"
    assert report["error"]["type"] == "ParseError"


def test_low_precision_is_a_usage_error():
    report, code = _run(["normal-form", "--vars", "t1", "--precision", "2",
                         "sym(t1, t1)"])
    assert code == 1
    assert report["status"] == "usage-error"
    assert report["error"]["type"] == "ValueError"


def test_reports_deterministic_modulo_timing():
    a, _ = _run(["normal-form", "--vars", "t1", "--seed", "4",
                 "sym(t1, t1) + sym(pi, 1 + 2*t1)"])
    b, _ = _run(["normal-form", "--vars", "t1", "--seed", "4",
                 "sym(t1, t1) + sym(pi, 1 + 2*t1)"])
    a["timing_ms"] = b["timing_ms"] = None
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["schema_version"] == 1


# ----------------------------------------------------------------------------
# main(): streams, formats, bundles

def test_main_writes_json_report(capsys):
    code = main(["k2-vanish", "--vars", "t1", "sym(t1, t1)"])
    captured = capsys.readouterr()
    assert code == 0
    report = json.loads(captured.out)
    assert report["schema_version"] == 1
    assert report["status"] == "ok"
    assert captured.err == ""


def test_main_text_format(capsys):
    code = main(["brdim", "--text", "--vars", "t1,t2"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.startswith("command: brdim\n")
    assert "status: ok" in captured.out


def test_main_rejects_unsupported_prime_on_stderr(capsys):
    code = main(["brdim", "--p", "3"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out == ""
    assert "error:" in captured.err


def test_main_exit_code_passthrough(capsys):
    assert main(["normal-form", "--vars", "t1", "sym(3*t1, 2*t1)"]) == 2
    capsys.readouterr()


def test_out_bundle(tmp_path, capsys):
    outdir = tmp_path / "bundle"
    code = main(["index-bounds", "--vars", "t1,t2", "--out", str(outdir),
                 "sym(t1, t2)"])
    stdout = capsys.readouterr().out
    assert code == 0
    report_path = outdir / "report.json"
    csv_path = outdir / "verdicts.csv"
    fig_path = outdir / "figure.png"
    assert report_path.is_file() and csv_path.is_file() and fig_path.is_file()
    assert json.loads(report_path.read_text()) == json.loads(stdout)
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "key,value"
    assert any(line.startswith("lower_exp,") for line in lines)
    assert fig_path.stat().st_size > 1000
    assert fig_path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_selftest_command():
    report, code = _run(["selftest", "--seed", "3"])
    assert code == 0
    assert report["verdicts"]["total_failed"] == 0
    assert report["verdicts"]["total_passed"] > 4000
    assert set(report["verdicts"]["suites"]) == {
        "fields", "differentials", "milnor", "cdvf", "hilbert", "brauer"}
