import contextlib
import io
import json
import os

import pytest

from polarcalc.cli import main as cli_main
from polarcalc.parsing import ParseError, TokenStream, tokenize
from polarcalc.session import (
    Session,
    SessionError,
    parse_chain_expr,
    render_chain,
    render_form,
    run_statement,
    run_text,
    split_statements,
)

SAMPLE = """
# a small session
let A = P1(z);
let a = chain(A, id, dlog(z/(z-1)), poles[z, z-1]);
boundary a;
dsq a;
"""


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli_main(argv)
    return code, out.getvalue(), err.getvalue()


def test_split_statements_strips_comments():
    stmts = split_statements(SAMPLE)
    assert [s for s, _ in stmts][:2] == [
        "let A = P1(z)",
        "let a = chain(A, id, dlog(z/(z-1)), poles[z, z-1])",
    ]


def test_unterminated_statement_rejected():
    with pytest.raises(ParseError):
        split_statements("let A = P1(z)")


def test_report_schema():
    s = Session()
    reports = run_text(s, SAMPLE)
    for rep in reports:
        assert rep["schema"] == 1
        assert set(rep) == {
            "schema", "command", "status", "result", "details", "provenance"
        }
    assert reports[2]["status"] == "ok"
    assert "TAU" in reports[2]["result"]


def test_redefinition_rejected():
    s = Session()
    run_statement(s, "let A = P1(z)")
    with pytest.raises(SessionError):
        run_statement(s, "let A = P1(w)")


def test_unknown_binding_rejected():
    s = Session()
    with pytest.raises(SessionError):
        run_statement(s, "boundary nope")


def test_power_caret_is_not_wedge():
    s = Session()
    run_statement(s, "let A = P1(z1) x P1(z2)")
    with pytest.raises(ParseError):
        run_statement(
            s, "let a = chain(A, id, d(z1)^d(z2), poles[z1])"
        )


def test_witness_command_round_trips():
    s = Session()
    run_statement(s, "let W = P1(z)")
    rep = run_statement(s, "witness-p1 [(0, 1), (1, -1)]")
    assert rep["status"] == "ok"
    chain = parse_chain_expr(TokenStream(tokenize(rep["result"])), s)
    assert render_chain(chain, s) == rep["result"]


def test_witness_refusal_surfaces_as_error():
    s = Session()
    from polarcalc.chains import ChainError

    with pytest.raises(ChainError):
        run_statement(s, "witness-p1 [(0, 1), (1, 1)]")


def test_homotopy_verify_command():
    s = Session()
    run_statement(s, "let A = P1(z)")
    run_statement(s, "let p = chain(A, const(3), 5)")
    rep = run_statement(s, "homotopy-verify p")
    assert rep["status"] == "ok"
    assert "PASS" in rep["result"]


def test_cli_run_ok(tmp_path):
    f = tmp_path / "ok.pc"
    f.write_text(SAMPLE)
    code, out, err = run_cli(["run", str(f)])
    assert code == 0
    assert "[ok]" in out


def test_cli_exit_code_parse_error(tmp_path):
    f = tmp_path / "bad.pc"
    f.write_text("let A = P1(z);\nboundary ;\n")
    code, out, err = run_cli(["run", str(f)])
    assert code == 2


def test_cli_exit_code_compute_error(tmp_path):
    f = tmp_path / "bad.pc"
    f.write_text("let A = P1(z);\n"
                 "let a = chain(A, id, d(z)/z^2, poles[z]);\n")
    code, out, err = run_cli(["run", str(f)])
    assert code == 1


def test_cli_exit_code_verify_failure():
    code, out, err = run_cli(["verify", "--suite", "fixture-fail"])
    assert code == 3


def test_cli_json_report(tmp_path):
    f = tmp_path / "ok.pc"
    f.write_text(SAMPLE)
    j = tmp_path / "report.json"
    code, out, err = run_cli(["--json", str(j), "run", str(f)])
    assert code == 0
    reports = json.loads(j.read_text())
    assert all(r["schema"] == 1 for r in reports)


def test_cli_replay_is_byte_deterministic(tmp_path):
    f = tmp_path / "ok.pc"
    f.write_text(SAMPLE)
    blobs = []
    for name in ("a.json", "b.json"):
        j = tmp_path / name
        code, _, _ = run_cli(["--json", str(j), "--seed", "7", "run", str(f)])
        assert code == 0
        blobs.append(j.read_bytes())
    assert blobs[0] == blobs[1]


def test_cli_verify_unknown_suite():
    code, out, err = run_cli(["verify", "--suite", "no-such-suite"])
    assert code == 1


def test_cli_verify_list():
    code, out, err = run_cli(["verify", "--suite", "list"])
    assert code == 0
    assert "dsq-random" in out


def test_render_form_round_trip():
    from polarcalc.parsing import parse_form

    coords = ("x", "y")
    form = parse_form("(x + 1) * d(x) wedge d(y) / (x*y - 2)", coords)
    text = render_form(form)
    assert parse_form(text, coords, form.chart) == form
