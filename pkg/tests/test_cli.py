import io

import pytest

from simpdb import cli
from simpdb.checker.judge import CheckReport, Verdict
from simpdb.complex import simplex
from simpdb.instance import initial
from simpdb.render import render_ascii, render_tsv, use_color

from .conftest import DATA


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_check_exit_codes(tmp_path, capsys):
    assert run(["check", str(DATA / "si.sdb")], capsys)[0] == 0
    assert run(["check", str(DATA / "bad_premise.sdb")], capsys)[0] == 1
    bad = tmp_path / "bad.sdb"
    bad.write_text("schema S over D 1 {\n  gen A d0\n}\n")
    code, _, err = run(["check", str(bad)], capsys)
    assert code == 2 and "2:" in err


def test_internal_breach_exits_3(monkeypatch, capsys):
    report = CheckReport([Verdict("query q", "query", "internal-error", "InternalBreach: x")])
    monkeypatch.setattr(cli, "check_source", lambda text: report)
    assert run(["check", str(DATA / "si.sdb")], capsys)[0] == 3


def test_show_tsv_goldens(capsys):
    for name, golden in [("join", "join.tsv"), ("I", "I.tsv")]:
        code, out, _ = run(["show", str(DATA / "si.sdb"), name, "--format", "tsv"], capsys)
        assert code == 0
        assert out == (DATA / golden).read_text(encoding="utf-8")


def test_show_compact_matches_hand_tables(capsys):
    _, out, _ = run(["show", str(DATA / "j.sdb"), "J", "--format", "tsv", "--compact"], capsys)
    blocks = [b.splitlines() for b in out.strip().split("\n\n")]
    assert blocks[0] == ["0\t1\t2", "a\tb\tc"]
    assert blocks[2] == ["0\t2", "a\tc", "a'\tc"]
    assert [b[0] for b in blocks] == ["0\t1\t2", "0\t1", "0\t2", "1\t2", "0", "1", "2"]


def test_show_unbound_and_other_kinds(capsys):
    code, _, err = run(["show", str(DATA / "si.sdb"), "nope"], capsys)
    assert code == 1 and "UnboundName" in err
    code, out, _ = run(["show", str(DATA / "si.sdb"), "t1", "--compact"], capsys)
    assert code == 0 and out == "⟨a',b,c⟩\n"


def test_empty_tables_are_printed():
    J = initial(simplex(1))
    assert render_tsv(J) == "0\t1\n\n0\n\n1\n"
    text = render_ascii(J)
    assert "face 01 (0 rows)" in text and "face 0 (0 rows)" in text


def test_tuples(capsys):
    code, out, _ = run(["tuples", str(DATA / "si.sdb"), "I", "--compact"], capsys)
    assert code == 0 and out == "⟨a,b,c⟩\n⟨a',b,c⟩\n2 full tuples\n"
    code, out, _ = run(["tuples", str(DATA / "j.sdb"), "J"], capsys)
    assert out.splitlines()[-1] == "1 full tuple"
    code, _, err = run(["tuples", str(DATA / "si.sdb"), "t0"], capsys)
    assert code == 1 and "UnboundName" in err


def test_laws_command(capsys):
    code, out, _ = run(["laws", "--cases", "0"], capsys)
    assert code == 0 and "no cases requested" in out
    code, out, _ = run(["laws", "--cases", "30", "--law", "sigma-comp", "--law", "pi-eta"], capsys)
    assert code == 0 and out.splitlines()[-1] == "summary: 2 laws, 0 failing"
    code, _, err = run(["laws", "--law", "nope"], capsys)
    assert code == 1 and "known laws" in err


def test_mutant_makes_laws_fail(capsys):
    code, out, _ = run(["laws", "--cases", "50", "--law", "pi-bijection", "--mutant", "pi-no-compat"], capsys)
    assert code == 1 and "FAIL" in out


def test_color(monkeypatch):
    class Tty(io.StringIO):
        def isatty(self):
            return True

    monkeypatch.delenv("SDB_COLOR", raising=False)
    assert use_color(Tty()) and not use_color(io.StringIO())
    monkeypatch.setenv("SDB_COLOR", "0")
    assert not use_color(Tty())


@pytest.mark.parametrize("argv", [["show", str(DATA / "si.sdb"), "join"], ["laws", "--cases", "15"]])
def test_output_is_deterministic(argv, capsys):
    assert run(argv, capsys) == run(argv, capsys)
