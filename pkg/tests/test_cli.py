import json

import pytest

from polyred.cli import main
from polyred.generators import cube
from polyred.lrsio import emit, parse

EXAMPLE = "example\nH-representation\nlinearity 1 1\nbegin\n3 3 rational\n3 1 -2\n0 1 0\n-6 -1 4\nend\n"
SQUARE = "square\nbegin\n4 3 rational\n0 1 0\n1 -1 0\n0 0 1\n1 0 -1\nend\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_minrep_default_verb(write, capsys):
    assert main([write("ex.ine", EXAMPLE), "--threads", "2"]) == 0
    out = capsys.readouterr().out
    P = parse(out)
    assert P.rows == ((3, 1, -2), (0, 1, 0)) and P.linearity == {0}


def test_minrep_on_cube(write, capsys):
    assert main(["minrep", write("cube.ine", emit(cube(3))), "--threads", "8"]) == 0
    assert parse(capsys.readouterr().out).m == 6


def test_stats_and_verify_go_to_stderr(write, capsys):
    assert main(["minrep", write("ex.ine", EXAMPLE), "--stats", "--verify"]) == 0
    captured = capsys.readouterr()
    stats = json.loads(captured.err.strip().splitlines()[-1])
    assert stats["final_linearity"] == [1] and stats["verify_failures"] == []
    assert stats["lps"] >= 1
    parse(captured.out)


def test_fel_square(write, capsys):
    assert main(["fel", write("sq.ine", SQUARE), "--eliminate", "2", "--stats"]) == 0
    captured = capsys.readouterr()
    assert parse(captured.out).rows == ((0, 1), (1, -1))
    rounds = json.loads(captured.err)["rounds"]
    assert rounds[0]["column"] == 2 and rounds[0]["raw_inequalities"] == 3


def test_fel_from_file_options(write, capsys):
    assert main([write("sq.ine", SQUARE + "project 1 2\n")]) == 0
    assert parse(capsys.readouterr().out).rows == ((0, 1), (1, -1))


def test_fel_and_goldensquare_agree(write, capsys):
    path = write("cube.ine", emit(cube(3)))
    assert main(["fel", path, "--project", "1", "3", "--fm-order", "heuristic"]) == 0
    a = capsys.readouterr().out
    assert main(["goldensquare", path, "--project", "1", "3"]) == 0
    b = capsys.readouterr().out
    assert sorted(parse(a).rows) == sorted(parse(b).rows)


def test_redund_clarkson_matches_classic(write, capsys):
    text = SQUARE.replace("4 3", "6 3") .replace("1 0 -1\nend", "1 0 -1\n1 1 1\n3 -1 -1\nend")
    path = write("r.ine", text)
    assert main(["redund", path]) == 0
    a = parse(capsys.readouterr().out)
    assert main(["redund", path, "--clarkson", "--stats"]) == 0
    captured = capsys.readouterr()
    b = parse(captured.out)
    assert a.rows == b.rows and b.m == 4
    assert json.loads(captured.err)["max_lp_size"] <= b.m + 1


def test_oracle_verb(write, capsys):
    assert main(["oracle", write("sq.ine", SQUARE)]) == 0
    V = parse(capsys.readouterr().out)
    assert V.kind == "V" and V.m == 4
    assert main(["oracle", write("sq.ext", emit(V))]) == 0
    assert parse(capsys.readouterr().out).m == 4


def test_exit_usage(write, capsys):
    assert main([]) == 1
    assert main(["minrep", "/nonexistent/file.ine"]) == 1
    assert main(["fel", write("sq.ine", SQUARE)]) == 1
    assert main(["fel", write("sq2.ine", SQUARE), "--eliminate", "5"]) == 1
    assert main(["minrep", write("sq3.ine", SQUARE), "--threads", "0"]) == 1


def test_exit_parse_error(write, capsys):
    assert main([write("bad.ine", "begin\n1 2 rational\n0 1/0\nend\n")]) == 2
    assert "line 3" in capsys.readouterr().err


def test_exit_infeasible(write, capsys):
    assert main([write("empty.ine", "begin\n2 2 rational\n-1 1\n0 -1\nend\n")]) == 3
    out = capsys.readouterr().out
    assert "no feasible point" in out and "certificate" in out
    assert main(["fel", write("empty2.ine", "begin\n2 3 rational\n-1 1 0\n0 -1 0\nend\n"),
                 "--eliminate", "2"]) == 3


def test_exit_guard_rail(write, capsys):
    assert main(["oracle", write("c7.ine", emit(cube(7)))]) == 4


def test_output_file(write, tmp_path, capsys):
    dest = tmp_path / "out.ine"
    assert main([write("ex.ine", EXAMPLE), "-o", str(dest)]) == 0
    assert parse(dest.read_text()).m == 2


def test_unknown_option_warns(write, capsys):
    assert main([write("sq.ine", SQUARE + "printcobasis\n")]) == 0
    assert "printcobasis" in capsys.readouterr().err
