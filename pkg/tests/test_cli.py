import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubicdecomp.cli import EXIT_BUDGET, EXIT_NO, EXIT_USAGE, EXIT_YES, run
from cubicdecomp.errors import FormatError
from cubicdecomp.fileio import (
    format_cnf,
    format_decomposition,
    format_graph,
    format_marks,
    parse_cnf,
    parse_decomposition,
    parse_graph,
    parse_marks,
)
from cubicdecomp.graph import NAMED_GRAPHS, named_graph, random_cubic
from cubicdecomp.model import Part
from cubicdecomp.reductions import CnfFormula
from test_graph import small_graphs

TRI_CNF = "c three copies of one clause\np cnf 3 3\n1 2 3 0\n1 2 3 0\n1 2 3 0\n"


class TestFormats:
    @given(small_graphs(10))
    def test_graph_round_trip(self, g):
        assert parse_graph(format_graph(g)) == g

    @pytest.mark.parametrize("name", NAMED_GRAPHS)
    def test_named_round_trip(self, name):
        g = named_graph(name)
        assert parse_graph(format_graph(g)) == g

    def test_one_based_with_comments(self):
        text = "# a path\np edge 3 2\n\ne 1 2\ne 3 2\n"
        g = parse_graph(text)
        assert g.edges == ((0, 1), (1, 2))

    @pytest.mark.parametrize(
        "text",
        ["e 1 2\n", "p edge 2 2\ne 1 2\n", "p edge 2 1\ne 1 1\n", "p edge 2 1\ne 1 x\n", "p edge 2 1\nq 1 2\n", ""],
    )
    def test_graph_errors(self, text):
        with pytest.raises(FormatError):
            parse_graph(text)

    def test_marks(self):
        g = named_graph("k4")
        marks = parse_marks("m 2 1\n# c\nm 3 4\n", g)
        assert marks == {(0, 1), (2, 3)}
        assert parse_marks(format_marks(marks), g) == marks
        with pytest.raises(FormatError):
            parse_marks("m 1 1\n", g)
        with pytest.raises(FormatError):
            parse_marks("m 1 9\n", g)

    def test_decomposition(self):
        d = [Part.triangle(1, 2, 3), Part.claw(0, 1, 2, 3), Part.path(4, 5, 6, 7)]
        assert parse_decomposition(format_decomposition(d)) == d
        assert parse_decomposition("K13 1 2 3 4\n") == [Part.claw(0, 1, 2, 3)]
        for bad in ("K5 1 2 3\n", "K3 1 2\n", "P4 1 2 2 3\n"):
            with pytest.raises(FormatError):
                parse_decomposition(bad)

    def test_cnf(self):
        phi = parse_cnf(TRI_CNF)
        assert phi == CnfFormula(3, ((0, 1, 2),) * 3)
        assert parse_cnf(format_cnf(phi)) == phi
        assert parse_cnf("p cnf 3 1\n1 2\n3 0\n") == CnfFormula(3, ((0, 1, 2),))

    @pytest.mark.parametrize(
        "text",
        ["p cnf 3 1\n1 -2 3 0\n", "p cnf 3 1\n1 2 0\n", "p cnf 3 2\n1 2 3 0\n", "p cnf 3 1\n1 2 3\n", "p cnf 2 1\n1 2 3 0\n", "1 2 3 0\n"],
    )
    def test_cnf_errors(self, text):
        with pytest.raises(FormatError):
            parse_cnf(text)


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def gen(name: str, path: str) -> None:
    assert run(["gen", "--name", name, "--out", path]) == EXIT_YES


class TestCommands:
    def test_prism_claw_triangle_no(self, workdir, capsys):
        gen("prism", "prism.edg")
        assert run(["decide", "--family", "k13k3", "--input", "prism.edg"]) == EXIT_NO
        assert capsys.readouterr().out.strip() == "NO"

    def test_prism_paths_yes_and_verify(self, workdir, capsys):
        gen("prism", "prism.edg")
        assert run(["decide", "--family", "p4", "--input", "prism.edg", "--out", "cert.txt"]) == EXIT_YES
        assert capsys.readouterr().out.startswith("YES")
        assert len(parse_decomposition((workdir / "cert.txt").read_text())) == 3
        assert run(["verify", "--input", "prism.edg", "--decomposition", "cert.txt", "--family", "p4"]) == EXIT_YES

    def test_verify_invalid(self, workdir, capsys):
        gen("k4", "k4.edg")
        (workdir / "bad.txt").write_text("K13 1 2 3 4\n")
        assert run(["verify", "--input", "k4.edg", "--decomposition", "bad.txt"]) == EXIT_NO
        assert "uncovered" in capsys.readouterr().out

    def test_reduce_marked(self, workdir, capsys):
        (workdir / "tri.cnf").write_text(TRI_CNF)
        assert run(["reduce", "--from", "1in3", "--cnf", "tri.cnf", "--stage", "marked", "--out", "tri"]) == EXIT_YES
        assert capsys.readouterr().out.strip() == "vertices 18 edges 24 marks 9"
        g = parse_graph((workdir / "tri.edg").read_text())
        assert (g.n, g.m) == (18, 24)
        assert len(parse_marks((workdir / "tri.marks").read_text(), g)) == 9
        assert (workdir / "tri.map.json").exists()
        # the marked instance is a yes-instance and its certificate re-verifies
        assert run(["decide", "--family", "k13p4", "--input", "tri.edg", "--marks", "tri.marks", "--out", "w.txt"]) == EXIT_YES
        assert run(["verify", "--input", "tri.edg", "--marks", "tri.marks", "--decomposition", "w.txt", "--family", "k13p4"]) == EXIT_YES

    def test_reduce_trivially_no(self, workdir, capsys):
        (workdir / "four.cnf").write_text("p cnf 4 4\n1 2 3 0\n1 2 4 0\n1 3 4 0\n2 3 4 0\n")
        assert run(["reduce", "--from", "1in3", "--cnf", "four.cnf", "--stage", "final", "--out", "x"]) == EXIT_NO
        assert "TRIVIALLY-NO" in capsys.readouterr().out

    def test_budget_unknown(self, workdir, capsys):
        (workdir / "g.edg").write_text(format_graph(random_cubic(30, 1)))
        assert run(["decide", "--family", "all", "--input", "g.edg", "--budget", "5"]) == EXIT_BUDGET
        assert capsys.readouterr().out.startswith("UNKNOWN")

    def test_sat(self, workdir, capsys):
        (workdir / "tri.cnf").write_text(TRI_CNF)
        assert run(["sat", "--mode", "nae", "--cnf", "tri.cnf"]) == EXIT_YES
        assert capsys.readouterr().out.split("\n")[:2] == ["SAT", "v -1 -2 3 0"]
        (workdir / "four.cnf").write_text("p cnf 4 4\n1 2 3 0\n1 2 4 0\n1 3 4 0\n2 3 4 0\n")
        assert run(["sat", "--mode", "1in3", "--cnf", "four.cnf"]) == EXIT_NO

    def test_io_errors(self, workdir, capsys):
        assert run(["decide", "--family", "k13", "--input", "missing.edg"]) == EXIT_USAGE
        (workdir / "bad.edg").write_text("p edge 2 1\ne 1 7\n")
        assert run(["decide", "--family", "k13", "--input", "bad.edg"]) == EXIT_USAGE
        assert "error" in capsys.readouterr().err

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            run(["decide", "--family", "k99", "--input", "x"])
        assert info.value.code == EXIT_USAGE

    def test_gen_round_trip_and_determinism(self, workdir, capsys):
        assert run(["gen", "--random", "12", "7"]) == EXIT_YES
        first = capsys.readouterr().out
        assert run(["gen", "--random", "12", "7"]) == EXIT_YES
        assert capsys.readouterr().out == first
        assert parse_graph(first) == random_cubic(12, 7)

    def test_threads_do_not_change_output(self, workdir, capsys, monkeypatch):
        (workdir / "g.edg").write_text(format_graph(random_cubic(14, 3)))
        outs = []
        for threads in ("1", "3"):
            monkeypatch.setenv("DECOMP_THREADS", threads)
            run(["decide", "--family", "k13p4", "--input", "g.edg"])
            outs.append(capsys.readouterr().out)
        assert outs[0] == outs[1]

    def test_non_cubic_input_uses_exact_solver(self, workdir, capsys):
        gen("diamond", "d.edg")
        assert run(["decide", "--family", "k13k3", "--input", "d.edg"]) == EXIT_NO


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "cubicdecomp.cli", "gen", "--name", "k4"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.startswith("p edge 4 6")
