import json
import subprocess
import sys

import pytest

from cayley_census import cli
from cayley_census.graphs import complete_graph, read_edge_list, write_edge_list


@pytest.fixture(scope="module")
def delta2_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("graphs") / "g2.edges"
    assert cli.main(["build-graph", "--delta", "2", "--out", str(path)]) == 0
    return path


def test_build_graph_header(delta2_file):
    assert delta2_file.read_text().splitlines()[0] == "graph 7920 15840"
    assert read_edge_list(delta2_file).valency() == 4


def test_analyze_k4(tmp_path, capsys):
    path = tmp_path / "k4.edges"
    write_edge_list(complete_graph(4), path)
    assert cli.main(["analyze", "--graph", str(path), "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["aut_order"] == 24 and out["s_transitivity"] == 2
    assert out["valency"] == 3 and out["connected"]


def test_analyze_with_expectations(delta2_file, capsys):
    rc = cli.main(["analyze", "--graph", str(delta2_file), "--expect", "valency=4",
                   "--expect", "connected=true", "--expect", "vertices=7920"])
    assert rc == 0
    assert "aut_order" in capsys.readouterr().out


def test_mutated_edge_gives_exit_1(delta2_file, tmp_path, capsys):
    lines = delta2_file.read_text().splitlines()
    u, v = map(int, lines[1].split())
    w = next(x for x in range(7920) if x not in (u, v) and f"{min(u, x)} {max(u, x)}" not in lines)
    lines[1] = f"{min(u, w)} {max(u, w)}"
    bad = tmp_path / "mutated.edges"
    bad.write_text("\n".join(lines) + "\n")
    rc = cli.main(["analyze", "--graph", str(bad), "--expect", "valency=4", "--expect", "s_transitivity=3"])
    assert rc == 1
    assert "MISMATCH" in capsys.readouterr().err


def test_group_option(tmp_path, capsys):
    g = tmp_path / "k4.edges"
    write_edge_list(complete_graph(4), g)
    gens = tmp_path / "a4.gens"
    gens.write_text("degree 4\norder 12\n2 3 1 4\n2 1 4 3\n")
    assert cli.main(["analyze", "--graph", str(g), "--group", str(gens), "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    # A4 is regular on the 12 arcs of K4, too small for the 24 two-arcs
    assert out["group_order"] == 12 and out["group_s_transitivity"] == 1
    wrong = tmp_path / "c4.gens"
    wrong.write_text("degree 5\norder 5\n2 3 4 5 1\n")
    assert cli.main(["analyze", "--graph", str(g), "--group", str(wrong)]) == 2


def test_group_not_acting_by_automorphisms(tmp_path):
    g = tmp_path / "p4.edges"
    g.write_text("graph 4 3\n0 1\n1 2\n2 3\n")
    gens = tmp_path / "s.gens"
    gens.write_text("degree 4\norder 2\n2 1 3 4\n")
    assert cli.main(["analyze", "--graph", str(g), "--group", str(gens)]) == 1


@pytest.mark.parametrize("text,line", [("graph 3 1\n0 x\n", 2), ("graph 2\n", 1), ("graph 4 1\n0 9\n", 2)])
def test_malformed_graph_exit_2(tmp_path, capsys, text, line):
    path = tmp_path / "bad.edges"
    path.write_text(text)
    assert cli.main(["analyze", "--graph", str(path)]) == 2
    assert f"bad.edges:{line}:" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["classify"], ["classify", "--case", "nope"],
    ["classify", "--all", "--threads", "0"], ["build-graph", "--delta", "3", "--out", "x"],
    ["analyze", "--graph", "/nonexistent/file"], ["analyze", "--graph", "x", "--expect", "novalue"],
    ["check", "--report", "/nonexistent.json"],
])
def test_usage_errors_exit_2(argv):
    assert cli.main(argv) == 2


def test_unwritable_output_dir(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert cli.main(["classify", "--case", "M24/M23/S4", "--output-dir", str(blocker / "sub")]) == 2


def test_catalog_and_list(capsys):
    assert cli.main(["catalog"]) == 0
    out = capsys.readouterr().out
    assert "M12.2.deg24" in out and "190080" in out
    assert cli.main(["classify", "--list"]) == 0
    assert "M12:2/M11/S4" in capsys.readouterr().out


def test_classify_single_empty_case(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.main(["classify", "--case", "A12/A11/A4", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == 1 and rep["cases"][0]["verdict"] == "empty"


def test_classify_all_and_check(report, tmp_path, capsys):
    """The full run reports the claims it cannot reproduce and exits 1."""
    out = tmp_path / "out"
    rc = cli.main(["classify", "--all", "--output-dir", str(out)])
    text = capsys.readouterr().out
    assert rc == (0 if report["summary"]["all_claims_reproduced"] else 1)
    assert report["summary"]["line"] in text
    from cayley_census.classify import dumps_report
    assert (out / "report.json").read_text() == dumps_report(report)
    assert read_edge_list(out / "Delta1.edges").n == 7920
    assert cli.main(["check", "--report", str(out / "report.json")]) == 0


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cayley_census.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip().startswith("cayley-census")
