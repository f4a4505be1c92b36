"""Tests for the instance format, result records and the command line."""

import json

import pytest

import cli
from p6kit.core.oracle import mwis_bruteforce
from p6kit.core.solution import Solution
from p6kit.errors import ClaimViolation, DuplicateEdge, IdOutOfRange, ParseError, SelfLoop
from p6kit.graph.bitset import mask_of
from p6kit.graph.core import WeightedGraph, cycle_graph, path_graph
from p6kit.instance_io import (
    ResultRecord,
    format_instance,
    parse_instance,
    read_instance,
    write_instance,
)

P4_TEXT = """c weighted path
p pfree 4 3
v 1 5
v 4 5
e 1 2
e 3 2
e 3 4
"""


def test_parse_example():
    Gw = parse_instance(P4_TEXT)
    assert Gw.weights == (5, 1, 1, 5)
    assert Gw.graph.edges() == [(0, 1), (1, 2), (2, 3)]


def test_canonical_format():
    text = format_instance(parse_instance(P4_TEXT), comment="canonical")
    assert text.splitlines() == [
        "c canonical",
        "p pfree 4 3",
        "v 1 5", "v 2 1", "v 3 1", "v 4 5",
        "e 1 2", "e 2 3", "e 3 4",
    ]
    assert format_instance(parse_instance(text)) == format_instance(parse_instance(P4_TEXT))


@pytest.mark.parametrize(
    "text, error, line",
    [
        ("p pfree 2 1\ne 1 1\n", SelfLoop, 2),
        ("p pfree 3 2\ne 1 2\ne 2 1\n", DuplicateEdge, 3),
        ("p pfree 2 1\ne 1 3\n", IdOutOfRange, 2),
        ("p pfree 2 0\nv 0 4\n", IdOutOfRange, 2),
        ("e 1 2\n", ParseError, 1),
        ("p pfree 2 0\np pfree 2 0\n", ParseError, 2),
        ("p pfree 2 0\nv 1 a\n", ParseError, 2),
        ("p pfree 2 0\nv 1 3\nv 1 4\n", ParseError, 3),
        ("p pfree 2 0\nx 1 2\n", ParseError, 2),
        ("p graph 2 0\n", ParseError, 1),
    ],
)
def test_parse_errors(text, error, line):
    with pytest.raises(error) as excinfo:
        parse_instance(text)
    assert excinfo.value.line == line
    assert excinfo.value.exit_code == 2


def test_header_edge_count_must_match():
    with pytest.raises(ParseError, match="declares 2 edges"):
        parse_instance("p pfree 3 2\ne 1 2\n")
    with pytest.raises(ParseError, match="missing problem line"):
        parse_instance("c nothing here\n")


def test_result_record():
    Gw = WeightedGraph(path_graph(4), (5, 1, 1, 5))
    record = ResultRecord.from_solution("eds", Gw, Solution(10, mask_of([0, 3])), {"nodes": 3})
    assert record.solution == [1, 4] and record.status == "optimal"
    line = record.to_json()
    assert "\n" not in line
    assert json.loads(line) == {
        "problem": "eds", "status": "optimal", "weight": 10,
        "solution": [1, 4], "stats": {"nodes": 3},
    }
    assert "weight: 10" in record.to_text()
    assert ResultRecord.from_solution("eds", Gw, None).to_dict()["status"] == "no-solution"


def test_result_record_fails_closed():
    Gw = WeightedGraph(path_graph(4))
    with pytest.raises(ClaimViolation):
        ResultRecord.from_solution("mwis", Gw, Solution(2, mask_of([0, 1])))


@pytest.fixture
def instance(tmp_path):
    def write(Gw, name="g.txt"):
        path = tmp_path / name
        write_instance(path, Gw)
        return str(path)
    return write


def test_cli_gen_then_solve(tmp_path, capsys):
    path = str(tmp_path / "gen.txt")
    assert cli.main(["gen", "--n", "12", "--seed", "3", "--weights", "1", "9", "-o", path]) == 0
    capsys.readouterr()
    assert cli.main(["solve-mwis", path, "--json"]) == 0
    result = json.loads(capsys.readouterr().out.strip())
    assert result["status"] == "optimal"
    assert result["weight"] == mwis_bruteforce(read_instance(path)).weight


def test_cli_eds_without_solution(instance, capsys):
    assert cli.main(["solve-eds", instance(WeightedGraph(cycle_graph(4))), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "no-solution"


def test_cli_check(instance, capsys):
    path = instance(WeightedGraph(path_graph(7)))
    assert cli.main(["check", path]) == 1
    assert "induced P6" in capsys.readouterr().out
    assert cli.main(["check", path, "--forbid", "8"]) == 0
    assert cli.main(["check", path, "--pattern", "E"]) == 0


def test_cli_exit_codes(instance, tmp_path, capsys):
    broken = tmp_path / "broken.txt"
    broken.write_text("p pfree 2 1\ne 1 1\n")
    assert cli.main(["solve-mwis", str(broken)]) == 2
    assert cli.main(["solve-mwis", instance(WeightedGraph(path_graph(5))), "--budget", "1"]) == 3
    assert cli.main(["solve-eds", instance(WeightedGraph(path_graph(6)), "p6.txt")]) == 4
    assert cli.main(["solve-eds", str(tmp_path / "p6.txt"), "--mode", "fallback"]) == 0
    assert "error:" in capsys.readouterr().err


def test_cli_triangulate_and_oracle(instance, capsys):
    assert cli.main(["triangulate", instance(WeightedGraph(cycle_graph(5))), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert len(report["fill"]) == 2 and len(report["bags"]) == 3
    assert cli.main(["oracle", "seps", instance(WeightedGraph(path_graph(4)), "p4.txt")]) == 0
    assert capsys.readouterr().out.split() == ["2", "3"]


def test_cli_verify_counterexamples(capsys):
    assert cli.main(["verify", "--theorem", "counterexamples", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert {c["claim"] for c in report["claims"]} >= {"nuke", "p7-free", "e-free"}


def test_cli_verify_nukes_on_clique_stars(capsys):
    argv = ["verify", "--theorem", "hit-nuke", "--family", "clique-star", "--n", "20",
            "--instances", "2", "--json"]
    assert cli.main(argv) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["targets_checked"] > 0 and summary["violations"] == 0


def test_cli_verify_structure_laws(capsys):
    assert cli.main(["verify", "--theorem", "structure", "--n", "6", "--instances", "3"]) == 0
    assert "structure: 3 instances" in capsys.readouterr().out
    assert cli.main(["verify", "--theorem", "coverage", "--n", "7", "--instances", "3", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["violations"] == 0


def test_cli_verify_without_targets_fails(capsys):
    argv = ["verify", "--theorem", "hit-nuke", "--n", "6", "--instances", "1"]
    assert cli.main(argv) == 1


def test_cli_config_and_metrics(instance, tmp_path, capsys):
    config = tmp_path / "p6kit.yaml"
    config.write_text("mwis:\n  degree_factor: 1/2\n")
    path = instance(WeightedGraph(path_graph(20)))
    assert cli.main(["--config", str(config), "--metrics", "solve-mwis", path]) == 0
    out = capsys.readouterr().out
    assert "weight: 10" in out
    assert "p6kit_solves_total" in out
    config.write_text("solver:\n  beta: 1\n")
    assert cli.main(["--config", str(config), "solve-mwis", path]) == 1
