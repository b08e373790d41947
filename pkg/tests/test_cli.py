import io
import json

import pytest

from twoeig.cli import EXIT_BUDGET, EXIT_CONTRADICTION, EXIT_OK, EXIT_PARSE, main
from twoeig.graphs.graph import complete_graph, cycle_graph, double_candle, path_graph
from twoeig.graphs.graph6 import graph6_decode, graph6_encode
from twoeig.graphs.named_graphs import named_graph

C4 = graph6_encode(cycle_graph(4))
P4 = graph6_encode(path_graph(4))


def _lines(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines()]


def test_generate(capsys):
    assert main(["generate", "double", "3"]) == EXIT_OK
    assert capsys.readouterr().out == graph6_encode(double_candle(3)) + "\n"

    assert main(["generate", "named", "Q3"]) == EXIT_OK
    assert graph6_decode(capsys.readouterr().out.strip()).adj == named_graph("Q3").adj

    assert main(["generate", "augmented-double", "3"]) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 4


@pytest.mark.parametrize("argv", [["generate", "bogus", "3"], ["generate", "named", "nothing"]])
def test_generate_rejects_unknown(argv):
    assert main(argv) == EXIT_PARSE


def test_bound(capsys):
    assert main(["bound", C4, P4]) == EXIT_OK
    c4, p4 = _lines(capsys)
    assert c4["status"] == "Possible" and c4["extremal_tag"] == "double-candle(2)"
    assert p4["status"] == "Excluded"
    assert "unique-path" in [r["rule"] for r in p4["reports"]]


def test_bound_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(f"{C4}\n\n{P4}\n"))
    assert main(["bound"]) == EXIT_OK
    assert [line["graph6"] for line in _lines(capsys)] == [C4, P4]


def test_bad_graph6():
    assert main(["bound", "C!"]) == EXIT_PARSE
    assert main(["bound", "A?"]) == EXIT_PARSE


def test_certify_closed_form(capsys):
    assert main(["certify", C4]) == EXIT_OK
    (line,) = _lines(capsys)
    assert line["certificate"]["source"] == "closed-form"


def test_search_flags(capsys):
    k4 = graph6_encode(complete_graph(4))
    assert main(["search", k4, "--restarts", "5", "--max-iter", "1500", "--seed", "0", "--no-polish"]) == EXIT_OK
    (line,) = _lines(capsys)
    assert line["certificate"]["source"] == "search"
    assert main(["search", k4, "--restarts", "0"]) == EXIT_PARSE


def test_comborth(capsys):
    assert main(["comborth", C4, "A_"]) == EXIT_OK
    c4, k2 = _lines(capsys)
    assert c4["pattern_allows_comb_orth"] and c4["quadrangular"] and c4["p2_4"]
    assert k2["p2_4"] is None and k2["p2_leq4"] is None


def test_condense(capsys):
    g4 = graph6_encode(double_candle(4))
    assert main(["condense", g4, "--target", C4]) == EXIT_OK
    (line,) = _lines(capsys)
    assert len(line["trace"]["steps"]) == 4

    g6 = graph6_encode(double_candle(6))
    assert main(["condense", g6, "--target", C4, "--max-steps", "1"]) == EXIT_BUDGET


def test_census_and_replay(capsys, tmp_path):
    out = tmp_path / "census4.json"
    assert main(["census", "4", "--quiet", "--out", str(out), "--census-restarts", "3",
                 "--escalation-restarts", "6", "--max-iter", "1500"]) == EXIT_OK
    captured = capsys.readouterr()
    assert "census n=4: 6 connected graphs" in captured.err
    assert "double-candle(2)" in captured.err
    assert len(json.loads(out.read_text())["records"]) == 6

    assert main(["replay", str(out)]) == EXIT_OK
    assert _lines(capsys) == [{"records": 6, "failed": []}]


def test_census_json_lines_and_tampered_replay(capsys, tmp_path):
    assert main(["census", "3", "--quiet"]) == EXIT_OK
    records = _lines(capsys)
    assert [r["verdict"] for r in records] == ["Excluded", "Certified"]

    records[0]["verdict"] = "Certified"
    path = tmp_path / "tampered.jsonl"
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n")
    assert main(["replay", str(path)]) == EXIT_CONTRADICTION
    assert _lines(capsys)[0]["failed"] == [records[0]["graph6"]]


def test_census_rejects_large_n():
    assert main(["census", "9", "--quiet"]) == EXIT_PARSE
