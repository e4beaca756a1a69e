import csv
import json
import math
import subprocess
import sys

import pytest

from periodicflex import fixtures
from periodicflex.cli import main
from periodicflex.documents import FlexDocument, parse_flex, serialize_colouring, serialize_flex, serialize_graph
from periodicflex.gaincore import GainGraph


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    return put


def fixture_files(files, name, key="given"):
    f = fixtures.get(name)
    g = files(f"{name}.json", serialize_graph(f.graph))
    c = files(f"{name}-{key}.json", serialize_colouring(f.colourings[key])) if key in f.colourings else None
    return g, c


def lines(capsys):
    return [json.loads(x) for x in capsys.readouterr().out.splitlines() if x.strip()]


def test_analyze_flexible(files, capsys):
    g, _ = fixture_files(files, "prism_flex1")
    assert main(["analyze", g]) == 0
    (rep,) = lines(capsys)
    assert rep["verdict"] == "Flexible" and rep["mode"] == "flex1"
    assert main(["analyze", g, "--mode", "fixed"]) in (0, 1)


def test_analyze_not_flexible(files, capsys):
    G = GainGraph(1, list("abc"), [("ab", "a", "b", (1,)), ("bc", "b", "c", (0,)), ("ca", "c", "a", (0,))])
    assert main(["analyze", files("g.json", serialize_graph(G)), "--mode", "fixed"]) == 1
    assert lines(capsys)[0]["verdict"] == "NotFlexible"


def test_analyze_unknown(files, capsys):
    g, _ = fixture_files(files, "type3_only")
    assert main(["analyze", g]) == 2
    (rep,) = lines(capsys)
    assert rep["verdict"] == "Unknown"
    assert "type3" in rep["classification"]["classes"] and rep["open_problem"]


def test_analyze_disconnected(files, capsys):
    G = GainGraph(1, list("abcd"), [("ab", "a", "b", (0,)), ("cd", "c", "d", (1,))])
    assert main(["analyze", files("g.json", serialize_graph(G))]) == 64
    reps = lines(capsys)
    assert [r["component"] for r in reps] == [["a", "b"], ["c", "d"]]
    assert all(not r["connected"] for r in reps)


def test_analyze_wrong_mode(files):
    g, _ = fixture_files(files, "prism_flex1")
    assert main(["analyze", g, "--mode", "flex2"]) == 64


def test_colourings(files, capsys):
    g, _ = fixture_files(files, "prism_type2")
    assert main(["colourings", g, "--class", "type2", "--limit", "2"]) == 3
    assert len(lines(capsys)) == 2
    assert main(["colourings", g, "--limit", "0"]) == 3
    assert main(["colourings", g, "--limit", "-1"]) == 64
    single = GainGraph(1, ["a", "b"], [("ab", "a", "b", (0,))])
    assert main(["colourings", files("s.json", serialize_graph(single))]) == 1
    t, _ = fixture_files(files, "doubled_prism", "fixed")
    capsys.readouterr()
    assert main(["colourings", t, "--class", "fixed"]) == 0
    assert all("fixed" in r["classification"]["classes"] for r in lines(capsys))


def test_construct_rejects_non_nbac(files):
    g, c = fixture_files(files, "square_red_loop")
    assert main(["construct", g, c]) == 1


def test_construct_type3_is_unknown(files):
    g, c = fixture_files(files, "square_common_line")
    assert main(["construct", g, c]) == 2
    g, _ = fixture_files(files, "type3_only")
    assert main(["construct", g, "--auto"]) == 2


def test_construct_needs_colouring(files):
    g, _ = fixture_files(files, "prism_flex1")
    assert main(["construct", g]) == 64
    assert main(["construct", g, files("bad.json", '{"red": ["12"], "blue": []}')]) == 64


def test_construct_auto_and_extend(files, tmp_path, capsys):
    for name in ("prism_flex1", "prism_type1", "triangle", "doubled_prism"):
        g, _ = fixture_files(files, name)
        out = str(tmp_path / f"{name}.flex.json")
        assert main(["construct", g, "--auto", "-o", out]) == 0
        assert main(["verify", out]) == 0
    g, c = fixture_files(files, "prism_type2")
    out = str(tmp_path / "ext.json")
    assert main(["construct", g, c, "--extend-at", "1", "--extend-gain", "1,0", "-o", out]) == 0
    assert parse_flex(open(out).read()).flex.kind == "HennebergCircle"
    assert main(["verify", out]) == 0
    assert main(["construct", g, c, "--extend-at", "1", "--extend-gain", "1"]) == 64
    assert main(["construct", g, c, "--extend-at", "9", "--extend-gain", "1,0"]) == 64
    assert main(["construct", g, c, "--extend-at", "1"]) == 64


def test_verify_trivial_and_broken(files, tmp_path):
    # an edgeless single vertex is "flexible" only by a rotation, which is trivial
    one = GainGraph(2, ["a"], [])
    g = files("one.json", serialize_graph(one))
    out = str(tmp_path / "one.flex.json")
    assert main(["construct", g, "--auto", "-o", out]) == 1
    assert main(["verify", out]) == 4

    gp, cp = fixture_files(files, "prism_type2")
    good = str(tmp_path / "t2.json")
    assert main(["construct", gp, cp, "-o", good]) == 0
    # perturbed parameter, with the base frame recomputed so only lengths fail
    doc = parse_flex(open(good).read())
    doc.flex.params["grid"]["2"][1] = "1/7"
    bad = FlexDocument(doc.graph, doc.flex, doc.recipe, doc.colouring)
    assert main(["verify", files("bad.json", serialize_flex(bad))]) == 1
    # stored base frame that disagrees with the parameters
    d = json.loads(open(good).read())
    d["base"]["p"]["1"] = ["5", "5"]
    assert main(["verify", files("bad2.json", json.dumps(d))]) == 1


def test_verify_input_errors(files):
    assert main(["verify", files("x.json", "not json")]) == 64
    assert main(["verify", "/nonexistent/flex.json"]) == 64
    g, c = fixture_files(files, "prism_type2")
    assert main(["verify", g]) == 64


def test_sample_csv(files, tmp_path):
    g, c = fixture_files(files, "prism_type2")
    flex = str(tmp_path / "f.json")
    assert main(["construct", g, c, "-o", flex]) == 0
    out = tmp_path / "s.csv"
    assert main(["sample", flex, "--steps", "5", "--t0", "0", "--t1", str(math.pi), "-o", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0][:3] == ["t", "x_1", "y_1"] and rows[0][-4:] == ["L11", "L21", "L12", "L22"]
    assert len(rows) == 6
    assert float(rows[-1][0]) == pytest.approx(math.pi)
    assert main(["sample", flex, "--steps", "1"]) == 64


def test_oracle_command(files, capsys):
    g, _ = fixture_files(files, "prism_flex1")
    assert main(["oracle", g, "--trials", "20", "--bound", "2"]) == 0
    summary = lines(capsys)[-1]
    assert summary["discrepancies"] == 0 and summary["graphs"] == 1
    assert main(["oracle", "--random-graphs", "3", "--vertices", "3", "--max-edges", "4", "--trials", "8"]) == 0
    assert main(["oracle"]) == 64


def test_oracle_edge_limit(files):
    G = GainGraph(1, ["a", "b"], [(f"e{i}", "a", "b", (i,)) for i in range(13)])
    assert main(["oracle", files("big.json", serialize_graph(G))]) == 64


def test_fixture_command(capsys):
    assert main(["fixture", "prism_type2"]) == 0
    assert json.loads(capsys.readouterr().out)["k"] == 2
    assert main(["fixture", "doubled_prism", "--colouring", "flex1"]) == 0
    assert main(["fixture", "doubled_prism", "--colouring", "nope"]) == 64
    assert main(["fixture", "nope"]) == 64


def test_usage_errors():
    assert main([]) == 64
    assert main(["analyze"]) == 64
    assert main(["--help"]) == 0


def test_module_entry_point(tmp_path):
    g = tmp_path / "g.json"
    g.write_text(serialize_graph(fixtures.prism_flex1().graph))
    res = subprocess.run([sys.executable, "-m", "periodicflex", "analyze", str(g)], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["verdict"] == "Flexible"
