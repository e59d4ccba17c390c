"""Command-line interface: formats, exit codes, report determinism."""

import json

import pytest

from hompoly import Graph
from hompoly.cli import main


@pytest.fixture()
def graph_files(tmp_path):
    paths = {}
    for name, g in (("k2", Graph.single_edge()),
                    ("k3", Graph.complete(3)),
                    ("loop", Graph.looped_vertex()),
                    ("empty", Graph.empty(2))):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(g.to_json_obj()))
        paths[name] = str(p)
    return paths


def test_classify_command(graph_files, capsys):
    assert main(["classify", graph_files["k2"], "cycle"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["class"] == "VNPComplete"
    assert main(["classify", graph_files["k3"], "clique"]) == 0
    assert json.loads(capsys.readouterr().out)["class"] == "VAC0"
    assert main(["classify", graph_files["empty"], "tree"]) == 0
    assert json.loads(capsys.readouterr().out)["class"] == "ZeroPolynomial"
    assert main(["classify", graph_files["loop"], "planar"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["class"] == "VNPComplete" and "caveat" in out


def test_poly_command_counts(graph_files, capsys):
    assert main(["poly", graph_files["k2"], "cycle", "--n", "4"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 3
    assert main(["poly", graph_files["loop"], "cycle", "--n", "4"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 7
    assert main(["poly", graph_files["k3"], "clique", "--n", "3"]) == 0
    assert len(json.loads(capsys.readouterr().out)) == 4


def test_poly_edge_vertex_model(graph_files, capsys):
    assert main(["poly", graph_files["k2"], "tree", "--n", "2",
                 "--model", "edge-vertex"]) == 0
    terms = json.loads(capsys.readouterr().out)
    assert terms == [{"coeff": "1",
                      "vars": [["e:0:1", 1], ["v:0", 1], ["v:1", 1]]}]


def test_bad_input_exits_2(graph_files, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["classify", str(bad), "cycle"]) == 2
    assert main(["classify", graph_files["k2"], "nonsense"]) == 2
    assert main(["poly", str(tmp_path / "missing.json"), "cycle", "--n", "4"]) == 2
    capsys.readouterr()


def test_unknown_lemma_rejected(capsys):
    assert main(["verify", "--lemma", "no-such-lemma"]) == 2
    capsys.readouterr()


def test_genus_command(tmp_path, capsys):
    p = tmp_path / "k5.json"
    p.write_text(json.dumps(Graph.complete(5).to_json_obj()))
    assert main(["genus", str(p)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["genus"] == 1 and not out["planar"]


def test_verify_report_roundtrip_and_determinism(tmp_path, capsys):
    args = ["verify", "--lemma", "cycles-even", "--lemma", "planar-permutation",
            "--n", "4", "--m", "4"]
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    out3 = tmp_path / "r3.json"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert main(args + ["--out", str(out3), "--parallelism", "2"]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes() == out3.read_bytes()
    data = json.loads(out1.read_text())
    assert data["all_equal"] is True
    assert [r["lemma"] for r in data["reports"]] \
        == sorted(r["lemma"] for r in data["reports"])
    assert main(["report", str(out1)]) == 0
    capsys.readouterr()


def test_verify_exit_one_on_mismatch(tmp_path, capsys, monkeypatch):
    import hompoly.cli as cli
    from hompoly.poly import Polynomial
    from hompoly.reductions import ReductionReport

    def fake(lemma, args):
        return ReductionReport(lemma, {}, Polynomial.zero(),
                               Polynomial.constant(1), False)

    monkeypatch.setattr(cli, "_run_lemma", fake)
    assert main(["verify", "--lemma", "cycles-even"]) == 1
    capsys.readouterr()
