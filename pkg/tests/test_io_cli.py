import json
import re

import pytest

from lzero.cli import main
from lzero.graph import FiniteGraph, OddPair, Vertex
from lzero.io import (
    decode_vertex,
    dumps_graph,
    export_dot,
    hom_from_json,
    hom_to_json,
    loads_graph,
    parse_vertex_arg,
)
from lzero.stages import build_oriented_stage, build_stage


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("g", [
    build_stage((1, 1, 3), 2),
    build_oriented_stage(OddPair.all_plus((1, 3)), 1),
    FiniteGraph.from_edges([0, 1, 2], [(0, 1), (2, 1)], orientation=True),
    FiniteGraph.from_edges(["a", "b"], [("a", "b")]),
])
def test_graph_round_trip(g):
    h = loads_graph(dumps_graph(g))
    assert set(h.vertices) == set(g.vertices)
    assert h.edges == g.edges and h.orientation == g.orientation
    assert (h.c, h.stage) == (g.c, g.stage)


def test_vertex_decoding():
    assert decode_vertex([1, [0, 1]], 3) == Vertex(1, 1, (0, 1))
    assert parse_vertex_arg("(0,1)", 1) == Vertex.from_seq((0, 1), 1)
    assert parse_vertex_arg("7", None) == 7
    for bad, stage in (([0, [0, 0]], 1), ([0, [2]], 1), ([0, [0]], None)):
        with pytest.raises(ValueError):
            decode_vertex(bad, stage)


def test_hom_json_round_trip():
    g = build_stage((1, 1), 1)
    phi = {v: v for v in g.vertices}
    assert hom_from_json(json.loads(json.dumps(hom_to_json(phi, g))), 1, 1) == phi


def test_dot_node_counts_and_arrows():
    c = (1, 1, 3, 5)
    for n, size in enumerate((2, 6, 16, 38)):
        text = export_dot(build_stage(c, n))
        assert text.startswith("graph")
        nodes = set(re.findall(r'^\s*("[^"]+")(?:\s*\[[^\]]*\])?;$', text, re.M))
        assert len(nodes) == size
        assert text.count(" -- ") == size - 1
    text = export_dot(build_oriented_stage(OddPair.all_plus(c), 2))
    assert text.startswith("digraph") and text.count(" -> ") == 15 and " -- " not in text
    assert "cluster_copy0" in text and "cluster_middle" in text


def test_cli_build_and_metrics(capsys, tmp_path):
    code, out = run(capsys, "build", "--kind", "oriented", "--c", "1,1", "--stage", "1")
    assert code == 0
    path = tmp_path / "g.json"
    path.write_text(out)
    code, out = run(capsys, "didist", "--graph", str(path), "--x", "0,0", "--y", "0,1")
    assert code == 0 and json.loads(out) == {"didist": 3}
    code, out = run(capsys, "dist", "--graph", str(path), "--x", "0,0", "--y", "0,1")
    assert json.loads(out) == {"dist": 5}
    code, out = run(capsys, "didist-set", "--graph", str(path), "--set", "[[0,[0]],[0,[1]]]")
    assert json.loads(out)["values"] == [-3, 0, 3]


def test_cli_verify_and_star(capsys):
    assert run(capsys, "verify", "stage", "--c", "1,1,3,5")[0] == 0
    code, out = run(capsys, "verify", "claims", "--forests", "5", "--walks", "20", "--seed", "1")
    assert code == 0 and json.loads(out)["ok"]
    code, out = run(capsys, "star", "gen", "--stages", "3")
    assert code == 0 and json.loads(out)["c"] == [1, 47, 879]
    assert run(capsys, "star", "check", "--sigmas", "3,49,881")[0] == 0
    code, out = run(capsys, "star", "check", "--sigmas", "3,47")
    assert code == 1 and json.loads(out)["first_violation"] == 1


def test_cli_color(capsys):
    tri = json.dumps({"vertices": [0, 1, 2], "edges": [[0, 1], [1, 2], [2, 0]]})
    code, out = run(capsys, "color", "two", "--graph", tri)
    assert code == 1 and not json.loads(out)["bipartite"]
    path = json.dumps({"vertices": [0, 1, 2], "edges": [[0, 1], [1, 2]]})
    assert run(capsys, "color", "parity", "--graph", path, "--set", "[0,2]")[0] == 0
    assert run(capsys, "color", "parity", "--graph", path, "--set", "[0,1]")[0] == 1


def test_cli_pipeline(capsys):
    code, out = run(capsys, "hom", "pipeline", "--c0", "1,1,1,1", "--c", "1,1,1,1", "--depth", "3")
    assert code == 1
    assert run(capsys, "hom", "pipeline", "--c0", "1,47,879", "--c", "1,1,3", "--depth", "2")[0] == 0


def test_cli_antibasis(capsys):
    code, out = run(capsys, "antibasis", "separation", "--t", "1,0", "--t2", "0,1", "--depth", "2")
    assert code == 0 and json.loads(out)["ok"]
    code, out = run(capsys, "antibasis", "interval", "--t", "1,1", "--depth", "2")
    assert code == 0


def test_cli_export_dot(capsys, tmp_path):
    code, out = run(capsys, "export-dot", "--c", "1,1,3,5", "--stages", "0-3", "--out-dir", str(tmp_path))
    assert code == 0 and len(json.loads(out)["written"]) == 4
    assert (tmp_path / "L_stage3.dot").read_text().startswith("graph")


def test_cli_usage_errors(capsys):
    assert run(capsys, "build", "--c", "2,1", "--stage", "1")[0] == 2
    assert run(capsys, "build", "--c", "1,1", "--stage", "5")[0] == 2
    assert run(capsys, "didist", "--graph", "/nonexistent.json", "--x", "0", "--y", "1")[0] == 2
    assert run(capsys, "star", "check", "--sigmas", "3,x")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["no-such-verb"])
    assert info.value.code == 2
