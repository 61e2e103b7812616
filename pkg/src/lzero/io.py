"""JSON graph documents, vertex encodings and DOT rendering."""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping

from .graph import FiniteGraph, Vertex

FORMAT_VERSION = 1
PALETTE = ("green", "blue", "yellow", "red")


def encode_vertex(v) -> Any:
    if isinstance(v, Vertex):
        return [v.head, list(v.tail)]
    return v


def decode_vertex(obj, stage: int | None):
    """Inverse of encode_vertex; stage vertices need the owning stage to recover their level."""
    if stage is None:
        if isinstance(obj, list):
            raise ValueError(f"structured vertex {obj!r} in a graph without a stage")
        return obj
    if not (isinstance(obj, list) and len(obj) == 2 and isinstance(obj[1], list)):
        raise ValueError(f"stage vertex must look like [head, [bits...]], got {obj!r}")
    head, bits = obj
    level = stage - len(bits)
    if level < 0:
        raise ValueError(f"vertex {obj!r} has too many tail bits for stage {stage}")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"vertex {obj!r} has non-binary tail")
    return Vertex(level, int(head), tuple(bits))


def parse_vertex_arg(text: str, stage: int | None):
    """Command-line vertex: '0,1' is the sequence (0,1) of a stage graph; scalars otherwise."""
    text = text.strip().strip("()")
    if stage is None:
        try:
            return int(text)
        except ValueError:
            return text
    seq = [int(x) for x in text.split(",") if x.strip()]
    return Vertex.from_seq(seq, stage)


def graph_to_doc(g: FiniteGraph) -> dict:
    doc = {
        "format": FORMAT_VERSION,
        "c": list(g.c) if g.c is not None else None,
        "stage": g.stage,
        "oriented": g.oriented,
        "vertices": [encode_vertex(v) for v in g.vertices],
        "edges": [[encode_vertex(u), encode_vertex(v)] for u, v in g.edge_list()],
    }
    if g.oriented:
        doc["orientation"] = [[encode_vertex(u), encode_vertex(v)] for u, v in g.arc_list()]
    return doc


def doc_to_graph(doc: Mapping) -> FiniteGraph:
    if doc.get("format", FORMAT_VERSION) != FORMAT_VERSION:
        raise ValueError(f"unsupported graph document format {doc.get('format')!r}")
    stage = doc.get("stage")
    c = doc.get("c")
    vertices = tuple(decode_vertex(v, stage) for v in doc["vertices"])
    edges = frozenset(frozenset(decode_vertex(x, stage) for x in e) for e in doc.get("edges", []))
    orientation = None
    if doc.get("oriented"):
        orientation = frozenset(tuple(decode_vertex(x, stage) for x in a) for a in doc.get("orientation", []))
    return FiniteGraph(vertices, edges, orientation, tuple(c) if c is not None else None, stage)


def dumps_graph(g: FiniteGraph) -> str:
    return json.dumps(graph_to_doc(g), sort_keys=True)


def loads_graph(text: str) -> FiniteGraph:
    return doc_to_graph(json.loads(text))


def vertex_set_from_json(obj, stage: int | None) -> frozenset:
    items = obj["vertices"] if isinstance(obj, Mapping) else obj
    return frozenset(decode_vertex(v, stage) for v in items)


def vertex_set_to_json(vs: Iterable, g: FiniteGraph | None = None) -> list:
    vs = g.sorted(vs) if g is not None else list(vs)
    return [encode_vertex(v) for v in vs]


def hom_to_json(mapping: Mapping, source: FiniteGraph | None = None) -> dict:
    keys = source.sorted(mapping) if source is not None else list(mapping)
    return {"map": [[encode_vertex(k), encode_vertex(mapping[k])] for k in keys]}


def hom_from_json(obj: Mapping, source_stage: int | None, target_stage: int | None) -> dict:
    return {decode_vertex(a, source_stage): decode_vertex(b, target_stage) for a, b in obj["map"]}


def coloring_to_json(coloring: Mapping, g: FiniteGraph) -> list:
    return [[encode_vertex(v), coloring[v]] for v in g.sorted(coloring)]


# ---------------------------------------------------------------- DOT

def _node_id(v) -> str:
    return json.dumps(str(v))


def edge_color(u, v) -> str:
    """Stage graphs: black for level-0 edges, otherwise a palette colour cycled by level."""
    if not isinstance(u, Vertex):
        return "black"
    level = max(u.level, v.level)
    return "black" if level == 0 else PALETTE[(level - 1) % len(PALETTE)]


def export_dot(g: FiniteGraph, name: str | None = None) -> str:
    """Render g as DOT.

    Stage graphs (stage >= 1) get one cluster per copy of the previous stage,
    chosen by the last tail bit, and the inserted middle path is drawn bold.
    Oriented graphs become digraphs.
    """
    directed = g.oriented
    kind, arrow = ("digraph", "->") if directed else ("graph", "--")
    if name is None:
        name = f"L_stage{g.stage}" if g.stage is not None else "G"
    lines = [f"{kind} {json.dumps(name)} {{", "  node [shape=circle, fontsize=10];"]
    staged = g.stage is not None and all(isinstance(v, Vertex) for v in g.vertices)
    if staged and g.stage > 0:
        for bit in (0, 1):
            members = [v for v in g.vertices if v.tail and v.tail[-1] == bit]
            lines.append(f"  subgraph cluster_copy{bit} {{")
            lines.append(f'    label="copy {bit}";')
            lines.extend(f"    {_node_id(v)};" for v in members)
            lines.append("  }")
        middle = [v for v in g.vertices if v.level == g.stage]
        lines.append("  subgraph cluster_middle {")
        lines.append('    label="middle path"; style=bold;')
        lines.extend(f"    {_node_id(v)} [style=filled, fillcolor=lightgrey];" for v in middle)
        lines.append("  }")
    else:
        lines.extend(f"  {_node_id(v)};" for v in g.vertices)
    pairs = g.arc_list() if directed else g.edge_list()
    for u, v in pairs:
        attrs = f"color={edge_color(u, v)}"
        if staged and max(u.level, v.level) == g.stage and g.stage > 0:
            attrs += ", penwidth=2"
        lines.append(f"  {_node_id(u)} {arrow} {_node_id(v)} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
