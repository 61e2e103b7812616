import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lzero.errors import OutsideDomainError
from lzero.graph import FiniteGraph, OddPair, Vertex
from lzero.stages import (
    build_oriented_path,
    build_oriented_stage,
    build_path,
    build_stage,
    check_copy_separation,
    check_sibling_odd_distance,
    check_symmetrization,
    edge_projection_failures,
    endpoints_project_to_endpoints,
    project,
    special_vertex,
    stage_size,
    stage_vertices,
    verify_stage,
    zero_vertex,
)

from conftest import to_nx

odd_values = st.integers(0, 3).map(lambda k: 2 * k + 1)


def V(*seq, stage):
    return Vertex.from_seq(seq, stage)


def test_build_path_small_cases():
    assert len(build_path(0)) == 1 and not build_path(0).edges
    g = build_path(3)
    assert {frozenset((u.head, v.head)) for u, v in g.edge_list()} == {frozenset(p) for p in [(0, 1), (1, 2), (2, 3)]}
    with pytest.raises(ValueError):
        build_path(-1)


def test_oriented_path_reads_d_from_index_one():
    g = build_oriented_path(2, (1, -1, 1))
    assert set(g.orientation) == {(Vertex(0, 1), Vertex(0, 0)), (Vertex(0, 1), Vertex(0, 2))}
    g = build_oriented_path(2, (-1, 1, 1))
    assert set(g.orientation) == {(Vertex(0, 0), Vertex(0, 1)), (Vertex(0, 1), Vertex(0, 2))}
    with pytest.raises(ValueError):
        build_oriented_path(3, (1, 1, 1))


def test_special_vertices():
    assert special_vertex((1, 1, 1), 0) == Vertex(0, 1)
    assert special_vertex((1, 1, 1), 2).seq == (0, 0, 1)
    assert special_vertex((5, 1), 1).seq == (0, 1)
    with pytest.raises(IndexError):
        special_vertex((1,), 1)


def test_stage_one_path_order():
    g = build_stage((1, 1), 1)
    order = ["(0,0)", "(1,0)", "(0)", "(1)", "(1,1)", "(0,1)"]
    path = nx.shortest_path(to_nx(g), V(0, 0, stage=1), V(0, 1, stage=1))
    assert [str(v) for v in path] == order


def test_vertex_counts_follow_recurrence():
    c = (1, 1, 3, 5, 7)
    assert [len(build_stage(c, n)) for n in range(5)] == [2, 6, 16, 38, 84]
    assert [stage_size(c, n) for n in range(5)] == [2, 6, 16, 38, 84]


def test_oriented_stage_one_arcs():
    g = build_oriented_stage(OddPair.all_plus((1, 1)), 1)
    expected = {((0, 0), (1, 0)), ((1, 0), (0,)), ((0,), (1,)), ((1,), (1, 1)), ((0, 1), (1, 1))}
    assert {(u.seq, v.seq) for u, v in g.orientation} == expected


def test_projection_examples():
    assert project((1, 1), 0, 1, V(1, 0, stage=1)) == Vertex(0, 1)
    assert project((1, 1, 3), 1, 2, V(0, 1, 0, stage=2)).seq == (0, 1)
    with pytest.raises(OutsideDomainError):
        project((1, 1, 3), 1, 2, V(2, stage=2))


@given(st.lists(odd_values, min_size=3, max_size=4), st.data())
@settings(max_examples=40, deadline=None)
def test_projection_composes(c, data):
    top = len(c) - 1
    v = data.draw(st.sampled_from(stage_vertices(c, top)))
    mid = data.draw(st.integers(v.level, top))
    low = data.draw(st.integers(v.level, mid))
    assert project(c, low, mid, project(c, mid, top, v)) == project(c, low, top, v)


def test_verify_stage_examples():
    r = verify_stage(build_stage((1, 1), 1))
    assert r.ok and set(r.endpoints) == {V(0, 0, stage=1), V(0, 1, stage=1)} and r.special.seq == (0, 1)
    r = verify_stage(build_stage((1,), 0))
    assert r.ok and set(r.endpoints) == {Vertex(0, 0), Vertex(0, 1)}


def test_verify_stage_detects_deleted_edge():
    g = build_stage((1, 1, 3), 2)
    e = next(iter(g.edges))
    broken = FiniteGraph(g.vertices, g.edges - {e}, None, g.c, g.stage)
    r = verify_stage(broken)
    assert not r.ok and any("disconnected" in f for f in r.failures)


@given(st.lists(odd_values, min_size=1, max_size=6))
@settings(max_examples=30, deadline=None)
def test_every_stage_is_a_simple_path(c):
    for n in range(len(c)):
        g = build_stage(c, n)
        h = to_nx(g)
        assert nx.is_tree(h) and max(d for _, d in h.degree()) <= 2
        ends = {v for v, d in h.degree() if d == 1}
        assert ends == {zero_vertex(n), special_vertex(c, n)}
        assert len(g) == stage_size(c, n)


@given(st.lists(odd_values, min_size=2, max_size=5))
@settings(max_examples=20, deadline=None)
def test_projection_invariants(c):
    for n in range(len(c) - 1):
        assert edge_projection_failures(c, n) == []
    assert endpoints_project_to_endpoints(c, len(c) - 1)
    assert check_copy_separation(c, len(c) - 1) == []


def test_symmetrization_random_words():
    rng = random.Random(3)
    for _ in range(10):
        c = tuple(rng.choice((1, 3, 5)) for _ in range(5))
        b = OddPair(c, tuple(tuple(rng.choice((1, -1)) for _ in range(ci + 2)) for ci in c))
        for n in range(5):
            assert check_symmetrization(b, n)


def test_sibling_distance_is_odd_against_networkx():
    c = (1, 1, 3, 5, 7, 9)
    for n in range(6):
        assert check_sibling_odd_distance(c, n) == []
    g = build_stage(c, 4)
    h = to_nx(g)
    v = V(2, 1, 0, stage=4)
    w = V(2, 1, 1, stage=4)
    assert nx.shortest_path_length(h, v, w) % 2 == 1


def test_unused_stage_zero_entries_are_ignored():
    a = OddPair((1,), ((1, 1, 1),))
    b = OddPair((1,), ((-1, 1, -1),))
    assert build_oriented_stage(a, 0).orientation == build_oriented_stage(b, 0).orientation


def test_stage_cap(monkeypatch):
    monkeypatch.setenv("LZERO_MAX_STAGE", "2")
    with pytest.raises(ValueError, match="cap"):
        build_stage((1, 1, 1, 1), 3)


def test_bad_odd_pair():
    with pytest.raises(ValueError):
        OddPair((2,), ((1, 1, 1, 1),))
    with pytest.raises(ValueError):
        OddPair((1,), ((1, 1),))
