"""Shared oracles (networkx-based) and the acceptance summary hook."""

import networkx as nx
import pytest

ACCEPTANCE_LINES = {}


def to_nx(g):
    """Undirected networkx copy of a FiniteGraph."""
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(tuple(e) for e in g.edges)
    return h


def to_nx_directed(g):
    h = nx.DiGraph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.orientation)
    return h


def oracle_potentials(g):
    """Signed depth from the first vertex of each component, computed with networkx BFS."""
    und, dig = to_nx(g), to_nx_directed(g)
    pot = {}
    for comp in nx.connected_components(und):
        root = min(comp, key=g.index.__getitem__)
        pot[root] = 0
        for u, v in nx.bfs_edges(und, root):
            pot[v] = pot[u] + (1 if dig.has_edge(u, v) else -1)
    return pot


def oracle_didist(g, x, y):
    und, dig = to_nx(g), to_nx_directed(g)
    if not nx.has_path(und, x, y):
        return None
    path = nx.shortest_path(und, x, y)
    return sum(1 if dig.has_edge(a, b) else -1 for a, b in zip(path, path[1:]))


def record_acceptance(number, ok, detail):
    ACCEPTANCE_LINES[number] = f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def rng():
    import random
    return random.Random(12345)
