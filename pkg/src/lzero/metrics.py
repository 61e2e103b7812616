"""Walks, distances, directed distances and didistance sets."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import CyclicGraphError
from .graph import FiniteGraph


def sigma(d: Iterable[int]) -> int:
    """Sum of a direction word."""
    return sum(d)


@dataclass(frozen=True)
class Walk:
    """A vertex sequence x_0..x_l together with its direction word d_p in {±1}^l."""

    vertices: tuple
    directions: tuple

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a walk has at least one vertex")
        if len(self.directions) != len(self.vertices) - 1:
            raise ValueError("direction word length must equal the number of steps")

    @property
    def length(self) -> int:
        return len(self.directions)

    @property
    def dilength(self) -> int:
        return sum(self.directions)

    @property
    def is_path(self) -> bool:
        """Injective walks are paths."""
        return len(set(self.vertices)) == len(self.vertices)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]


def walk_in(g: FiniteGraph, vertices: Sequence[Hashable]) -> Walk:
    """The walk along ``vertices`` with directions read off g's orientation (+1 if unoriented)."""
    vertices = tuple(vertices)
    dirs = tuple(g.direction(a, b) for a, b in zip(vertices, vertices[1:]))
    return Walk(vertices, dirs)


def is_valid_walk(g: FiniteGraph, w: Walk) -> bool:
    for (a, b), e in zip(zip(w.vertices, w.vertices[1:]), w.directions):
        if e not in (1, -1):
            return False
        if not (g.has_arc(a, b) if e == 1 else g.has_arc(b, a)):
            return False
    return all(v in g for v in w.vertices)


def walk_dilength(w: Walk, g: FiniteGraph | None = None) -> int:
    if g is not None and not is_valid_walk(g, w):
        raise ValueError("not a walk in the given graph")
    return w.dilength


def _bfs_parents(g: FiniteGraph, source) -> dict:
    parent = {source: None}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return parent


def shortest_path(g: FiniteGraph, x, y) -> list | None:
    """A shortest x-y vertex path (canonical BFS tie-break), or None if unreachable."""
    for v in (x, y):
        if v not in g:
            raise KeyError(f"unknown vertex {v!r}")
    parent = _bfs_parents(g, x)
    if y not in parent:
        return None
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    return path[::-1]


def dist(g: FiniteGraph, x, y) -> int | None:
    """Edge count of a shortest x-y path; None when x and y lie in different components."""
    path = shortest_path(g, x, y)
    return None if path is None else len(path) - 1


def distances_from(g: FiniteGraph, source) -> dict:
    out = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in out:
                out[y] = out[x] + 1
                queue.append(y)
    return out


def _require_oriented_forest(g: FiniteGraph):
    if not g.oriented:
        raise ValueError("didistance needs an oriented graph")
    if not g.is_forest:
        raise CyclicGraphError("graph has an undirected cycle; didistance is undefined")


def didist(g: FiniteGraph, x, y) -> int | None:
    """Directed length of the unique x-y path in an oriented forest; None if unreachable."""
    _require_oriented_forest(g)
    path = shortest_path(g, x, y)
    if path is None:
        return None
    return sum(g.direction(a, b) for a, b in zip(path, path[1:]))


def potentials(g: FiniteGraph) -> dict:
    """didist from the canonical-least vertex of each component, for every vertex."""
    _require_oriented_forest(g)
    pot = {}
    for comp in g.components:
        root = comp[0]
        pot[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if y not in pot:
                    pot[y] = pot[x] + g.direction(x, y)
                    queue.append(y)
    return pot


def didistance_set(g: FiniteGraph, B: Iterable[Hashable]) -> frozenset:
    """{didist(x, y) : x, y in B in a common component}."""
    pot = potentials(g)
    comp = g.component_of
    by_comp: dict = {}
    for v in B:
        if v not in g:
            raise KeyError(f"unknown vertex {v!r}")
        by_comp.setdefault(comp[v], set()).add(pot[v])
    out = set()
    for values in by_comp.values():
        out.update(b - a for a in values for b in values)
    return frozenset(out)


@dataclass
class StructureReport:
    components: tuple
    degrees: Counter
    acyclic: bool
    is_forest: bool
    paths: tuple  # per component: is it a simple path

    def as_dict(self) -> dict:
        return {
            "components": len(self.components),
            "component_sizes": [len(c) for c in self.components],
            "degrees": {str(k): v for k, v in sorted(self.degrees.items())},
            "acyclic": self.acyclic,
            "is_forest": self.is_forest,
            "paths": list(self.paths),
        }


def structure(g: FiniteGraph) -> StructureReport:
    degs = Counter(g.degree(v) for v in g.vertices)
    acyclic = g.is_forest
    paths = []
    for comp in g.components:
        edges = sum(1 for e in g.edges if next(iter(e)) in set(comp))
        max_deg = max(g.degree(v) for v in comp)
        paths.append(edges == len(comp) - 1 and max_deg <= 2)
    return StructureReport(g.components, degs, acyclic, acyclic, tuple(paths))
