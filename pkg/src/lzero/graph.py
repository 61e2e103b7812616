"""Core value types: stage vertices, odd-pairs and immutable finite graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, NamedTuple, Sequence


class Vertex(NamedTuple):
    """A point of a stage space, stored as (level, head, tail).

    The owning stage is ``level + len(tail)``. Tuple ordering is the canonical
    vertex order: level-major, then head, then tail read as a binary number.
    """

    level: int
    head: int
    tail: tuple = ()

    @property
    def stage(self) -> int:
        return self.level + len(self.tail)

    @property
    def seq(self) -> tuple:
        """Sequence form ``(head) ⌢ tail``."""
        return (self.head,) + tuple(self.tail)

    def extend(self, bit: int) -> "Vertex":
        return Vertex(self.level, self.head, tuple(self.tail) + (bit,))

    @classmethod
    def from_seq(cls, seq: Sequence[int], stage: int) -> "Vertex":
        seq = tuple(seq)
        if not seq:
            raise ValueError("empty vertex sequence")
        level = stage - (len(seq) - 1)
        if level < 0:
            raise ValueError(f"sequence {seq} too long for stage {stage}")
        return cls(level, seq[0], seq[1:])

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.seq)) + ")"


def check_odd_sequence(values: Iterable[int]) -> tuple:
    values = tuple(int(v) for v in values)
    for i, v in enumerate(values):
        if v < 1 or v % 2 == 0:
            raise ValueError(f"c({i}) = {v} is not an odd natural")
    return values


def check_direction_word(entries: Iterable[int]) -> tuple:
    entries = tuple(int(e) for e in entries)
    if any(e not in (-1, 1) for e in entries):
        raise ValueError(f"direction word {entries} has entries outside {{-1, +1}}")
    return entries


@dataclass(frozen=True)
class OddPair:
    """An odd-valued sequence ``c`` with direction words ``d(i)`` of length ``c(i) + 2``."""

    c: tuple
    d: tuple

    def __post_init__(self):
        c = check_odd_sequence(self.c)
        d = tuple(check_direction_word(w) for w in self.d)
        if len(c) != len(d):
            raise ValueError("c and d must have the same length")
        for i, (ci, w) in enumerate(zip(c, d)):
            if len(w) != ci + 2:
                raise ValueError(f"|d({i})| = {len(w)}, expected c({i}) + 2 = {ci + 2}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def all_plus(cls, c: Iterable[int]) -> "OddPair":
        c = check_odd_sequence(c)
        return cls(c, tuple((1,) * (ci + 2) for ci in c))

    @property
    def sigmas(self) -> tuple:
        return tuple(sum(w) for w in self.d)

    def __len__(self) -> int:
        return len(self.c)

    def prefix(self, n: int) -> "OddPair":
        return OddPair(self.c[:n], self.d[:n])


def _edge(u, v) -> frozenset:
    return frozenset((u, v))


@dataclass(frozen=True)
class FiniteGraph:
    """An immutable finite graph with an optional orientation.

    ``vertices`` is ordered; that order is the canonical order used for every
    tie-break. ``orientation`` holds one ordered pair ``(u, v)``, meaning
    ``u -> v``, per edge. ``c`` and ``stage`` are set on stage graphs.
    """

    vertices: tuple
    edges: frozenset
    orientation: frozenset | None = None
    c: tuple | None = None
    stage: int | None = None
    _checked: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        if self.orientation is not None:
            object.__setattr__(self, "orientation", frozenset(tuple(a) for a in self.orientation))
        if self.c is not None:
            object.__setattr__(self, "c", tuple(self.c))
        if self._checked:
            self._validate()

    def _validate(self):
        vs = self.index
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertices")
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"edge {set(e)} is a loop")
            for x in e:
                if x not in vs:
                    raise ValueError(f"edge endpoint {x!r} is not a vertex")
        if self.orientation is not None:
            covered = set()
            for u, v in self.orientation:
                e = _edge(u, v)
                if e not in self.edges or e in covered:
                    raise ValueError(f"orientation pair {(u, v)!r} does not match a unique edge")
                covered.add(e)
            if len(covered) != len(self.edges):
                raise ValueError("orientation does not cover every edge")

    @classmethod
    def from_edges(cls, vertices, edges, orientation=None, **meta) -> "FiniteGraph":
        """Build from plain pairs; with ``orientation=True`` the pairs are read as arcs."""
        edges = [tuple(e) for e in edges]
        if orientation is True:
            return cls(tuple(vertices), frozenset(_edge(*e) for e in edges), frozenset(edges), **meta)
        return cls(tuple(vertices), frozenset(_edge(*e) for e in edges), orientation, **meta)

    # cached views
    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].append(v)
            adj[v].append(u)
        idx = self.index
        return {v: tuple(sorted(ns, key=idx.__getitem__)) for v, ns in adj.items()}

    @cached_property
    def _arcs(self) -> frozenset:
        return self.orientation if self.orientation is not None else frozenset()

    @property
    def oriented(self) -> bool:
        return self.orientation is not None

    def __contains__(self, v) -> bool:
        return v in self.index

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, v) -> tuple:
        return self.adjacency[v]

    def degree(self, v) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u, v) -> bool:
        return _edge(u, v) in self.edges

    def has_arc(self, u, v) -> bool:
        """``u -> v`` is an arc; on an unoriented graph every edge is an arc both ways."""
        if self.orientation is None:
            return self.has_edge(u, v)
        return (u, v) in self._arcs

    def direction(self, u, v) -> int:
        """+1 if the edge {u, v} is traversed along its orientation from u, else -1."""
        if not self.has_edge(u, v):
            raise ValueError(f"{u!r} and {v!r} are not adjacent")
        if self.orientation is None or (u, v) in self._arcs:
            return 1
        return -1

    def sort_key(self, v) -> int:
        return self.index[v]

    def sorted(self, vs: Iterable[Hashable]) -> list:
        return sorted(vs, key=self.index.__getitem__)

    def induced(self, vs: Iterable[Hashable]) -> "FiniteGraph":
        """Restriction to ``vs`` in canonical order; stage metadata is dropped."""
        keep = set(vs)
        verts = tuple(v for v in self.vertices if v in keep)
        edges = frozenset(e for e in self.edges if e <= keep)
        orient = None
        if self.orientation is not None:
            orient = frozenset(a for a in self.orientation if a[0] in keep and a[1] in keep)
        return FiniteGraph(verts, edges, orient, _checked=False)

    def symmetrize(self) -> "FiniteGraph":
        return FiniteGraph(self.vertices, self.edges, None, self.c, self.stage, _checked=False)

    def reverse(self) -> "FiniteGraph":
        if self.orientation is None:
            return self
        rev = frozenset((v, u) for u, v in self.orientation)
        return FiniteGraph(self.vertices, self.edges, rev, self.c, self.stage, _checked=False)

    def with_orientation(self, arcs: Iterable[tuple]) -> "FiniteGraph":
        return FiniteGraph(self.vertices, self.edges, frozenset(arcs), self.c, self.stage)

    @cached_property
    def components(self) -> tuple:
        """Connected components as tuples in canonical order, ordered by least member."""
        seen = set()
        comps = []
        for root in self.vertices:
            if root in seen:
                continue
            seen.add(root)
            comp = [root]
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(tuple(self.sorted(comp)))
        return tuple(comps)

    @cached_property
    def component_of(self) -> dict:
        return {v: i for i, comp in enumerate(self.components) for v in comp}

    @property
    def is_forest(self) -> bool:
        return len(self.edges) == len(self.vertices) - len(self.components)

    def edge_list(self) -> list:
        """Edges as ordered pairs (earlier vertex first), in canonical order."""
        idx = self.index
        pairs = []
        for e in self.edges:
            u, v = sorted(e, key=idx.__getitem__)
            pairs.append((u, v))
        pairs.sort(key=lambda p: (idx[p[0]], idx[p[1]]))
        return pairs

    def arc_list(self) -> list:
        idx = self.index
        return sorted(self._arcs, key=lambda a: (min(idx[a[0]], idx[a[1]]), max(idx[a[0]], idx[a[1]])))
