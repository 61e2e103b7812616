"""Finite path graphs, stage graphs L_{c,n} / L_{b,n}, special vertices and projections."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import OutsideDomainError
from .graph import FiniteGraph, OddPair, Vertex, check_direction_word, check_odd_sequence

DEFAULT_MAX_STAGE = 6


def max_stage() -> int:
    """Construction depth cap, overridable through ``LZERO_MAX_STAGE``."""
    raw = os.environ.get("LZERO_MAX_STAGE")
    if raw is None:
        return DEFAULT_MAX_STAGE
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"LZERO_MAX_STAGE must be an integer, got {raw!r}") from None


def build_path(n: int) -> FiniteGraph:
    """The path L_n on vertices (0), ..., (n)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    verts = tuple(Vertex(0, i) for i in range(n + 1))
    edges = frozenset(frozenset((verts[i - 1], verts[i])) for i in range(1, n + 1))
    return FiniteGraph(verts, edges, stage=0)


def build_oriented_path(n: int, d: Sequence[int]) -> FiniteGraph:
    """L_n^d: the edge {i-1, i} points forward when d(i) = +1. d(0) is never read."""
    d = check_direction_word(d)
    if len(d) <= n:
        raise ValueError(f"direction word of length {len(d)} too short for L_{n}")
    g = build_path(n)
    arcs = [(Vertex(0, i - 1), Vertex(0, i)) if d[i] == 1 else (Vertex(0, i), Vertex(0, i - 1))
            for i in range(1, n + 1)]
    return g.with_orientation(arcs)


def special_vertex(c: Sequence[int], n: int) -> Vertex:
    """s_0 = (c(0)) and s_n = (0)^n ⌢ (1) for n > 0, as a level-0 vertex of stage n."""
    c = check_odd_sequence(c)
    if not 0 <= n < len(c):
        raise IndexError(f"stage {n} outside c of length {len(c)}")
    if n == 0:
        return Vertex(0, c[0], ())
    return Vertex(0, 0, (0,) * (n - 1) + (1,))


def zero_vertex(n: int) -> Vertex:
    """The all-zeros vertex (0)^{n+1} of stage n."""
    return Vertex(0, 0, (0,) * n)


def stage_vertices(c: Sequence[int], n: int) -> tuple:
    """X_{c,n} enumerated in canonical order."""
    out = []
    for m in range(n + 1):
        width = n - m
        for k in range(c[m] + 1):
            for bits in range(1 << width):
                out.append(Vertex(m, k, tuple((bits >> (width - 1 - j)) & 1 for j in range(width))))
    return tuple(out)


def stage_size(c: Sequence[int], n: int) -> int:
    """|X_{c,n}| by the doubling recurrence."""
    size = c[0] + 1
    for i in range(1, n + 1):
        size = 2 * size + c[i] + 1
    return size


def _check_stage(c, n):
    if n < 0 or n >= len(c):
        raise IndexError(f"stage {n} needs c of length > {n}, got {len(c)}")
    cap = max_stage()
    if n > cap:
        raise ValueError(f"stage {n} exceeds the construction cap {cap} (LZERO_MAX_STAGE)")


@lru_cache(maxsize=64)
def _stage_arcs(c: tuple, d: tuple, n: int) -> tuple:
    """Arcs of L_{b,n} for b = (c, d); with d all +1 these also give L_{c,n} once symmetrized."""
    arcs = []
    for i in range(1, c[0] + 1):
        a, b = Vertex(0, i - 1), Vertex(0, i)
        arcs.append((a, b) if d[0][i] == 1 else (b, a))
    for m in range(1, n + 1):
        word = d[m]
        arcs = [(u.extend(j), v.extend(j)) for j in (0, 1) for u, v in arcs]
        for i in range(1, c[m] + 1):
            a, b = Vertex(m, i - 1), Vertex(m, i)
            arcs.append((a, b) if word[i] == 1 else (b, a))
        s = special_vertex(c, m - 1)
        left, right = s.extend(0), Vertex(m, 0)
        arcs.append((left, right) if word[0] == 1 else (right, left))
        left, right = Vertex(m, c[m]), s.extend(1)
        arcs.append((left, right) if word[c[m] + 1] == 1 else (right, left))
    return tuple(arcs)


@lru_cache(maxsize=64)
def _build_stage(c: tuple, n: int) -> FiniteGraph:
    plus = tuple((1,) * (ci + 2) for ci in c[: n + 1])
    arcs = _stage_arcs(c[: n + 1], plus, n)
    edges = frozenset(frozenset(a) for a in arcs)
    return FiniteGraph(stage_vertices(c, n), edges, None, c[: n + 1], n, _checked=False)


def build_stage(c: Sequence[int], n: int) -> FiniteGraph:
    """The undirected stage graph L_{c,n}, a simple path."""
    c = check_odd_sequence(c)
    _check_stage(c, n)
    return _build_stage(c[: n + 1], n)


@lru_cache(maxsize=64)
def _build_oriented_stage(b: OddPair, n: int) -> FiniteGraph:
    arcs = _stage_arcs(b.c[: n + 1], b.d[: n + 1], n)
    edges = frozenset(frozenset(a) for a in arcs)
    return FiniteGraph(stage_vertices(b.c, n), edges, frozenset(arcs), b.c[: n + 1], n, _checked=False)


def build_oriented_stage(b: OddPair, n: int) -> FiniteGraph:
    """The oriented stage graph L_{b,n}."""
    if not isinstance(b, OddPair):
        raise TypeError("b must be an OddPair")
    _check_stage(b.c, n)
    return _build_oriented_stage(b.prefix(n + 1), n)


def project(c: Sequence[int], n: int, n2: int, v: Vertex) -> Vertex:
    """pi_{c,n,n2}: keep level and head, truncate the tail to n - level bits."""
    if n > n2:
        raise ValueError(f"cannot project from stage {n2} up to stage {n}")
    if v.stage != n2:
        raise ValueError(f"{v} is not a vertex of stage {n2}")
    if c is not None and v.head > c[v.level]:
        raise ValueError(f"{v} has head above c({v.level})")
    if v.level > n:
        raise OutsideDomainError(f"{v} has level {v.level} > {n}; no projection")
    return Vertex(v.level, v.head, tuple(v.tail[: n - v.level]))


def copy_of(v: Vertex) -> int | None:
    """Which copy of the previous stage holds v (its last tail bit), None for the middle path."""
    return v.tail[-1] if v.tail else None


@dataclass
class StageReport:
    ok: bool
    stage: int
    endpoints: tuple = ()
    special: Vertex | None = None
    failures: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "stage": self.stage,
            "endpoints": [list(v.seq) for v in self.endpoints],
            "special": list(self.special.seq) if self.special is not None else None,
            "failures": list(self.failures),
        }


def verify_stage(g: FiniteGraph) -> StageReport:
    """Check that a stage graph is a simple path ending at (0)^{n+1} and s_n, projecting onto stage n-1."""
    if g.c is None or g.stage is None:
        raise ValueError("verify_stage needs a graph carrying (c, stage) metadata")
    n, c = g.stage, g.c
    failures = []
    if set(g.vertices) != set(stage_vertices(c, n)):
        failures.append("vertex set differs from X_{c,n}")
    if len(g.components) != 1:
        failures.append(f"disconnected: {len(g.components)} components")
    if not g.is_forest:
        failures.append("has a cycle")
    degs = [g.degree(v) for v in g.vertices]
    if degs and max(degs) > 2:
        failures.append(f"maximum degree {max(degs)} > 2")
    ends = tuple(v for v in g.vertices if g.degree(v) <= 1)
    s_n = special_vertex(c, n)
    expected = {zero_vertex(n), s_n}
    if set(ends) != expected and len(g.vertices) > 1:
        failures.append(f"endpoints {[str(v) for v in ends]} != {{(0)^{n + 1}, s_{n}}}")
    if n > 0:
        prev = build_stage(c, n - 1)
        for u, v in g.edge_list():
            if u.level >= n or v.level >= n:
                continue
            pu, pv = project(c, n - 1, n, u), project(c, n - 1, n, v)
            if not prev.has_edge(pu, pv):
                failures.append(f"edge {u}-{v} projects to non-edge {pu}-{pv}")
    return StageReport(not failures, n, ends, s_n, failures)


def sibling_pairs(c: Sequence[int], n: int) -> list:
    """All pairs (k)⌢t⌢(0), (k)⌢t⌢(1) in X_{c,n}."""
    return [(v, Vertex(v.level, v.head, v.tail[:-1] + (1,)))
            for v in stage_vertices(c, n) if v.tail and v.tail[-1] == 0]


def path_positions(g: FiniteGraph) -> dict:
    """Index of every vertex along a path graph, starting from its canonical-least endpoint."""
    ends = [v for v in g.vertices if g.degree(v) <= 1]
    if len(g.components) != 1 or not g.is_forest or len(ends) > 2 or not ends:
        raise ValueError("graph is not a single path")
    pos = {ends[0]: 0}
    prev, cur = None, ends[0]
    while True:
        nxt = [w for w in g.neighbors(cur) if w != prev]
        if not nxt:
            return pos
        prev, cur = cur, nxt[0]
        pos[cur] = len(pos)


def check_sibling_odd_distance(c: Sequence[int], n: int) -> list:
    """Sibling pairs of stage n whose distance is even (should be none)."""
    pos = path_positions(build_stage(c, n))
    return [(x, y, abs(pos[x] - pos[y])) for x, y in sibling_pairs(c, n)
            if abs(pos[x] - pos[y]) % 2 == 0]


def check_symmetrization(b: OddPair, n: int) -> bool:
    """L_{c,n} = L_{b,n} ∪ L_{b,n}^{-1}."""
    directed = build_oriented_stage(b, n)
    arcs = directed.orientation
    both = {frozenset(a) for a in arcs} | {frozenset(a[::-1]) for a in arcs}
    plain = build_stage(b.c, n)
    return both == set(plain.edges) and set(directed.vertices) == set(plain.vertices)


def check_copy_separation(c: Sequence[int], n: int) -> list:
    """Pairs in different copies of stage n-1 at distance < c(n) + 2 (should be none)."""
    if n == 0:
        return []
    pos = path_positions(build_stage(c, n))
    bad = []
    copies = {0: [], 1: []}
    for v in pos:
        if v.level < n:
            copies[v.tail[-1]].append(pos[v])
    gap = min(abs(a - b) for a in copies[0] for b in copies[1])
    if gap < c[n] + 2:
        bad.append(gap)
    return bad


def level_set(g: FiniteGraph, levels: Iterable[int]) -> frozenset:
    levels = set(levels)
    return frozenset(v for v in g.vertices if v.level in levels)


def edge_projection_failures(c: Sequence[int], n: int) -> list:
    """Edges of L_{c,n+1} with both ends of level <= n whose projection is not an edge of L_{c,n}."""
    upper, lower = build_stage(c, n + 1), build_stage(c, n)
    out = []
    for u, v in upper.edge_list():
        if u.level <= n and v.level <= n:
            if not lower.has_edge(project(c, n, n + 1, u), project(c, n, n + 1, v)):
                out.append((u, v))
    return out


def endpoints_project_to_endpoints(c: Sequence[int], n: int) -> bool:
    g = build_stage(c, n)
    ends = [v for v in g.vertices if g.degree(v) <= 1]
    for m in range(n):
        lower = build_stage(c, m)
        for v in ends:
            if v.level <= m and lower.degree(project(c, m, n, v)) > 1:
                return False
    return True

