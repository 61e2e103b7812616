"""Homomorphism checking and search, gap statistics, the extension step and the finite pipeline."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    GapTooSmallError,
    InfeasibleWalkError,
    InsufficientGrowthError,
    NotAHomomorphismError,
    NotAPathError,
)
from .graph import FiniteGraph, Vertex, check_odd_sequence
from .metrics import Walk
from .stages import build_stage, path_positions, project, stage_size, zero_vertex


# ---------------------------------------------------------------- checking

@dataclass
class PartialHom:
    """A finite partial map from ``source`` to ``target`` claimed to preserve edges."""

    mapping: dict
    source: FiniteGraph
    target: FiniteGraph

    @property
    def domain(self) -> frozenset:
        return frozenset(self.mapping)

    def __getitem__(self, v):
        return self.mapping[v]

    def is_hom(self) -> bool:
        return is_hom(self.mapping, self.source, self.target)


def hom_violations(mapping: Mapping, source: FiniteGraph, target: FiniteGraph) -> list:
    """Edges of ``source`` inside the domain whose images are not (correctly oriented) target edges."""
    bad = []
    for x, y in mapping.items():
        if x not in source:
            bad.append(("unknown source vertex", x))
        elif y not in target:
            bad.append(("unknown target vertex", x, y))
    if bad:
        return bad
    both = source.oriented and target.oriented
    pairs = source.arc_list() if both else source.edge_list()
    for x, y in pairs:
        if x in mapping and y in mapping:
            a, b = mapping[x], mapping[y]
            ok = target.has_arc(a, b) if both else target.has_edge(a, b)
            if not ok:
                bad.append(("edge", x, y, a, b))
    return bad


def is_hom(mapping: Mapping, source: FiniteGraph, target: FiniteGraph) -> bool:
    """True iff every source edge within the domain maps to a target edge.

    When both graphs are oriented, arcs must map to arcs with the same direction.
    """
    return not hom_violations(mapping, source, target)


# ---------------------------------------------------------------- search

def _bfs_order(g: FiniteGraph) -> list:
    order, seen = [], set()
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in g.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def find_hom(source: FiniteGraph, target: FiniteGraph, constraints: Mapping | None = None,
             allowed: Mapping | None = None) -> dict | None:
    """A total homomorphism source -> target extending ``constraints``, or None.

    ``allowed`` optionally restricts individual vertices to a set of images.
    Exhaustive backtracking that maintains arc consistency; variables are taken
    in BFS order and values in the target's canonical order, so the answer is
    deterministic (and the search backtrack-free on forests).
    """
    constraints = dict(constraints or {})
    allowed = dict(allowed or {})
    both = source.oriented and target.oriented
    tindex = target.index

    domains = {}
    for v in source.vertices:
        dom = set(target.vertices)
        if v in allowed:
            dom &= set(allowed[v])
        if v in constraints:
            dom &= {constraints[v]}
        domains[v] = dom

    def compatible(x, a, y, b) -> bool:
        if both:
            return target.has_arc(a, b) if source.has_arc(x, y) else target.has_arc(b, a)
        return target.has_edge(a, b)

    def support(x, a, y, dom_y) -> bool:
        return any(b in dom_y and compatible(x, a, y, b) for b in target.adjacency[a])

    def propagate(doms, queue) -> bool:
        while queue:
            x, y = queue.popleft()
            dx = doms[x]
            removed = [a for a in dx if not support(x, a, y, doms[y])]
            if removed:
                doms[x] = dx - set(removed)
                if not doms[x]:
                    return False
                queue.extend((z, x) for z in source.adjacency[x] if z != y)
        return True

    arcs = deque((x, y) for x in source.vertices for y in source.adjacency[x])
    if any(not d for d in domains.values()) or not propagate(domains, arcs):
        return None

    order = _bfs_order(source)

    def search(i, doms):
        if i == len(order):
            return {v: next(iter(doms[v])) for v in order}
        x = order[i]
        for a in sorted(doms[x], key=tindex.__getitem__):
            trial = dict(doms)
            trial[x] = {a}
            if propagate(trial, deque((z, x) for z in source.adjacency[x])):
                found = search(i + 1, trial)
                if found is not None:
                    return found
        return None

    return search(0, domains)


# ---------------------------------------------------------------- gaps

def complement_components(L: FiniteGraph, B: Iterable) -> tuple:
    B = set(B)
    return L.induced(v for v in L.vertices if v not in B).components


def mgs(L: FiniteGraph, B: Iterable) -> float:
    """Least size of a component of L outside B; ``math.inf`` when B is everything."""
    comps = complement_components(L, B)
    return min((len(c) for c in comps), default=math.inf)


@dataclass(frozen=True)
class GapDecomposition:
    """One path component ``order`` (v_0 < v_m) and its cut indices.

    Consecutive pairs ``(cuts[2j], cuts[2j+1])`` bound the maximal runs inside B;
    a single-vertex run repeats its index. ``cuts`` is empty when the component
    misses B.
    """

    order: tuple
    cuts: tuple

    @property
    def runs(self) -> list:
        return list(zip(self.cuts[0::2], self.cuts[1::2]))

    @property
    def l(self) -> int:
        return len(self.cuts) - 1


def _path_order(g: FiniteGraph, comp: Sequence) -> tuple:
    """Enumerate a path component from its canonically smaller endpoint."""
    comp_set = set(comp)
    degs = {v: sum(1 for w in g.adjacency[v] if w in comp_set) for v in comp}
    edges = sum(degs.values()) // 2
    ends = [v for v in comp if degs[v] <= 1]
    if edges != len(comp) - 1 or any(d > 2 for d in degs.values()) or (len(comp) > 1 and len(ends) != 2):
        raise NotAPathError(f"component starting at {comp[0]!r} is not a finite path")
    start = min(ends, key=g.index.__getitem__) if ends else comp[0]
    order, prev = [start], None
    while len(order) < len(comp):
        cur = order[-1]
        nxt = next(w for w in g.adjacency[cur] if w in comp_set and w != prev)
        prev = cur
        order.append(nxt)
    return tuple(order)


def gap_decomposition(L: FiniteGraph, B: Iterable, Bp: Iterable) -> list:
    B, Bp = set(B), set(Bp)
    if not B <= Bp:
        raise ValueError("B must be contained in B'")
    sub = L.induced(Bp)
    out = []
    for comp in sub.components:
        order = _path_order(sub, comp)
        cuts = []
        i = 0
        while i < len(order):
            if order[i] in B:
                j = i
                while j + 1 < len(order) and order[j + 1] in B:
                    j += 1
                cuts += [i, j]
                i = j + 1
            else:
                i += 1
        out.append(GapDecomposition(order, tuple(cuts)))
    return out


@dataclass
class LayerSequence:
    layers: list
    gap_sizes: list
    boundary: list = field(default_factory=list)  # complement components touching a path end of L


def large_gap_layers(L: FiniteGraph, B: Iterable, horizon: int) -> LayerSequence:
    """B_n = B ∪ {x : the component of x outside B has fewer than n vertices}, n = 0..horizon."""
    B = frozenset(B)
    comps = complement_components(L, B)
    boundary = [c for c in comps if any(L.degree(v) < 2 for v in c)]
    layers, sizes = [], []
    for n in range(horizon + 1):
        layer = B.union(*(c for c in comps if len(c) < n))
        layers.append(layer)
        sizes.append(mgs(L, layer))
    return LayerSequence(layers, sizes, boundary)


# ---------------------------------------------------------------- extension

def _oscillate(anchor, other, steps: int) -> list:
    return [anchor if k % 2 == 0 else other for k in range(steps + 1)]


def _walk_on_path(order: Sequence, pos: Mapping, adjacency: Mapping, a, b, steps: int) -> list:
    gap = abs(pos[a] - pos[b])
    if steps < gap or (steps - gap) % 2:
        raise InfeasibleWalkError(f"no walk of {steps} steps from {a} to {b} at distance {gap}")
    lo, hi = pos[a], pos[b]
    step = 1 if hi >= lo else -1
    walk = [order[i] for i in range(lo, hi + step, step)]
    extra = steps - gap
    if extra:
        if len(walk) > 1:
            back = walk[-2]
        elif adjacency[b]:
            back = adjacency[b][0]
        else:
            raise InfeasibleWalkError(f"{b} is isolated; cannot pad the walk")
        walk += [back, b] * (extra // 2)
    return walk


def canonical_walk(target: FiniteGraph, a, b, steps: int) -> Walk:
    """The walk of exactly ``steps`` edges from a to b along a path graph.

    Follows the simple a-b path, then bounces across its final edge (or across
    b's least neighbour when a = b) until the length is used up.
    """
    pos = path_positions(target)
    order = sorted(pos, key=pos.__getitem__)
    vs = _walk_on_path(order, pos, target.adjacency, a, b, steps)
    return Walk(tuple(vs), tuple(target.direction(x, y) for x, y in zip(vs, vs[1:])))


def _check_phi(L: FiniteGraph, B: set, phi: Mapping, lower: FiniteGraph):
    if set(phi) != B:
        missing = B - set(phi)
        extra = set(phi) - B
        raise NotAHomomorphismError(f"phi domain differs from B (missing {len(missing)}, extra {len(extra)})")
    for x in phi:
        if x not in L:
            raise NotAHomomorphismError(f"{x!r} is not a source vertex")
        if phi[x] not in lower:
            raise NotAHomomorphismError(f"phi({x!r}) = {phi[x]!r} is not a vertex of the target stage")
    for e in L.edges:
        x, y = tuple(e)
        if x in B and y in B and not lower.has_edge(phi[x], phi[y]):
            raise NotAHomomorphismError(f"edge {x!r}-{y!r} maps to non-edge {phi[x]}-{phi[y]}")


def extend_hom(L: FiniteGraph, B: Iterable, Bp: Iterable, phi: Mapping, c: Sequence[int], n: int) -> dict:
    """Extend phi: L|B -> L_{c,n} to phi': L|B' -> L_{c,n+1} with pi ∘ phi' = phi on B.

    Each component of L|B' is walked from its smaller end. The first B-run is
    lifted into copy 0; at every later run the copy bit is kept when the gap
    length and the stage-n distance have equal parity and flipped otherwise.
    Gaps and free ends are filled by deterministic walks.
    """
    c = check_odd_sequence(c)
    B, Bp = set(B), set(Bp)
    if not B <= Bp:
        raise ValueError("B must be contained in B'")
    upper = build_stage(c, n + 1)
    lower = build_stage(c, n)
    _check_phi(L, B, phi, lower)
    length = len(upper) - 1
    if B:
        size = mgs(L, B)
        if not size > 2 * length:
            raise GapTooSmallError(
                f"mgs(B) = {size} must exceed 2*length(L_c,{n + 1}) = {2 * length}", size, 2 * length)
    decomposition = gap_decomposition(L, B, Bp)

    pos_up = path_positions(upper)
    order_up = sorted(pos_up, key=pos_up.__getitem__)
    pos_low = path_positions(lower)
    adj = upper.adjacency

    out = {}
    for piece in decomposition:
        order = piece.order
        if not piece.cuts:
            z = zero_vertex(n + 1)
            for v, w in zip(order, _oscillate(z, adj[z][0], len(order) - 1)):
                out[v] = w
            continue
        runs = piece.runs
        eps = 0
        prev_end = None
        for s, e in runs:
            if prev_end is not None:
                gap = s - prev_end
                same = abs(pos_low[phi[order[prev_end]]] - pos_low[phi[order[s]]]) % 2 == gap % 2
                if not same:
                    eps = 1 - eps
                start = out[order[prev_end]]
                end = phi[order[s]].extend(eps)
                walk = _walk_on_path(order_up, pos_up, adj, start, end, gap)
                for k in range(1, gap):
                    out[order[prev_end + k]] = walk[k]
            for i in range(s, e + 1):
                out[order[i]] = phi[order[i]].extend(eps)
            prev_end = e
        first, last = runs[0][0], runs[-1][1]
        anchor = out[order[first]]
        for k, w in enumerate(_oscillate(anchor, adj[anchor][0], first)):
            out[order[first - k]] = w
        anchor = out[order[last]]
        for k, w in enumerate(_oscillate(anchor, adj[anchor][0], len(order) - 1 - last)):
            out[order[last + k]] = w
    return out


def projection_allowed(phi: Mapping) -> dict:
    """Per-vertex image sets {phi(v)⌢0, phi(v)⌢1} expressing pi ∘ phi' = phi."""
    return {v: {w.extend(0), w.extend(1)} for v, w in phi.items()}


def projection_failures(phi_new: Mapping, phi_old: Mapping, c: Sequence[int], n: int) -> list:
    """Vertices where pi_{c,n,n+1}(phi_new) disagrees with phi_old (or phi_new is undefined)."""
    bad = []
    for v, w in phi_old.items():
        if v not in phi_new or project(c, n, n + 1, phi_new[v]) != w:
            bad.append(v)
    return bad


# ---------------------------------------------------------------- pipeline

@dataclass
class PipelineResult:
    c0: tuple
    c: tuple
    depth: int
    source: FiniteGraph
    ks: list
    maps: list
    assembled: dict
    mgs_values: list
    compatibility: dict

    @property
    def ok(self) -> bool:
        return all(not v for v in self.compatibility.values())


def level_below(L: FiniteGraph, k: int) -> frozenset:
    return frozenset(v for v in L.vertices if v.level < k)


def check_compatibility(source: FiniteGraph, maps: Sequence[Mapping], c: Sequence[int]) -> dict:
    """Failures of the assembly conditions: growing domains, homomorphisms, projection agreement."""
    failures = {"domains": [], "homomorphism": [], "projection": []}
    for n, phi in enumerate(maps):
        if not is_hom(phi, source, build_stage(c, n)):
            failures["homomorphism"].append(n)
        if n + 1 < len(maps):
            if not set(phi) <= set(maps[n + 1]):
                failures["domains"].append(n)
            if projection_failures(maps[n + 1], phi, c, n):
                failures["projection"].append(n)
    if maps and set(maps[-1]) != set(source.vertices):
        failures["domains"].append(len(maps) - 1)
    return failures


def pipeline_hom(c0: Sequence[int], c: Sequence[int], depth: int, stages: int | None = None) -> PipelineResult:
    """Build phi_0 ⊆ phi_1 ⊆ ... from the depth-``depth`` stage of c0 into the stages of c.

    Domains are the level sets B_k = {level < k} with k strictly increasing; the
    last target stage takes the whole truncation. Raises InsufficientGrowthError
    when no admissible k exists for some step.
    """
    c0, c = check_odd_sequence(c0), check_odd_sequence(c)
    N = len(c) - 1 if stages is None else stages
    if N >= len(c):
        raise ValueError(f"target has only {len(c)} stages")
    L = build_stage(c0, depth)
    everything = frozenset(L.vertices)

    def required(m):
        return 2 * (stage_size(c, m) - 1)

    if N == 0:
        z = zero_vertex(0)
        other = build_stage(c, 0).adjacency[z][0]
        dec = gap_decomposition(L, (), everything)[0]
        phi0 = dict(zip(dec.order, _oscillate(z, other, len(dec.order) - 1)))
        maps = [phi0]
        return PipelineResult(c0, c, depth, L, [depth + 1], maps, phi0, [math.inf],
                              check_compatibility(L, maps, c))

    ks, maps, sizes = [0], [{}], [math.inf]
    for n in range(N):
        if n + 1 == N:
            k_next = depth + 1
            size = math.inf
        else:
            need = required(n + 2)
            best, k_next, size = None, None, None
            for k in range(ks[-1] + 1, depth + 1):
                s = mgs(L, level_below(L, k))
                best = s if best is None else max(best, s)
                if s > need:
                    k_next, size = k, s
                    break
            if k_next is None:
                raise InsufficientGrowthError(n + 1, need, best)
        B = level_below(L, ks[-1])
        Bp = level_below(L, k_next)
        maps.append(extend_hom(L, B, Bp, maps[-1], c, n))
        ks.append(k_next)
        sizes.append(size)
    return PipelineResult(c0, c, depth, L, ks, maps, dict(maps[-1]), sizes,
                          check_compatibility(L, maps, c))


def pullback_orientation(source: FiniteGraph, target: FiniteGraph, phi: Mapping) -> FiniteGraph:
    """Orient each source edge the way its image is oriented, making phi orientation-preserving."""
    if not target.oriented:
        raise ValueError("target must be oriented")
    arcs = []
    for x, y in source.edge_list():
        a, b = phi[x], phi[y]
        if target.has_arc(a, b):
            arcs.append((x, y))
        elif target.has_arc(b, a):
            arcs.append((y, x))
        else:
            raise NotAHomomorphismError(f"edge {x!r}-{y!r} maps to non-edge")
    return source.with_orientation(arcs)
