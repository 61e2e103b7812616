"""Two-colorings of finite graphs: a bipartiteness oracle and parity-based constructions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import NotAHomomorphismError, NotBipartiteError, ParityViolationError, PreconditionError
from .graph import FiniteGraph
from .metrics import distances_from, potentials


def is_proper(g: FiniteGraph, coloring: Mapping) -> bool:
    """No edge of g with both ends colored has equal colors."""
    for e in g.edges:
        u, v = tuple(e)
        if u in coloring and v in coloring and coloring[u] == coloring[v]:
            return False
    return True


def saturation(g: FiniteGraph, A: Iterable) -> tuple:
    """[A]: every vertex in a component that meets A, in canonical order."""
    hit = {g.component_of[a] for a in A}
    return tuple(v for v in g.vertices if g.component_of[v] in hit)


def _bfs_tree(g: FiniteGraph, root):
    parent, depth = {root: None}, {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in parent:
                parent[y], depth[y] = x, depth[x] + 1
                queue.append(y)
    return parent, depth


def _tree_walk(parent, depth, x, y) -> list:
    """x-y walk through the BFS tree (via the lowest common ancestor)."""
    left, right = [x], [y]
    while left[-1] != right[-1]:
        if depth[left[-1]] >= depth[right[-1]]:
            left.append(parent[left[-1]])
        else:
            right.append(parent[right[-1]])
    return left + right[-2::-1]


def _odd_walk(g: FiniteGraph, parent, depth, x, y, u, v) -> list:
    """Walk x ~> u, across the same-parity edge u-v, then v ~> y; its length has odd parity shift."""
    return _tree_walk(parent, depth, x, u) + _tree_walk(parent, depth, v, y)


def two_color(g: FiniteGraph) -> dict:
    """A proper 2-coloring, BFS-parity from the least vertex of each component.

    Raises NotBipartiteError carrying an odd closed walk when none exists.
    """
    coloring = {}
    for comp in g.components:
        parent, depth = _bfs_tree(g, comp[0])
        for v in comp:
            coloring[v] = depth[v] % 2
        for v in comp:
            for w in g.adjacency[v]:
                if depth[v] % 2 == depth[w] % 2:
                    cycle = _tree_walk(parent, depth, v, w)
                    cycle = cycle + [v]
                    raise NotBipartiteError(cycle)
    return coloring


def parity_two_color(g: FiniteGraph, A: Iterable) -> dict:
    """Color [A] by the parity of the distance to A.

    Succeeds when every walk between members of A has even length. Otherwise
    raises ParityViolationError with x, y in A and an odd-length x-y walk.
    """
    A = g.sorted(set(A))
    members = set(A)
    coloring = {}
    for comp_index in sorted({g.component_of[a] for a in A}):
        comp = g.components[comp_index]
        root = next(a for a in A if g.component_of[a] == comp_index)
        parent, depth = _bfs_tree(g, root)
        for v in comp:
            for w in g.adjacency[v]:
                if depth[v] % 2 == depth[w] % 2:
                    walk = _odd_walk(g, parent, depth, root, root, v, w)
                    raise ParityViolationError(root, root, walk)
        for a in A:
            if g.component_of[a] == comp_index and depth[a] % 2:
                raise ParityViolationError(root, a, _tree_walk(parent, depth, root, a))
        for v in comp:
            coloring[v] = depth[v] % 2
    assert all(coloring[a] == 0 for a in members)
    return coloring


@dataclass
class Peel:
    """One round of the bounded-dilength recursion."""

    n: int
    sign: int
    layer: frozenset          # A_{n,sign}
    opposite: frozenset       # members also reaching A by an odd path of the opposite sign
    rest: frozenset           # layer members outside the saturation of ``opposite``


@dataclass
class BoundedColoring:
    coloring: dict
    peels: list = field(default_factory=list)
    base: frozenset = frozenset()


def _odd_dilengths(g: FiniteGraph, A: list, pot: dict, parity: dict) -> dict:
    """For each a in A, the dilengths of odd-length tree paths from a to other members of A."""
    out = {a: set() for a in A}
    for i, x in enumerate(A):
        for y in A[i + 1:]:
            if g.component_of[x] != g.component_of[y] or parity[x] == parity[y]:
                continue
            k = pot[y] - pot[x]
            out[x].add(k)
            out[y].add(-k)
    return out


def bounded_dilength_two_color(g: FiniteGraph, A: Iterable) -> BoundedColoring:
    """2-color [A] in an oriented forest by peeling off the extreme odd dilengths.

    n is the largest |dilength| of an odd path between members of A. The members
    realising +n or -n are colored first (split by whether they also reach A
    with the opposite sign), and the recursion continues on what remains.
    """
    pot = potentials(g)
    parity = {}
    for comp in g.components:
        _, depth = _bfs_tree(g, comp[0])
        parity.update({v: d % 2 for v, d in depth.items()})

    result = BoundedColoring({})
    remaining = g.sorted(set(A))
    colored_components: set = set()

    def claim(sub: Iterable):
        sub = [a for a in sub if g.component_of[a] not in colored_components]
        if not sub:
            return
        part = parity_two_color(g, sub)
        result.coloring.update(part)
        colored_components.update(g.component_of[a] for a in sub)

    while remaining:
        odd = _odd_dilengths(g, remaining, pot, parity)
        n = max((abs(k) for ks in odd.values() for k in ks), default=0)
        if n == 0:
            result.base = frozenset(remaining)
            claim(remaining)
            break
        for sign in (1, -1):
            layer = [a for a in remaining if sign * n in odd[a]]
            opposite = [a for a in layer if any(k * sign < 0 for k in odd[a])]
            claim(opposite)
            rest = [a for a in layer if g.component_of[a] not in colored_components]
            claim(rest)
            result.peels.append(Peel(n, sign, frozenset(layer), frozenset(opposite), frozenset(rest)))
        remaining = [a for a in remaining if g.component_of[a] not in colored_components]
    return result


def non_onto_two_color(L: FiniteGraph, L2: FiniteGraph, phi: Mapping) -> tuple:
    """(M, coloring) for the components of L not mapped onto their target component.

    For x in M, y_x is the least vertex outside phi's image on x's component that
    is adjacent to that image; x gets color 0 iff dist(phi(x), y_x) is even.
    """
    for v in L.vertices:
        if v not in phi:
            raise PreconditionError(f"phi is not total: {v!r} unmapped")
        if phi[v] not in L2:
            raise NotAHomomorphismError(f"phi({v!r}) = {phi[v]!r} is not a target vertex")
    for e in L.edges:
        u, v = tuple(e)
        if not L2.has_edge(phi[u], phi[v]):
            raise NotAHomomorphismError(f"edge {u!r}-{v!r} maps to non-edge {phi[u]!r}-{phi[v]!r}")

    M, coloring = set(), {}
    for comp in L.components:
        image = {phi[v] for v in comp}
        target = L2.components[L2.component_of[phi[comp[0]]]]
        if len(image) == len(target):
            continue
        boundary = [y for y in target if y not in image and any(z in image for z in L2.adjacency[y])]
        y_x = boundary[0]
        dists = distances_from(L2, y_x)
        for v in comp:
            coloring[v] = dists[phi[v]] % 2
        M.update(comp)
    return frozenset(M), coloring
