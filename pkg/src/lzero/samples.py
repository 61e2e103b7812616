"""Seeded random instances: forests, walks, odd-pairs and extension problems."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import FiniteGraph, OddPair, check_odd_sequence
from .metrics import Walk
from .stages import build_stage, stage_size

DEFAULT_SEED = 20240601


def rng_from(seed: int | None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


def random_forest(rng: random.Random, max_vertices: int = 40, oriented: bool = True,
                  new_tree_prob: float = 0.1) -> FiniteGraph:
    """Each vertex i > 0 either starts a new tree or attaches to a random earlier vertex."""
    n = rng.randint(1, max_vertices)
    arcs = []
    for i in range(1, n):
        if rng.random() < new_tree_prob:
            continue
        j = rng.randrange(i)
        arcs.append((i, j) if rng.random() < 0.5 else (j, i))
    if oriented:
        return FiniteGraph.from_edges(range(n), arcs, orientation=True)
    return FiniteGraph.from_edges(range(n), arcs)


def random_walk(rng: random.Random, g: FiniteGraph, length: int, start=None) -> Walk:
    """A random walk (vertices may repeat); stops early at an isolated vertex."""
    x = rng.choice(g.vertices) if start is None else start
    vs = [x]
    for _ in range(length):
        ns = g.adjacency[vs[-1]]
        if not ns:
            break
        vs.append(rng.choice(ns))
    return Walk(tuple(vs), tuple(g.direction(a, b) for a, b in zip(vs, vs[1:])))


def random_odd_pair(rng: random.Random, c) -> OddPair:
    c = check_odd_sequence(c)
    return OddPair(c, tuple(tuple(rng.choice((-1, 1)) for _ in range(ci + 2)) for ci in c))


def random_odd_sequence(rng: random.Random, length: int, max_value: int = 7) -> tuple:
    return tuple(rng.randrange(1, max_value + 1, 2) for _ in range(length))


def random_subset(rng: random.Random, items, p: float = 0.3) -> frozenset:
    return frozenset(v for v in items if rng.random() < p)


@dataclass
class ExtensionInstance:
    L: FiniteGraph
    B: frozenset
    Bp: frozenset
    phi: dict
    c: tuple
    n: int


def _target_walk(rng: random.Random, target: FiniteGraph, steps: int) -> list:
    x = rng.choice(target.vertices)
    out = [x]
    for _ in range(steps):
        out.append(rng.choice(target.adjacency[out[-1]]))
    return out


def random_extension_instance(rng: random.Random, small: bool = False) -> ExtensionInstance:
    """An instance meeting every precondition of the extension step.

    Each source component is a path laid out as free ends and gaps of more than
    2*length(L_{c,n+1}) vertices between B-runs. B' adds random stretches of the
    gaps next to the runs. ``small`` keeps the source at <= 20 vertices.
    """
    if small:
        c, n = (1, 1), 0
    else:
        c, n = rng.choice([((1, 1), 0), ((1, 3), 0), ((1, 1, 3), 1), ((1, 1, 1), 1)])
    lower = build_stage(c, n)
    min_gap = 2 * (stage_size(c, n + 1) - 1) + 1
    budget = 20 if small else 10 ** 9

    vertices, edges, B, Bp, phi = [], [], set(), set(), {}
    components = 1 if small else rng.randint(1, 3)
    for _ in range(components):
        layout = []  # (kind, size)
        runs = rng.randint(0, 1 if small else 3)
        if runs == 0:
            size = min_gap + rng.randint(0, 0 if small else 6)
            layout.append(("free", size))
        else:
            if not small and rng.random() < 0.4:
                layout.append(("free", min_gap + rng.randint(0, 4)))
            for r in range(runs):
                if r:
                    layout.append(("gap", min_gap + rng.randint(0, 0 if small else 6)))
                layout.append(("run", rng.randint(1, 4)))
            if not small and rng.random() < 0.4:
                layout.append(("free", min_gap + rng.randint(0, 4)))
        if small and runs == 1 and rng.random() < 0.7:
            layout += [("gap", min_gap), ("run", rng.randint(1, 3))]
        total = sum(s for _, s in layout)
        if len(vertices) + total > budget:
            break
        start = len(vertices)
        path = list(range(start, start + total))
        vertices += path
        edges += list(zip(path, path[1:]))
        i = 0
        for idx, (kind, size) in enumerate(layout):
            seg = path[i:i + size]
            if kind == "run":
                B.update(seg)
                Bp.update(seg)
                for v, w in zip(seg, _target_walk(rng, lower, size - 1)):
                    phi[v] = w
            else:
                left = idx > 0 and layout[idx - 1][0] == "run"
                right = idx + 1 < len(layout) and layout[idx + 1][0] == "run"
                if rng.random() < 0.5:
                    Bp.update(seg)
                else:
                    if left:
                        Bp.update(seg[:rng.randint(0, size)])
                    if right:
                        Bp.update(seg[size - rng.randint(0, size):])
            i += size
    L = FiniteGraph.from_edges(vertices, edges)
    return ExtensionInstance(L, frozenset(B), frozenset(Bp), phi, c, n)
