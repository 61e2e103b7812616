"""Growth condition (*), P_t truncations and didistance interval/separation checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from .coloring import non_onto_two_color
from .errors import NotAHomomorphismError, PreconditionError
from .graph import OddPair, Vertex
from .homomorphisms import PartialHom, hom_violations
from .metrics import didistance_set, potentials
from .stages import build_oriented_stage, sibling_pairs


# ---------------------------------------------------------------- growth conditions

@dataclass
class StarReport:
    holds: bool
    first_violation: int | None = None
    lhs: int | None = None
    rhs: int | None = None
    rows: list = field(default_factory=list)  # (i, lhs, rhs) per stage

    def as_dict(self) -> dict:
        return {
            "holds": self.holds,
            "first_violation": self.first_violation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "rows": [list(r) for r in self.rows],
        }


def _evaluate(sigmas: Sequence[int], bound: Callable[[int, Sequence[int]], int]) -> StarReport:
    rows = [(i, s, bound(i, sigmas)) for i, s in enumerate(sigmas)]
    for i, lhs, rhs in rows:
        if not lhs > rhs:
            return StarReport(False, i, lhs, rhs, rows)
    return StarReport(True, rows=rows)


def star_bound(i: int, sigmas: Sequence[int]) -> int:
    """8 * sum_{j<i} 2^{i-j} |Σ(d(j))|."""
    return 8 * sum(2 ** (i - j) * abs(sigmas[j]) for j in range(i))


def check_star_profile(sigmas: Sequence[int]) -> StarReport:
    return _evaluate(list(sigmas), star_bound)


def check_star(b: OddPair) -> StarReport:
    """Σ(d(i)) > 8 * sum_{j<i} 2^{i-j} |Σ(d(j))| at every stage; reports the first failure."""
    return check_star_profile(b.sigmas)


def default_growth(i: int) -> int:
    """f(i) = 8 * 2^i, large enough for the f-form to imply (*)."""
    return 8 * 2 ** i


def check_growth_profile(sigmas: Sequence[int], f: Sequence[int]) -> StarReport:
    if len(f) < len(sigmas):
        raise ValueError(f"f has {len(f)} entries, need {len(sigmas)}")
    return _evaluate(list(sigmas), lambda i, s: f[i] * sum(abs(x) for x in s[:i]))


def check_growth(b: OddPair, f: Sequence[int]) -> StarReport:
    """Σ(d(i)) > f(i) * sum_{j<i} |Σ(d(j))| at every stage."""
    return check_growth_profile(b.sigmas, f)


def _least_odd_above(bound: int) -> int:
    """Least odd Σ >= 3 with Σ > bound."""
    s = bound + 1 if bound % 2 == 0 else bound + 2
    return max(s, 3)


def gen_star(stages: int, strategy: str = "minimal-all-plus", f: Sequence[int] | None = None) -> OddPair:
    """All-plus odd-pair whose c(i) are the least odd values meeting the chosen inequality."""
    if stages < 1:
        raise ValueError("stages must be >= 1")
    if strategy == "minimal-all-plus":
        bound = star_bound
    elif strategy == "f-form":
        f = list(f) if f is not None else [default_growth(i) for i in range(stages)]
        if len(f) < stages:
            raise ValueError(f"f has {len(f)} entries, need {stages}")
        bound = lambda i, s: f[i] * sum(abs(x) for x in s[:i])  # noqa: E731
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    sigmas: list = []
    for i in range(stages):
        sigmas.append(_least_odd_above(bound(i, sigmas)))
    return OddPair.all_plus(s - 2 for s in sigmas)


# ---------------------------------------------------------------- P_t truncations

@dataclass(frozen=True)
class PtTruncation:
    t: tuple
    depth: int
    points: tuple


def pt_truncation(t: Sequence[int], b: OddPair, depth: int) -> PtTruncation:
    """Level-0, head-0 vertices of stage ``depth`` whose tail vanishes wherever t does."""
    t = tuple(int(x) for x in t)
    if any(x not in (0, 1) for x in t):
        raise ValueError("t must be a bit sequence")
    if depth < 0 or depth > len(b.c) - 1:
        raise ValueError(f"depth {depth} outside 0..{len(b.c) - 1}")
    if depth > len(t):
        raise ValueError(f"t has {len(t)} bits, depth {depth} needs at least that many")
    choices = [(0, 1) if t[i] else (0,) for i in range(depth)]
    points = tuple(Vertex(0, 0, tail) for tail in product(*choices))
    return PtTruncation(t[:depth], depth, points)


def separation_coordinate(x: Vertex, y: Vertex) -> int:
    """Largest tail coordinate where x and y differ."""
    diffs = [i for i, (a, b) in enumerate(zip(x.tail, y.tail)) if a != b]
    if not diffs:
        raise ValueError("vertices have equal tails")
    return diffs[-1]


def raw_bound(sigmas: Sequence[int], s: int) -> int:
    """sum_{j<s} 2^{s-j} |Σ(d(j))|."""
    return sum(2 ** (s - j) * abs(sigmas[j]) for j in range(s))


@dataclass
class IntervalReport:
    ok: bool
    mode: str
    pairs: list = field(default_factory=list)     # (x, y, i*, stage, didist)
    failures: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "mode": self.mode,
            "pairs_checked": len(self.pairs),
            "evidence": [[str(x), str(y), i, s, k] for x, y, i, s, k in self.pairs],
            "failures": [list(map(str, f)) for f in self.failures],
        }


def verify_interval(b: OddPair, t: Sequence[int], depth: int, mode: str | None = None) -> IntervalReport:
    """Check the didistance estimate for every pair of the P_t truncation.

    A pair whose tails last differ at coordinate i separates at stage s = i + 1.
    Raw mode: ||didist| - Σ(d(s))| <= sum_{j<s} 2^{s-j}|Σ(d(j))|. Tight mode
    also requires |didist| in [Σ(d(s))/2, 2Σ(d(s))]; it is the default when (*) holds.
    """
    if mode is None:
        mode = "tight" if check_star(b).holds else "raw"
    if mode not in ("raw", "tight"):
        raise ValueError(f"unknown mode {mode!r}")
    P = pt_truncation(t, b, depth)
    sigmas = b.sigmas
    pot = potentials(build_oriented_stage(b, depth))
    report = IntervalReport(True, mode)
    for x, y in combinations(P.points, 2):
        i = separation_coordinate(x, y)
        s = i + 1
        k = pot[y] - pot[x]
        report.pairs.append((x, y, i, s, k))
        if P.t[i] != 1:
            report.failures.append((x, y, "t(i*) = 0"))
        if abs(abs(k) - sigmas[s]) > raw_bound(sigmas, s):
            report.failures.append((x, y, "raw bound", k))
        if mode == "tight":
            lo, hi = Fraction(sigmas[s], 2), Fraction(2 * sigmas[s])
            if not lo <= abs(k) <= hi:
                report.failures.append((x, y, "interval", k))
    report.ok = not report.failures
    return report


@dataclass
class SeparationReport:
    ok: bool
    vacuous: bool
    i_star: int
    i0: Fraction | None
    checked: int = 0
    failures: list = field(default_factory=list)
    sets: tuple = ()

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "vacuous": self.vacuous,
            "i_star": self.i_star,
            "i0": None if self.i0 is None else str(self.i0),
            "pairs_checked": self.checked,
            "failures": [list(map(str, f)) for f in self.failures],
            "didistance_sets": [sorted(s) for s in self.sets],
        }


def verify_separation(b: OddPair, t: Sequence[int], t2: Sequence[int], depth: int) -> SeparationReport:
    """Cross-ratios of large didistances from P_t and P_t2 avoid [1/4, 4].

    i* is one past the largest coordinate where both t and t2 are 1 (0 when
    none), and the threshold is i0 = Σ(d(i* + 1))/2, the lower end of the first
    interval both sets can no longer share.
    """
    t, t2 = tuple(t), tuple(t2)
    if t == t2:
        raise PreconditionError("t and t2 must differ")
    star = check_star(b)
    if not star.holds:
        raise PreconditionError(f"pair fails (*) at stage {star.first_violation}")
    common = [i for i, (a, c) in enumerate(zip(t, t2)) if a and c]
    i_star = common[-1] + 1 if common else 0
    g = build_oriented_stage(b, depth)
    D = didistance_set(g, pt_truncation(t, b, depth).points)
    D2 = didistance_set(g, pt_truncation(t2, b, depth).points)
    if i_star + 1 > depth:
        return SeparationReport(True, True, i_star, None, sets=(D, D2))
    i0 = Fraction(b.sigmas[i_star + 1], 2)
    report = SeparationReport(True, False, i_star, i0, sets=(D, D2))
    big, big2 = [k for k in D if k >= i0], [k for k in D2 if k >= i0]
    for k, k2 in product(big, big2):
        report.checked += 1
        if Fraction(1, 4) <= Fraction(k, k2) <= 4:
            report.failures.append((k, k2))
    report.vacuous = report.checked == 0
    report.ok = not report.failures
    return report


def sibling_didistance_failures(b: OddPair, n: int) -> list:
    """Sibling pairs of the oriented stage n whose didistance is not exactly Σ(d(n)) or leaves the interval."""
    if n == 0:
        return []
    pot = potentials(build_oriented_stage(b, n))
    sigma = b.sigmas[n]
    bad = []
    for x, y in sibling_pairs(b.c, n):
        k = pot[y] - pot[x]
        if k != sigma or not Fraction(sigma, 2) <= abs(k) <= 2 * sigma:
            bad.append((x, y, k))
    return bad


# ---------------------------------------------------------------- pullback audit

@dataclass
class PullbackReport:
    B: frozenset
    containment: bool
    complete: bool
    M: frozenset
    preimage_containment: bool
    source_set: frozenset = frozenset()
    target_set: frozenset = frozenset()

    def as_dict(self) -> dict:
        return {
            "B_size": len(self.B),
            "M_size": len(self.M),
            "containment": self.containment,
            "preimage_containment": self.preimage_containment,
            "complete": self.complete,
            "source_didistances": sorted(self.source_set),
            "target_didistances": sorted(self.target_set),
        }


def distance_set_pullback(phi: PartialHom, C: Iterable) -> PullbackReport:
    """B = phi^{-1}(C) minus the non-onto part M, and whether D(B) ⊆ D(C).

    ``complete`` records whether C meets the image of every source component.
    """
    source, target = phi.source, phi.target
    if not (source.oriented and target.oriented):
        raise PreconditionError("pullback audit needs oriented source and target")
    if set(phi.mapping) != set(source.vertices):
        raise PreconditionError("phi must be total")
    if hom_violations(phi.mapping, source, target):
        raise NotAHomomorphismError("phi does not preserve oriented edges")
    C = frozenset(C)
    M, _ = non_onto_two_color(source.symmetrize(), target.symmetrize(), phi.mapping)
    pre = frozenset(v for v in source.vertices if phi[v] in C)
    B = pre - M
    complete = all(any(phi[v] in C for v in comp) for comp in source.components)
    DC = didistance_set(target, C)
    DB = didistance_set(source, B)
    Dpre = didistance_set(source, pre)
    return PullbackReport(B, DB <= DC, complete, M, Dpre <= DC, DB, DC)
