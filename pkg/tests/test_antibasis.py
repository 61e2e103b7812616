import random
from fractions import Fraction
from itertools import product

import pytest

from lzero.antibasis import (
    check_growth,
    check_growth_profile,
    check_star,
    check_star_profile,
    default_growth,
    distance_set_pullback,
    gen_star,
    pt_truncation,
    sibling_didistance_failures,
    verify_interval,
    verify_separation,
)
from lzero.errors import PreconditionError
from lzero.graph import FiniteGraph, OddPair, Vertex
from lzero.homomorphisms import PartialHom, pipeline_hom, pullback_orientation
from lzero.stages import build_oriented_stage

from conftest import oracle_didist, oracle_potentials


def test_star_examples():
    assert check_star_profile((3, 49, 881)).holds
    r = check_star_profile((3, 47, 881))
    assert not r.holds and r.first_violation == 1 and (r.lhs, r.rhs) == (47, 48)
    r = check_star_profile((-1,))
    assert not r.holds and r.first_violation == 0
    assert check_star_profile(()).holds


def test_growth_examples():
    assert check_growth_profile((3, 1, 5), [0, 0, 0]).holds
    r = check_growth_profile((3, 49, 881), [default_growth(i) for i in range(3)])
    assert not r.holds and r.first_violation == 2 and r.rhs == 1664
    assert check_growth(OddPair((), ()), []).holds
    with pytest.raises(ValueError):
        check_growth_profile((3, 5), [1])


def test_gen_star_examples():
    assert gen_star(3).c == (1, 47, 879) and gen_star(3).sigmas == (3, 49, 881)
    assert gen_star(1).c == (1,)
    assert gen_star(2).c == (1, 47)
    with pytest.raises(ValueError):
        gen_star(0)


@pytest.mark.parametrize("strategy", ["minimal-all-plus", "f-form"])
def test_gen_star_passes_its_checker_and_is_minimal(strategy):
    # values roughly square each stage, so explicit words stop fitting in memory past four
    for k in range(1, 5):
        b = gen_star(k, strategy)
        checker = check_star if strategy == "minimal-all-plus" else \
            (lambda p: check_growth(p, [default_growth(i) for i in range(k)]))
        assert checker(b).holds
        assert check_star(b).holds  # the f-form with f(i) = 8*2^i implies (*)
        for i in range(1, k):
            c = list(b.c)
            c[i] -= 2
            r = checker(OddPair.all_plus(c))
            assert not r.holds and r.first_violation == i


def test_pt_truncation_examples():
    b = gen_star(3)
    assert pt_truncation((0, 0), b, 2).points == (Vertex(0, 0, (0, 0)),)
    assert len(pt_truncation((1, 1), b, 2).points) == 4
    assert set(pt_truncation((1, 0), b, 2).points) == {Vertex(0, 0, (0, 0)), Vertex(0, 0, (1, 0))}
    with pytest.raises(ValueError):
        pt_truncation((1, 1, 1), b, 3)
    with pytest.raises(ValueError):
        pt_truncation((1,), b, 2)


def test_didist_formula_on_level_zero_points():
    """didist between head-0 level-0 points is a signed sum of Σ(d(i+1)) over differing coordinates."""
    rng = random.Random(8)
    c = (1, 3, 5, 3)
    b = OddPair(c, tuple(tuple(rng.choice((1, -1)) for _ in range(ci + 2)) for ci in c))
    g = build_oriented_stage(b, 3)
    pot = oracle_potentials(g)
    for r in product((0, 1), repeat=3):
        x, y = Vertex(0, 0, (0, 0, 0)), Vertex(0, 0, r)
        assert pot[y] - pot[x] == sum(bit * b.sigmas[i + 1] for i, bit in enumerate(r))


def test_interval_stage_one_example():
    b = OddPair.all_plus((1, 1))
    for mode in ("raw", "tight"):
        r = verify_interval(b, (1,), 1, mode)
        assert r.ok and r.pairs[0][-1] == 3


def test_interval_singleton_is_vacuous():
    r = verify_interval(gen_star(3), (0, 0), 2)
    assert r.ok and r.pairs == []


def test_interval_minimal_pair_depth_two():
    b = gen_star(3)
    r = verify_interval(b, (1, 1), 2)
    assert r.mode == "tight" and r.ok
    by_stage = {}
    for x, y, i, s, k in r.pairs:
        assert k == oracle_didist(build_oriented_stage(b, 2), x, y)
        by_stage.setdefault(s, set()).add(abs(k))
    assert by_stage[1] == {49} and by_stage[2] <= {881 - 49, 881, 881 + 49}


def test_interval_raw_mode_without_star():
    rng = random.Random(3)
    for _ in range(10):
        c = tuple(rng.choice((1, 3, 5)) for _ in range(4))
        b = OddPair(c, tuple(tuple(rng.choice((1, -1)) for _ in range(ci + 2)) for ci in c))
        r = verify_interval(b, (1, 1, 1), 3, "raw")
        assert r.ok


def test_separation_examples():
    b = gen_star(3)
    r = verify_separation(b, (1, 0), (0, 1), 2)
    assert r.ok and not r.vacuous and r.i0 == Fraction(49, 2)
    assert r.sets == ({-49, 0, 49}, {-881, 0, 881})
    with pytest.raises(PreconditionError):
        verify_separation(b, (1, 0), (1, 0), 2)
    r = verify_separation(b, (1, 1), (1, 1, 0)[:2] + (0,), 1)
    assert r.vacuous
    with pytest.raises(PreconditionError):
        verify_separation(OddPair.all_plus((1, 1)), (1,), (0,), 1)


def test_sibling_didistance_is_exactly_sigma():
    rng = random.Random(6)
    b = gen_star(4)
    for n in range(4):
        assert sibling_didistance_failures(b, n) == []
    c = (1, 3, 3, 5)
    rb = OddPair(c, tuple(tuple(rng.choice((1, -1)) for _ in range(ci + 2)) for ci in c))
    g = build_oriented_stage(rb, 3)
    pot = oracle_potentials(g)
    x, y = Vertex(1, 2, (0, 0)), Vertex(1, 2, (0, 1))
    assert pot[y] - pot[x] == rb.sigmas[3]


def test_pullback_identity():
    g = build_oriented_stage(OddPair.all_plus((1, 1)), 1)
    C = set(g.vertices[:3])
    r = distance_set_pullback(PartialHom({v: v for v in g.vertices}, g, g), C)
    assert r.containment and r.complete and r.B == frozenset(C) and r.M == frozenset()


def test_pullback_flags_incomplete_sets():
    src = FiniteGraph.from_edges([0, 1, 2, 3], [(0, 1), (2, 3)], orientation=True)
    tgt = FiniteGraph.from_edges(["a", "b", "c", "d"], [("a", "b"), ("c", "d")], orientation=True)
    phi = {0: "a", 1: "b", 2: "c", 3: "d"}
    r = distance_set_pullback(PartialHom(phi, src, tgt), {"a"})
    assert not r.complete and r.containment


def test_pullback_on_pipeline_output():
    res = pipeline_hom((1, 47, 879), (1, 1, 3), 2)
    target = build_oriented_stage(OddPair.all_plus((1, 1, 3)), 2)
    source = pullback_orientation(res.source, target, res.assembled)
    layer = {res.assembled[v] for v in res.maps[1]}
    image = {res.assembled[v] for v in res.maps[1]} | {v for v in target.vertices if v.level == 0}
    for C in (layer, image):
        r = distance_set_pullback(PartialHom(res.assembled, source, target), C)
        assert r.containment and r.preimage_containment and r.complete
