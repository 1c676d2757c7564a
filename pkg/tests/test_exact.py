import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubicdecomp.errors import EdgeNotInGraph
from cubicdecomp.exact import Outcome, SolverConfig, enumerate_decompositions, solve
from cubicdecomp.graph import build_graph, find_bridges, named_graph, random_cubic, relabel
from cubicdecomp.model import FAMILIES, FULL, MarkedInstance, Part, Shape, verify, verify_marked
from oracles import bridged_cubic, brute_decompositions, random_degree23
from test_graph import small_graphs

FAMILY_LIST = sorted(FAMILIES)


def test_prism_claw_triangle_is_no():
    res = solve(named_graph("prism"), FAMILIES["k13k3"])
    assert res.outcome is Outcome.NO_DECOMPOSITION and res.decomposition is None


def test_k4_full():
    res = solve(named_graph("k4"), FULL)
    assert res.found and verify(named_graph("k4"), res.decomposition).valid


def test_net_pattern_is_forced():
    net = named_graph("net")
    pendants = frozenset(e for e in net.edges if min(net.degree(e[0]), net.degree(e[1])) == 1)
    inst = MarkedInstance(net, pendants)
    tri = {v for v in range(net.n) if net.degree(v) == 3}
    sols = list(enumerate_decompositions(net, FAMILIES["k13p4"], pendants))
    assert sols and solve(net, FAMILIES["k13p4"], pendants).found
    for d in sols:
        assert verify_marked(inst, d, FAMILIES["k13p4"]).valid
        claws = [p for p in d if p.shape is Shape.CLAW]
        assert len(claws) == 1 and len(d) == 2 and claws[0].vertices[0] in tri
    # one solution per choice of claw centre
    assert len(sols) == 3


def test_budget_exceeded_is_distinct():
    g = random_cubic(24, 5)
    res = solve(g, FAMILIES["k13p4"], cfg=SolverConfig(node_budget=3))
    assert res.outcome is Outcome.BUDGET_EXCEEDED and not res.found


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(node_budget=0)
    with pytest.raises(ValueError):
        SolverConfig(time_budget=-1)


def test_empty_marks_differ_from_none():
    tri = named_graph("triangle")
    assert solve(tri, FULL).found
    assert not solve(tri, FULL, marks=()).found
    assert solve(tri, FULL, marks=[(0, 1)]).found


def test_bad_mark():
    with pytest.raises(EdgeNotInGraph):
        solve(named_graph("k33"), FULL, marks=[(0, 1)])


def test_k4_enumeration_matches_brute_force():
    g = named_graph("k4")
    mine = {frozenset(d) for d in enumerate_decompositions(g, FULL)}
    assert mine == set(brute_decompositions(g, FULL))


@st.composite
def marked_small(draw):
    g = draw(small_graphs(8))
    if g.m > 15:
        g = build_graph(g.n, g.edges[:15])
    use_marks = draw(st.booleans())
    marks = frozenset(draw(st.sets(st.sampled_from(g.edges)))) if use_marks and g.edges else None
    return g, marks


@given(marked_small(), st.sampled_from(FAMILY_LIST))
def test_agrees_with_brute_force(inst, family):
    g, marks = inst
    allowed = FAMILIES[family]
    brute = brute_decompositions(g, allowed, marks)
    res = solve(g, allowed, marks)
    assert res.found == bool(brute)
    if res.found:
        check = verify(g, res.decomposition, allowed) if marks is None else verify_marked(
            MarkedInstance(g, marks), res.decomposition, allowed
        )
        assert check.valid
        assert {frozenset(d) for d in enumerate_decompositions(g, allowed, marks)} == set(brute)


@given(st.integers(2, 6), st.integers(0, 10**6), st.sampled_from(FAMILY_LIST), st.randoms(use_true_random=False))
def test_relabel_invariance(half, seed, family, rnd):
    g = random_cubic(2 * half, seed)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    allowed = FAMILIES[family]
    assert solve(g, allowed).found == solve(relabel(g, perm), allowed).found


def test_optional_edges():
    # a claw plus one extra optional edge hanging off a leaf
    g = build_graph(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    sols = list(enumerate_decompositions(g, FAMILIES["k13p4"], optional=[(3, 4)]))
    assert [Part.claw(0, 1, 2, 3)] in sols
    assert all(len(d) == 1 for d in sols)


def test_parallel_matches_serial():
    for seed in range(3):
        g = random_cubic(12, seed)
        for family in ("k13p4", "all", "k13k3"):
            serial = solve(g, FAMILIES[family])
            par = solve(g, FAMILIES[family], cfg=SolverConfig(workers=2))
            assert serial.outcome == par.outcome
            if par.found:
                assert verify(g, par.decomposition, FAMILIES[family]).valid
            again = solve(g, FAMILIES[family], cfg=SolverConfig(workers=3))
            assert again.decomposition == par.decomposition


def test_bridges_are_path_middles():
    rng = random.Random(8)
    for _ in range(25):
        g, _ = bridged_cubic(rng)
        res = solve(g, FULL, marks=())
        if res.found:
            middles = {p.middle_edge for p in res.decomposition}
            assert set(find_bridges(g)) <= middles


def test_degree23_edge_count_rule():
    rng = random.Random(17)
    for _ in range(40):
        g = random_degree23(rng, 18)
        if g is None:
            continue
        twos = sum(1 for v in range(g.n) if g.degree(v) == 2)
        if solve(g, FULL).found:
            assert twos % 3 == 0
