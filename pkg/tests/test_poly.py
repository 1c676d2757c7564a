import logging
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubicdecomp.errors import NotConnected, NotCubic
from cubicdecomp.exact import solve
from cubicdecomp.graph import build_graph, is_bipartite, named_graph, random_cubic
from cubicdecomp.matching import is_matching
from cubicdecomp.model import FAMILIES, FULL, Part, Shape, verify
from cubicdecomp.poly import decide_claw, decide_claw_triangle, decide_family, decide_k3p4, decide_p4
from oracles import pm_free_cubic, triangle_rich_cubic


def check_matching_paths(g, d):
    """P4-only certificate whose middle edges form a perfect matching."""
    assert verify(g, d, FAMILIES["p4"]).valid
    assert len(d) == g.n // 2
    middles = frozenset(p.middle_edge for p in d)
    assert len(middles) == g.n // 2 and is_matching(g, middles)
    ends = [0] * g.n
    for p in d:
        ends[p.vertices[0]] += 1
        ends[p.vertices[3]] += 1
    assert max(ends) < 3


class TestClaw:
    def test_k33(self):
        d = decide_claw(named_graph("k33"))
        assert len(d) == 3 and verify(named_graph("k33"), d, FAMILIES["k13"]).valid

    def test_cube(self):
        d = decide_claw(named_graph("cube"))
        assert len(d) == 4 and all(p.shape is Shape.CLAW for p in d)

    def test_prism(self):
        assert decide_claw(named_graph("prism")) is None

    @given(st.integers(2, 8), st.integers(0, 10**6))
    def test_iff_bipartite(self, half, seed):
        g = random_cubic(2 * half, seed)
        d = decide_claw(g)
        assert (d is not None) == (is_bipartite(g) is not None)


class TestPaths:
    def test_k4(self):
        d = decide_p4(named_graph("k4"))
        assert len(d) == 2
        check_matching_paths(named_graph("k4"), d)
        # the hand-built pair for the matching {01, 23} is a certificate as well
        check_matching_paths(named_graph("k4"), [Part.path(2, 0, 1, 3), Part.path(1, 2, 3, 0)])

    def test_prism(self):
        d = decide_p4(named_graph("prism"))
        check_matching_paths(named_graph("prism"), d)
        assert len(d) == 3

    def test_petersen(self):
        d = decide_p4(named_graph("petersen"))
        check_matching_paths(named_graph("petersen"), d)
        assert len(d) == 5

    def test_k3p4_delegates(self):
        for name in ("prism", "k4", "petersen", "cube"):
            g = named_graph(name)
            d = decide_k3p4(g)
            assert d == decide_p4(g)
            assert not any(p.shape is Shape.TRIANGLE for p in d)

    def test_pm_free(self):
        assert decide_k3p4(pm_free_cubic()) is None

    @given(st.integers(2, 12), st.integers(0, 10**6))
    def test_random_certificates(self, half, seed):
        g = random_cubic(2 * half, seed)
        d = decide_p4(g)
        if d is not None:
            check_matching_paths(g, d)

    def test_takes_the_two_sat_path(self, caplog):
        with caplog.at_level(logging.DEBUG, logger="cubicdecomp.poly"):
            for seed in range(30):
                decide_p4(random_cubic(16, seed))
        assert not [r for r in caplog.records if r.levelno >= logging.WARNING]


class TestClawTriangle:
    def test_k4(self):
        d = decide_claw_triangle(named_graph("k4"))
        assert sorted(p.shape for p in d) == [Shape.CLAW, Shape.TRIANGLE]
        assert verify(named_graph("k4"), d, FAMILIES["k13k3"]).valid

    def test_prism(self):
        assert decide_claw_triangle(named_graph("prism")) is None

    def test_k33(self):
        d = decide_claw_triangle(named_graph("k33"))
        assert len(d) == 3 and all(p.shape is Shape.CLAW for p in d)

    def test_agrees_with_exact_on_triangle_rich_graphs(self):
        rng = random.Random(99)
        yes = 0
        for _ in range(250):
            g = triangle_rich_cubic(rng)
            d = decide_claw_triangle(g)
            assert (d is not None) == solve(g, FAMILIES["k13k3"]).found
            if d is not None:
                yes += 1
                assert verify(g, d, FAMILIES["k13k3"]).valid
        assert yes > 10


class TestRouting:
    def test_triangles_only_never(self):
        for name in ("k4", "prism", "petersen"):
            assert decide_family(named_graph(name), FAMILIES["k3"]) is None

    def test_k33_claws(self):
        assert decide_family(named_graph("k33"), FAMILIES["k13"]) is not None

    def test_prism_full(self):
        d = decide_family(named_graph("prism"), FULL)
        assert d is not None and verify(named_graph("prism"), d).valid

    def test_rejects_non_cubic(self):
        with pytest.raises(NotCubic):
            decide_family(named_graph("diamond"), FULL)

    def test_rejects_disconnected(self):
        k4 = named_graph("k4")
        two = build_graph(8, list(k4.edges) + [(u + 4, v + 4) for u, v in k4.edges])
        with pytest.raises(NotConnected):
            decide_claw(two)

    def test_empty_family(self):
        with pytest.raises(ValueError):
            decide_family(named_graph("k4"), frozenset())


@pytest.mark.parametrize("family", ["k13", "k3", "p4", "k13k3", "k3p4"])
def test_random_agreement_n12_n14(family):
    rng = random.Random(family)
    allowed = FAMILIES[family]
    for _ in range(200):
        g = random_cubic(rng.choice((12, 14)), rng.randrange(10**9))
        d = decide_family(g, allowed)
        res = solve(g, allowed)
        assert (d is not None) == res.found
        if res.found and family == "k3p4":
            # any certificate, not only the constructive one, is triangle-free with n/2 paths
            assert not any(p.shape is Shape.TRIANGLE for p in res.decomposition)
            assert len(res.decomposition) == g.n // 2
