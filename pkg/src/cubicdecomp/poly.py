"""Polynomial-time deciders for the tractable families on connected cubic graphs.

Every decider returns a certificate decomposition or None.  The claw+triangle
decider works by forced propagation: parts are only ever committed when no
alternative exists, so a failed propagation proves non-decomposability.
"""

from __future__ import annotations

import itertools
import logging

from .errors import BudgetExceeded, NotConnected, NotCubic, OrientationFailed, PropagationStall
from .exact import Outcome, SolverConfig, solve
from .graph import Edge, Graph, edge, find_diamond, find_triangles, is_bipartite, is_connected
from .matching import perfect_matching, two_factor_cycles
from .model import FAMILIES, AllowedSet, Part, Shape
from .twosat import solve_2sat

log = logging.getLogger(__name__)

EXHAUSTIVE_ORIENTATION_LIMIT = 20


def require_connected_cubic(g: Graph) -> None:
    if not g.is_cubic():
        raise NotCubic("input graph is not cubic")
    if not is_connected(g):
        raise NotConnected("input graph is not connected")


def decide_claw(g: Graph) -> list[Part] | None:
    """Claw-only decomposition: centers are the bipartition side holding vertex 0."""
    require_connected_cubic(g)
    color = is_bipartite(g)
    if color is None:
        return None
    return [Part.claw(v, *g.adj[v]) for v in range(g.n) if color[v] == color[0]]


def _paths_from_orientation(
    cycles: list[list[int]], pos: dict[int, tuple[int, int]], matching: list[Edge], orient: list[bool]
) -> list[Part] | None:
    def succ(v: int) -> int:
        c, i = pos[v]
        cyc = cycles[c]
        return cyc[(i + 1) % len(cyc)] if orient[c] else cyc[i - 1]

    parts = []
    for u, v in matching:
        vs = (succ(u), u, v, succ(v))
        if len(set(vs)) < 4:
            return None
        parts.append(Part.path(*vs))
    return parts


def decide_p4(g: Graph) -> list[Part] | None:
    """P4-only decomposition whose middle edges form a perfect matching.

    The 2-factor left by the matching is oriented, and each matching edge
    ``{u, v}`` takes the P4 ``(succ(u), u, v, succ(v))``.  Orientations come
    from a 2-SAT instance that forbids ``succ(u) == succ(v)``.
    """
    require_connected_cubic(g)
    pm = perfect_matching(g)
    if pm is None:
        return None
    matching = sorted(pm)
    cycles = two_factor_cycles(g, pm)
    pos = {v: (c, i) for c, cyc in enumerate(cycles) for i, v in enumerate(cyc)}

    clauses = []
    for u, v in matching:
        cu, cv = pos[u][0], pos[v][0]
        for ou, ov in itertools.product((True, False), repeat=2):
            if cu == cv and ou != ov:
                continue
            orient = [True] * len(cycles)
            orient[cu], orient[cv] = ou, ov
            if _paths_from_orientation(cycles, pos, [(u, v)], orient) is None:
                clauses.append(((cu, not ou), (cv, not ov)))
    orient = solve_2sat(len(cycles), clauses)
    if orient is not None:
        log.debug("decide_p4: orientation from 2-SAT (%d conflict clauses)", len(clauses))
        parts = _paths_from_orientation(cycles, pos, matching, orient)
        if parts is not None:
            return sorted(parts)

    log.warning("decide_p4: 2-SAT found no conflict-free orientation; trying fallbacks")
    if len(cycles) <= EXHAUSTIVE_ORIENTATION_LIMIT:
        for bits in itertools.product((True, False), repeat=len(cycles)):
            parts = _paths_from_orientation(cycles, pos, matching, list(bits))
            if parts is not None:
                log.warning("decide_p4: exhaustive orientation search succeeded")
                return sorted(parts)
    res = solve(g, FAMILIES["p4"])
    if res.found:
        log.warning("decide_p4: certificate taken from the exact solver")
        return res.decomposition
    raise OrientationFailed("graph has a perfect matching but no P4 certificate was built")


def decide_k3p4(g: Graph) -> list[Part] | None:
    """Triangles never occur in such decompositions of cubic graphs, so this is decide_p4."""
    return decide_p4(g)


class PropagationState:
    """Residual graph plus the parts committed so far."""

    def __init__(self, g: Graph) -> None:
        self.g = g
        self.alive = set(g.edges)
        self.deg = [len(nb) for nb in g.adj]
        self.parts: list[Part] = []

    def live_neighbors(self, v: int) -> list[int]:
        return [w for w in self.g.adj[v] if edge(v, w) in self.alive]

    def _kill(self, edges: tuple[Edge, ...]) -> None:
        for u, v in edges:
            self.alive.remove((u, v))
            self.deg[u] -= 1
            self.deg[v] -= 1

    def commit_claw(self, center: int) -> bool:
        nb = self.live_neighbors(center)
        if len(nb) != 3:
            return False
        part = Part.claw(center, *nb)
        self._kill(part.edges)
        self.parts.append(part)
        return True

    def commit_triangle(self, a: int, b: int, c: int) -> bool:
        part = Part.triangle(a, b, c)
        if any(e not in self.alive for e in part.edges):
            return False
        self._kill(part.edges)
        self.parts.append(part)
        return True

    def propagate(self, triangles: bool) -> bool:
        """Apply the forced rules until the residual is empty (True) or a rule fails (False).

        Rule 1: a degree-1 vertex is a leaf, so its neighbour is a claw center.
        Rule 2: a degree-2 vertex on a live triangle takes that triangle (when
        triangles are allowed); otherwise both its neighbours are claw centers.
        """
        while self.alive:
            low = next((v for v in range(self.g.n) if self.deg[v] == 1), None)
            if low is not None:
                if not self.commit_claw(self.live_neighbors(low)[0]):
                    return False
                continue
            mid = next((v for v in range(self.g.n) if self.deg[v] == 2), None)
            if mid is None:
                raise PropagationStall(f"residual with {len(self.alive)} edges has no degree-1/2 vertex")
            p, q = self.live_neighbors(mid)
            if triangles and edge(p, q) in self.alive:
                self.commit_triangle(mid, p, q)
                continue
            if not (self.commit_claw(p) and self.commit_claw(q)):
                return False
        return True


def _third_neighbor(g: Graph, v: int, a: int, b: int) -> int:
    return next(w for w in g.adj[v] if w not in (a, b))


def decide_claw_triangle(g: Graph) -> list[Part] | None:
    require_connected_cubic(g)
    if g.n == 4:
        return [Part.triangle(1, 2, 3), Part.claw(0, 1, 2, 3)]
    if is_bipartite(g) is not None:
        return decide_claw(g)
    triangles = find_triangles(g)
    if not triangles:
        return None
    diamond = find_diamond(g)
    if diamond is not None:
        u, v, w, x = diamond
        branches = ((Part.triangle(u, v, w), x), (Part.triangle(v, w, x), u))
        for tri, center in branches:
            state = PropagationState(g)
            state.commit_triangle(*tri.vertices)
            if state.commit_claw(center) and state.propagate(triangles=True):
                return sorted(state.parts)
        return None
    # without a diamond every triangle of a cubic graph other than K4 is isolated
    state = PropagationState(g)
    for tri, isolated in triangles:
        assert isolated
        state.commit_triangle(*tri)
    if state.propagate(triangles=False):
        return sorted(state.parts)
    return None


def decide_family(
    g: Graph, allowed: AllowedSet, budget: SolverConfig | None = None
) -> list[Part] | None:
    """Route each nonempty allowed set to its decider (exact search for the hard ones)."""
    require_connected_cubic(g)
    if not allowed:
        raise ValueError("allowed set must be nonempty")
    if allowed == {Shape.CLAW}:
        return decide_claw(g)
    if allowed == {Shape.TRIANGLE}:
        return None  # every vertex has odd degree
    if allowed == {Shape.PATH}:
        return decide_p4(g)
    if allowed == {Shape.TRIANGLE, Shape.PATH}:
        return decide_k3p4(g)
    if allowed == {Shape.CLAW, Shape.TRIANGLE}:
        return decide_claw_triangle(g)
    res = solve(g, allowed, None, budget)
    if res.outcome is Outcome.BUDGET_EXCEEDED:
        raise BudgetExceeded(f"exact search gave up after {res.nodes} nodes")
    return res.decomposition
