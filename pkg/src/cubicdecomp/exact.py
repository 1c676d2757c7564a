"""Complete backtracking search for S'-decompositions, with optional marks.

The search repeatedly takes a vertex of minimum positive live degree, picks
its lowest-indexed live edge, and branches over every allowed part that
contains that edge.  Two prunings keep it small at desk scale: every
connected component of the residual graph must hold a multiple of three
edges, and every live edge next to the last placed part must still lie in
at least one placeable part.

``BUDGET_EXCEEDED`` is reported separately from ``NO_DECOMPOSITION``: only
the latter is a proof that no decomposition exists.
"""

from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import BudgetExceeded, EdgeNotInGraph
from .graph import Edge, Graph, edge
from .model import FULL, AllowedSet, Part, Shape

_CLAW, _TRI, _PATH = Shape.CLAW, Shape.TRIANGLE, Shape.PATH


@dataclass(frozen=True)
class SolverConfig:
    node_budget: int = 50_000_000
    time_budget: float = 600.0
    deterministic: bool = True
    workers: int = 1

    def __post_init__(self) -> None:
        if self.node_budget <= 0 or self.time_budget <= 0 or self.workers <= 0:
            raise ValueError("solver budgets and worker count must be positive")


class Outcome(enum.Enum):
    FOUND = "found"
    NO_DECOMPOSITION = "no"
    BUDGET_EXCEEDED = "budget"


@dataclass
class SolveResult:
    outcome: Outcome
    decomposition: list[Part] | None = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND


# A candidate part: (sort key, shape, vertex tuple, edge ids).
_Cand = tuple[tuple, Shape, tuple[int, ...], tuple[int, ...]]


class _Search:
    def __init__(
        self,
        g: Graph,
        allowed: AllowedSet,
        marks: Iterable[Edge] | None,
        optional: Iterable[Edge],
        cfg: SolverConfig,
    ) -> None:
        self.g = g
        self.allowed = allowed
        idx = g.edge_index
        if marks is None:
            self.marked: set[int] | None = None
        else:
            self.marked = set()
            for e in marks:
                e = edge(*e)
                if e not in idx:
                    raise EdgeNotInGraph(f"marked pair {e} is not an edge")
                self.marked.add(idx[e])
        self.required = bytearray([1]) * g.m
        for e in optional:
            self.required[idx[edge(*e)]] = 0
        self.has_optional = not all(self.required)
        self.alive = bytearray([1]) * g.m
        self.inc: list[list[tuple[int, int]]] = [
            [(w, idx[edge(v, w)]) for w in g.adj[v]] for v in range(g.n)
        ]
        self.deg = [len(nb) for nb in g.adj]
        self.req_left = sum(self.required)
        self.stack: list[_Cand] = []
        self.cfg = cfg
        self.nodes = 0
        self.deadline = time.monotonic() + cfg.time_budget

    # -- candidate generation -------------------------------------------------

    def _live(self, v: int) -> list[tuple[int, int]]:
        alive = self.alive
        return [(w, f) for w, f in self.inc[v] if alive[f]]

    def _is_marked(self, eid: int) -> bool:
        return self.marked is not None and eid in self.marked

    def candidates(self, eid: int, first_only: bool = False) -> list[_Cand]:
        a, b = self.g.edges[eid]
        out: list[_Cand] = []
        live_a, live_b = self._live(a), self._live(b)
        if _CLAW in self.allowed:
            for c, other, live in ((a, b, live_a), (b, a, live_b)):
                rest = [(w, f) for w, f in live if w != other]
                for (w1, f1), (w2, f2) in combinations(rest, 2):
                    vs = (c, other, *sorted((w1, w2)))
                    out.append(((0, c, *sorted((other, w1, w2))), _CLAW, vs, (eid, f1, f2)))
                    if first_only:
                        return out
        if _TRI in self.allowed:
            nb_b = dict(live_b)
            for w, f in live_a:
                if w != b and w in nb_b:
                    eids = (eid, f, nb_b[w])
                    if self.marked is not None and sum(x in self.marked for x in eids) not in (1, 2):
                        continue
                    vs = tuple(sorted((a, b, w)))
                    out.append(((1, *vs), _TRI, vs, eids))
                    if first_only:
                        return out
        if _PATH in self.allowed:
            if not self._is_marked(eid):
                for p, fp in live_a:
                    if p == b:
                        continue
                    for q, fq in live_b:
                        if q == a or q == p:
                            continue
                        vs = (p, a, b, q)
                        out.append(((2, *min(vs, vs[::-1])), _PATH, vs, (fp, eid, fq)))
                        if first_only:
                            return out
            for x, y, live_y in ((a, b, live_b), (b, a, live_a)):
                for z, fz in live_y:
                    if z == x or self._is_marked(fz):
                        continue
                    for w, fw in self._live(z):
                        if w == x or w == y:
                            continue
                        vs = (x, y, z, w)
                        out.append(((2, *min(vs, vs[::-1])), _PATH, vs, (eid, fz, fw)))
                        if first_only:
                            return out
        if not first_only:
            out.sort(key=lambda c: c[0])
        return out

    # -- state updates --------------------------------------------------------

    def place(self, cand: _Cand) -> None:
        for f in cand[3]:
            self.alive[f] = 0
            u, v = self.g.edges[f]
            self.deg[u] -= 1
            self.deg[v] -= 1
            self.req_left -= self.required[f]
        self.stack.append(cand)

    def unplace(self) -> None:
        cand = self.stack.pop()
        for f in cand[3]:
            self.alive[f] = 1
            u, v = self.g.edges[f]
            self.deg[u] += 1
            self.deg[v] += 1
            self.req_left += self.required[f]

    def consistent_after(self, cand: _Cand) -> bool:
        """Cheap necessary conditions checked around a freshly placed part."""
        touched = set(cand[2])
        for u in touched:
            for _, f in self._live(u):
                if self.required[f] and not self.candidates(f, first_only=True):
                    return False
        if self.has_optional:
            return True
        seen: set[int] = set()
        for s in touched:
            if s in seen or self.deg[s] == 0:
                continue
            seen.add(s)
            todo = [s]
            degsum = 0
            while todo:
                u = todo.pop()
                degsum += self.deg[u]
                for w, _ in self._live(u):
                    if w not in seen:
                        seen.add(w)
                        todo.append(w)
            if (degsum // 2) % 3:
                return False
        return True

    def pick_edge(self) -> int:
        best_v, best_d = -1, 4 << 20
        deg, alive, req = self.deg, self.alive, self.required
        for v in range(self.g.n):
            d = deg[v]
            if 0 < d < best_d and any(alive[f] and req[f] for _, f in self.inc[v]):
                best_v, best_d = v, d
                if d == 1:
                    break
        return min(f for _, f in self.inc[best_v] if alive[f] and req[f])

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.cfg.node_budget:
            raise BudgetExceeded(f"node budget {self.cfg.node_budget} exhausted")
        if not self.nodes & 1023 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time budget {self.cfg.time_budget}s exhausted")

    # -- search ---------------------------------------------------------------

    def initially_consistent(self) -> bool:
        if self.has_optional:
            return True
        if self.req_left % 3:
            return False
        for comp_edges in _component_edge_counts(self.g):
            if comp_edges % 3:
                return False
        return True

    def run(self) -> Iterator[list[Part]]:
        self.tick()
        if self.req_left == 0:
            yield self.parts()
            return
        eid = self.pick_edge()
        for cand in self.candidates(eid):
            self.place(cand)
            if self.consistent_after(cand):
                yield from self.run()
            self.unplace()

    def parts(self) -> list[Part]:
        return sorted(Part(shape, vs) for _, shape, vs, _ in self.stack)


def _component_edge_counts(g: Graph) -> list[int]:
    from .graph import connected_components

    return [sum(g.degree(v) for v in comp) // 2 for comp in connected_components(g)]


def _first(search: _Search) -> SolveResult:
    try:
        if search.initially_consistent():
            for d in search.run():
                return SolveResult(Outcome.FOUND, d, search.nodes)
    except BudgetExceeded:
        return SolveResult(Outcome.BUDGET_EXCEEDED, None, search.nodes)
    return SolveResult(Outcome.NO_DECOMPOSITION, None, search.nodes)


def _solve_subtree(args: tuple) -> SolveResult:
    g, allowed, marks, cfg, index = args
    search = _Search(g, allowed, marks, (), cfg)
    cand = search.candidates(search.pick_edge())[index]
    search.place(cand)
    if not search.consistent_after(cand):
        return SolveResult(Outcome.NO_DECOMPOSITION, None, 1)
    return _first(search)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("DECOMP_THREADS", "1")))
    except ValueError:
        return 1


def solve(
    g: Graph,
    allowed: AllowedSet = FULL,
    marks: Iterable[Edge] | None = None,
    cfg: SolverConfig | None = None,
) -> SolveResult:
    """Decide whether ``g`` has an ``allowed``-decomposition.

    When ``marks`` is given (even empty) the marked-edge rules apply: no P4
    has a marked middle edge and every triangle has one or two marked edges.
    """
    cfg = cfg or SolverConfig()
    marks = None if marks is None else frozenset(edge(*e) for e in marks)
    search = _Search(g, allowed, marks, (), cfg)
    if cfg.workers == 1 or search.req_left == 0 or not search.initially_consistent():
        return _first(search)
    roots = search.candidates(search.pick_edge())
    sub_cfg = SolverConfig(
        max(1, cfg.node_budget // max(1, len(roots))),
        max(1e-3, search.deadline - time.monotonic()),
        cfg.deterministic,
        1,
    )
    jobs = [(g, allowed, marks, sub_cfg, i) for i in range(len(roots))]
    nodes = 1
    budget_hit = False
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        futures = [pool.submit(_solve_subtree, job) for job in jobs]
        # collect in candidate order so the answer does not depend on scheduling
        for fut in futures:
            res = fut.result()
            nodes += res.nodes
            if res.found:
                for other in futures:
                    other.cancel()
                return SolveResult(Outcome.FOUND, res.decomposition, nodes)
            budget_hit |= res.outcome is Outcome.BUDGET_EXCEEDED
    return SolveResult(
        Outcome.BUDGET_EXCEEDED if budget_hit else Outcome.NO_DECOMPOSITION, None, nodes
    )


def enumerate_decompositions(
    g: Graph,
    allowed: AllowedSet = FULL,
    marks: Iterable[Edge] | None = None,
    optional: Iterable[Edge] = (),
    cfg: SolverConfig | None = None,
) -> Iterator[list[Part]]:
    """Every decomposition, in search order.

    Edges listed in ``optional`` may be used by parts but need not be
    covered.  Raises :class:`BudgetExceeded` if the budget runs out.
    """
    search = _Search(g, allowed, marks, optional, cfg or SolverConfig())
    if search.initially_consistent():
        yield from search.run()
