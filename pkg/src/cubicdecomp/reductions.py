"""Hardness gadgets: SAT formulas to marked decomposition instances and back.

Two pipelines are provided.

* monotone 1-in-3 SAT (every variable in exactly three clauses) to a
  degree-2,3 marked instance built from variable claws and clause 5-cycles,
  then nets until cubic, then a co-fish on every marked edge, giving a
  {K13, P4} instance;
* monotone NAE-3SAT (every variable at least twice) to a cubic K3-free
  marked instance built from variable trees and clause paths, then
  co-fishes, giving a {K13, K3, P4} instance.

Witness functions turn satisfying assignments into decompositions and carry
them through each stage.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    ClauseCountMismatch,
    InternalCaseMiss,
    InvalidFormula,
    InvalidInput,
    NotCubic,
    NotDegreeTwo,
    NotSatisfying,
    OccurrenceViolation,
)
from .exact import SolverConfig, solve
from .graph import COFISH_ANCHOR, Edge, Graph, attach_to_edge_mapped, build_graph, edge, named_graph
from .model import FAMILIES, MarkedInstance, Part, Shape, verify_marked


class SatMode(str, enum.Enum):
    ONE_IN_THREE = "1in3"
    NAE = "nae"


Assignment = tuple[bool, ...]


@dataclass(frozen=True)
class CnfFormula:
    """Negation-free 3-CNF; variables are ``0..num_vars-1``."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(c) for c in self.clauses)
        for c in clauses:
            if len(c) != 3 or len(set(c)) != 3:
                raise InvalidFormula(f"clause {c} must have three distinct variables")
            if not all(0 <= x < self.num_vars for x in c):
                raise InvalidFormula(f"clause {c} uses a variable outside 0..{self.num_vars - 1}")
        object.__setattr__(self, "clauses", clauses)

    def occurrences(self) -> list[int]:
        occ = [0] * self.num_vars
        for c in self.clauses:
            for x in c:
                occ[x] += 1
        return occ


def clause_satisfied(mode: SatMode, values: Sequence[bool]) -> bool:
    k = sum(values)
    return k == 1 if mode is SatMode.ONE_IN_THREE else k in (1, 2)


def satisfies(phi: CnfFormula, a: Sequence[bool], mode: SatMode) -> bool:
    if len(a) != phi.num_vars:
        return False
    return all(clause_satisfied(mode, [a[x] for x in c]) for c in phi.clauses)


def brute_sat(phi: CnfFormula, mode: SatMode) -> Assignment | None:
    """First satisfying assignment in lexicographic order (False < True, x1 first)."""
    mode = SatMode(mode)
    for a in itertools.product((False, True), repeat=phi.num_vars):
        if satisfies(phi, a, mode):
            return a
    return None


def validate_for_reduction(phi: CnfFormula, which: SatMode) -> None:
    which = SatMode(which)
    for x, k in enumerate(phi.occurrences()):
        if which is SatMode.ONE_IN_THREE and k != 3:
            raise OccurrenceViolation(x, k, "exactly 3")
        if which is SatMode.NAE and k < 2:
            raise OccurrenceViolation(x, k, "at least 2")


@dataclass
class ReductionMap:
    """Where each gadget of a reduction landed in the output graph."""

    stage: str
    # per variable: role name -> vertex ids ("center"/"leaves", or "A"/"B"/"leaf_parent"/"leaf_vertex")
    variables: list[dict[str, list[int]]]
    # per clause: the 5-cycle (a1..a5) or the clause path (v1..v7)
    clauses: list[list[int]]
    # per net: (t1, t2, t3, n1, n2, n3), n_i attached to t_i
    nets: list[tuple[int, ...]] = field(default_factory=list)
    # per marked edge: (s, a, b, c, d, e) with s the subdivision vertex
    cofish: dict[Edge, tuple[int, ...]] = field(default_factory=dict)

    def to_json(self) -> dict:
        """JSON-ready view with 1-based vertex ids (file-format convention)."""
        one = lambda vs: [v + 1 for v in vs]  # noqa: E731
        return {
            "stage": self.stage,
            "variables": [{k: one(v) for k, v in var.items()} for var in self.variables],
            "clauses": [one(c) for c in self.clauses],
            "nets": [one(t) for t in self.nets],
            "cofish": [
                {"edge": one(e), **dict(zip(("s", "a", "b", "c", "d", "e"), one(ids)))}
                for e, ids in sorted(self.cofish.items())
            ],
        }


# -- 1-in-3 SAT ---------------------------------------------------------------


def reduce_one_in_three(phi: CnfFormula) -> tuple[MarkedInstance, ReductionMap]:
    """Variable claws (all edges marked) joined through clause 5-cycles.

    For a clause ``(xi, xj, xk)`` the cycle is ``a1 a2 a3 a4 a5``: ``a4`` is
    a leaf of ``xi``'s claw, ``a1`` and ``a2`` are adjacent leaves of ``xj``
    and ``xk``, and ``a3``, ``a5`` are fresh degree-2 vertices.
    """
    validate_for_reduction(phi, SatMode.ONE_IN_THREE)
    m = phi.num_vars
    edges: list[Edge] = []
    marks: list[Edge] = []
    variables = []
    for x in range(m):
        c = 4 * x
        leaves = [c + 1, c + 2, c + 3]
        variables.append({"center": [c], "leaves": leaves, "clauses": []})
        for leaf in leaves:
            edges.append((c, leaf))
            marks.append((c, leaf))
    used = [0] * m
    clauses = []
    for j, (xi, xj, xk) in enumerate(phi.clauses):
        slot = {}
        for x in (xi, xj, xk):
            slot[x] = variables[x]["leaves"][used[x]]
            variables[x]["clauses"].append(j)
            used[x] += 1
        a3, a5 = 4 * m + 2 * j, 4 * m + 2 * j + 1
        cycle = [slot[xj], slot[xk], a3, slot[xi], a5]
        clauses.append(cycle)
        edges.extend(edge(cycle[i], cycle[(i + 1) % 5]) for i in range(5))
    g = build_graph(4 * m + 2 * len(phi.clauses), edges)
    return MarkedInstance(g, frozenset(marks)), ReductionMap("marked", variables, clauses)


# -- NAE-3SAT ------------------------------------------------------------------

# path positions (0-based v1..v7) joined to each clause variable, in clause order
_NAE_JOINS = ((0, 2, 6), (0, 4, 6), (1, 3, 5))
_NAE_MARKED_PATH_EDGES = ((1, 2), (4, 5))


def variable_tree_shape(k: int) -> tuple[list[Edge], list[int]]:
    """Internal edges and leaf parents of the caterpillar tree for ``k`` occurrences.

    Vertices ``0..k-2`` are the A side, ``k-1..3k-3`` the B side; ``a_i``
    is joined to ``b_{2i-1}, b_{2i}, b_{2i+1}`` (1-based).  The first and
    last B vertices and every even-numbered one carry two leaves, the other
    B vertices one, so there are ``3k`` leaves in total.
    """
    if k < 2:
        raise InvalidFormula("variable trees need at least two occurrences")
    t = k - 1
    a = list(range(t))
    b = [t + i for i in range(2 * t + 1)]
    internal = [(a[i], b[j]) for i in range(t) for j in (2 * i, 2 * i + 1, 2 * i + 2)]
    parents = []
    for j, bv in enumerate(b, start=1):
        parents.extend([bv] * (2 if j in (1, 2 * t + 1) or j % 2 == 0 else 1))
    return internal, parents


def reduce_nae(phi: CnfFormula) -> tuple[MarkedInstance, ReductionMap]:
    """Variable trees (all edges marked) whose leaves are clause-path vertices.

    Each clause ``(xi, xj, xk)`` gets a path ``v1..v7`` with ``{v2, v3}`` and
    ``{v5, v6}`` marked; tree leaves of ``xi`` sit at ``v1, v3, v7``, of
    ``xj`` at ``v1, v5, v7`` and of ``xk`` at ``v2, v4, v6``.  The border
    edge of a leaf is therefore the edge from its tree parent to the path.
    """
    validate_for_reduction(phi, SatMode.NAE)
    occ = phi.occurrences()
    if sum(occ) != 3 * len(phi.clauses):
        raise ClauseCountMismatch(f"{sum(occ)} occurrences for {len(phi.clauses)} clauses")
    n_path = 7 * len(phi.clauses)
    edges: list[Edge] = []
    marks: list[Edge] = []
    clauses = []
    for j in range(len(phi.clauses)):
        path = list(range(7 * j, 7 * j + 7))
        clauses.append(path)
        edges.extend((path[p], path[p + 1]) for p in range(6))
        marks.extend((path[p], path[q]) for p, q in _NAE_MARKED_PATH_EDGES)

    variables = []
    nxt = n_path
    for x in range(phi.num_vars):
        internal, parents = variable_tree_shape(occ[x])
        size = 3 * occ[x] - 2
        ids = list(range(nxt, nxt + size))
        nxt += size
        t = occ[x] - 1
        variables.append(
            {"A": ids[:t], "B": ids[t:], "leaf_parent": [ids[p] for p in parents], "leaf_vertex": []}
        )
        for u, v in internal:
            edges.append((ids[u], ids[v]))
            marks.append((ids[u], ids[v]))
    for j, clause in enumerate(phi.clauses):
        for role, x in enumerate(clause):
            var = variables[x]
            for p in _NAE_JOINS[role]:
                parent = var["leaf_parent"][len(var["leaf_vertex"])]
                var["leaf_vertex"].append(clauses[j][p])
                edges.append((parent, clauses[j][p]))
                marks.append((parent, clauses[j][p]))
    g = build_graph(nxt, edges)
    return MarkedInstance(g, frozenset(marks)), ReductionMap("marked", variables, clauses)


# -- witnesses -------------------------------------------------------------------


def _local_completion(inst: MarkedInstance, residual: list[Edge], cfg: SolverConfig) -> list[Part]:
    """Decompose one clause gadget's leftover edges with the exact solver."""
    sub = build_graph(inst.graph.n, residual)
    res = solve(sub, FAMILIES["k13p4"], inst.marks & set(sub.edges), cfg)
    if not res.found:
        raise InternalCaseMiss(f"no local completion for clause edges {sorted(residual)}")
    return res.decomposition


def witness_from_assignment(
    phi: CnfFormula, a: Sequence[bool], which: SatMode, cfg: SolverConfig | None = None
) -> list[Part]:
    """Marked decomposition of the (pre-net) reduced instance for a satisfying ``a``.

    Variable gadgets are covered by their TRUE/FALSE pattern; each clause
    gadget's leftover edges are then completed by a search confined to that
    gadget.
    """
    which = SatMode(which)
    if not satisfies(phi, a, which):
        raise NotSatisfying("assignment does not satisfy the formula")
    cfg = cfg or SolverConfig(node_budget=100_000, time_budget=30.0)
    parts: list[Part] = []
    if which is SatMode.ONE_IN_THREE:
        inst, rmap = reduce_one_in_three(phi)
        for x, var in enumerate(rmap.variables):
            if not a[x]:
                parts.append(Part.claw(var["center"][0], *var["leaves"]))
        for j, cycle in enumerate(rmap.clauses):
            residual = [edge(cycle[i], cycle[(i + 1) % 5]) for i in range(5)]
            for x in phi.clauses[j]:
                var = rmap.variables[x]
                if a[x]:
                    leaf = var["leaves"][var["clauses"].index(j)]
                    residual.append(edge(var["center"][0], leaf))
            parts.extend(_local_completion(inst, residual, cfg))
    else:
        inst, rmap = reduce_nae(phi)
        g = inst.graph
        for x, var in enumerate(rmap.variables):
            for c in var["B"] if a[x] else var["A"]:
                parts.append(Part.claw(c, *g.adj[c]))
        for j, path in enumerate(rmap.clauses):
            residual = [(path[p], path[p + 1]) for p in range(6)]
            for x in phi.clauses[j]:
                if a[x]:
                    continue
                var = rmap.variables[x]
                for parent, leaf in zip(var["leaf_parent"], var["leaf_vertex"]):
                    if leaf in path:
                        residual.append(edge(parent, leaf))
            parts.extend(_local_completion(inst, residual, cfg))
    return sorted(parts)


# -- nets ------------------------------------------------------------------------


def add_net(inst: MarkedInstance, t1: int, t2: int, t3: int) -> MarkedInstance:
    """Attach a net by its leaves to three degree-2 vertices; the pendant edges are marked.

    The net triangle gets vertex ids ``n, n+1, n+2`` attached to ``t1, t2, t3``.
    """
    g = inst.graph
    ts = (t1, t2, t3)
    if len(set(ts)) != 3 or any(not 0 <= t < g.n or g.degree(t) != 2 for t in ts):
        raise NotDegreeTwo(f"net needs three distinct degree-2 vertices, got {ts}")
    n = g.n
    pendant = [(t, n + i) for i, t in enumerate(ts)]
    tri = [(n, n + 1), (n, n + 2), (n + 1, n + 2)]
    g2 = build_graph(n + 3, list(g.edges) + pendant + tri)
    return MarkedInstance(g2, inst.marks | {edge(*e) for e in pendant})


def saturate_nets(inst: MarkedInstance) -> MarkedInstance | None:
    """Add nets on the three lowest degree-2 vertices until none remain.

    Returns None when one or two degree-2 vertices are left over: such an
    instance cannot be decomposed (its edge count is not a multiple of 3).
    """
    if any(d not in (2, 3) for d in map(len, inst.graph.adj)):
        raise InvalidInput("saturate_nets needs a degree-2,3 graph")
    while True:
        twos = [v for v in range(inst.graph.n) if inst.graph.degree(v) == 2]
        if not twos:
            return inst
        if len(twos) < 3:
            return None
        inst = add_net(inst, *twos[:3])


def nets_between(before: MarkedInstance, after: MarkedInstance) -> list[tuple[int, ...]]:
    """Recover ``(t1, t2, t3, n1, n2, n3)`` for every net added to ``before``."""
    g0, g1 = before.graph, after.graph
    extra = g1.n - g0.n
    if extra % 3 or extra < 0:
        raise InvalidInput("instance is not the result of adding nets")
    nets = []
    for base in range(g0.n, g1.n, 3):
        trio = (base, base + 1, base + 2)
        ts = []
        for v in trio:
            outside = [w for w in g1.adj[v] if w not in trio]
            if len(outside) != 1 or outside[0] >= g0.n:
                raise InvalidInput(f"vertices {trio} do not form an added net")
            ts.append(outside[0])
        nets.append((*ts, *trio))
    expected = set(g0.edges) | {
        edge(*e) for t1, t2, t3, a, b, c in nets for e in ((t1, a), (t2, b), (t3, c), (a, b), (a, c), (b, c))
    }
    if expected != set(g1.edges):
        raise InvalidInput("instance is not the result of adding nets")
    return nets


def lift_over_net(d: Iterable[Part], before: MarkedInstance, after: MarkedInstance) -> list[Part]:
    """Extend a marked decomposition of ``before`` to ``after`` (one claw + one P4 per net)."""
    d = list(d)
    if not verify_marked(before, d).valid:
        raise InvalidInput("decomposition is not valid for the instance before the nets")
    out = list(d)
    for t1, t2, t3, n1, n2, n3 in nets_between(before, after):
        out.append(Part.claw(n1, t1, n2, n3))
        out.append(Part.path(t2, n2, n3, t3))
    return sorted(out)


# -- co-fish -----------------------------------------------------------------------


def attach_cofish_all_marked(
    inst: MarkedInstance, base_map: ReductionMap | None = None
) -> tuple[Graph, ReductionMap]:
    """Attach a co-fish by its degree-1 vertex to every marked edge (in edge order)."""
    if not inst.graph.is_cubic():
        raise NotCubic("co-fish attachment needs a cubic marked instance")
    cofish = named_graph("cofish")
    g = inst.graph
    rmap = ReductionMap(
        "final",
        base_map.variables if base_map else [],
        base_map.clauses if base_map else [],
        list(base_map.nets) if base_map else [],
    )
    for e in sorted(inst.marks):
        g, where = attach_to_edge_mapped(g, cofish, e, COFISH_ANCHOR)
        rmap.cofish[e] = (where[COFISH_ANCHOR], *where[:COFISH_ANCHOR])
    return g, rmap


def lift_over_cofish(
    d: Iterable[Part], inst: MarkedInstance, final_graph: Graph, rmap: ReductionMap
) -> list[Part]:
    """Turn a marked decomposition into a {K13, P4} decomposition of the co-fish graph.

    Each part holding marked edges is rewritten so that one half of every
    subdivided edge stays in it; the other half joins the co-fish, whose
    interior is covered by a claw at ``c``, the P4 ``b e d a`` and the P4
    ``b a s X`` (``X`` the endpoint whose half went to the co-fish).
    """
    d = list(d)
    if not verify_marked(inst, d).valid:
        raise InvalidInput("decomposition is not valid for the marked instance")
    if set(rmap.cofish) != set(inst.marks):
        raise InvalidInput("reduction map does not cover exactly the marked edges")
    sub = {e: ids[0] for e, ids in rmap.cofish.items()}
    outer: dict[Edge, int] = {}
    out: list[Part] = []
    for part in d:
        marked = [e for e in part.edges if e in inst.marks]
        if not marked:
            out.append(part)
            continue
        vs = list(part.vertices)
        if part.shape is Shape.CLAW:
            for i in (1, 2, 3):
                e = edge(vs[0], vs[i])
                if e in inst.marks:
                    outer[e] = vs[i]
                    vs[i] = sub[e]
            out.append(Part(Shape.CLAW, tuple(vs)))
        elif part.shape is Shape.PATH:
            for end, inner in ((0, 1), (3, 2)):
                e = edge(vs[end], vs[inner])
                if e in inst.marks:
                    outer[e] = vs[end]
                    vs[end] = sub[e]
            out.append(Part(Shape.PATH, tuple(vs)))
        elif len(marked) == 1:
            (e,) = marked
            v, w = e
            z = next(x for x in vs if x not in e)
            outer[e] = w
            out.append(Part.path(w, z, v, sub[e]))
        elif len(marked) == 2:
            e1, e2 = marked
            (z,) = set(e1) & set(e2)
            v = e1[0] if e1[1] == z else e1[1]
            w = e2[0] if e2[1] == z else e2[1]
            outer[e1] = outer[e2] = z
            out.append(Part.path(sub[e1], v, w, sub[e2]))
        else:
            raise InternalCaseMiss(f"part {part} matches no co-fish rewrite")
    for e, (s, fa, fb, fc, fd, fe) in rmap.cofish.items():
        out.append(Part.claw(fc, fb, fd, fe))
        out.append(Part.path(fb, fe, fd, fa))
        out.append(Part.path(fb, fa, s, outer[e]))
    return sorted(out)


# -- pipelines ---------------------------------------------------------------------

STAGES = ("marked", "cubic-marked", "final")


def reduce_formula(
    phi: CnfFormula, which: SatMode, stage: str
) -> tuple[Graph, frozenset[Edge], ReductionMap] | None:
    """Run a reduction up to ``stage``; None if net saturation proves a no-instance."""
    which = SatMode(which)
    if stage not in STAGES:
        raise ValueError(f"stage must be one of {STAGES}")
    if which is SatMode.ONE_IN_THREE:
        inst, rmap = reduce_one_in_three(phi)
    else:
        inst, rmap = reduce_nae(phi)
    if stage == "marked":
        return inst.graph, inst.marks, rmap
    if which is SatMode.ONE_IN_THREE:
        cubic = saturate_nets(inst)
        if cubic is None:
            return None
        rmap.nets = nets_between(inst, cubic)
        inst = cubic
    rmap.stage = "cubic-marked"
    if stage == "cubic-marked":
        return inst.graph, inst.marks, rmap
    g, fmap = attach_cofish_all_marked(inst, rmap)
    return g, frozenset(), fmap


def witness_for_stage(
    phi: CnfFormula, a: Sequence[bool], which: SatMode, stage: str
) -> tuple[Graph, frozenset[Edge], list[Part]]:
    """Certificate for the stage-``stage`` instance built from a satisfying assignment."""
    which = SatMode(which)
    d = witness_from_assignment(phi, a, which)
    inst, rmap = reduce_one_in_three(phi) if which is SatMode.ONE_IN_THREE else reduce_nae(phi)
    if stage == "marked":
        return inst.graph, inst.marks, d
    if which is SatMode.ONE_IN_THREE:
        cubic = saturate_nets(inst)
        if cubic is None:
            raise InvalidInput("net saturation left degree-2 vertices")
        d = lift_over_net(d, inst, cubic)
        inst = cubic
    if stage == "cubic-marked":
        return inst.graph, inst.marks, d
    g, fmap = attach_cofish_all_marked(inst)
    return g, frozenset(), lift_over_cofish(d, inst, g, fmap)
