"""Shapes, parts, marked instances and the decomposition verifier."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DuplicateEdge, EdgeNotInGraph, InvalidInput
from .graph import Edge, Graph, edge


class Shape(enum.Enum):
    CLAW = "K13"
    TRIANGLE = "K3"
    PATH = "P4"

    def __lt__(self, other: Shape) -> bool:
        return _SHAPE_ORDER[self] < _SHAPE_ORDER[other]


_SHAPE_ORDER = {Shape.CLAW: 0, Shape.TRIANGLE: 1, Shape.PATH: 2}

AllowedSet = frozenset[Shape]
FULL: AllowedSet = frozenset(Shape)

FAMILIES: dict[str, AllowedSet] = {
    "k13": frozenset({Shape.CLAW}),
    "k3": frozenset({Shape.TRIANGLE}),
    "p4": frozenset({Shape.PATH}),
    "k13k3": frozenset({Shape.CLAW, Shape.TRIANGLE}),
    "k3p4": frozenset({Shape.TRIANGLE, Shape.PATH}),
    "k13p4": frozenset({Shape.CLAW, Shape.PATH}),
    "all": FULL,
}


def family_name(allowed: AllowedSet) -> str:
    for name, fam in FAMILIES.items():
        if fam == allowed:
            return name
    raise InvalidInput("allowed set must be nonempty")


@dataclass(frozen=True, order=True)
class Part:
    """One size-3 subgraph.

    ``vertices`` is ``(center, leaf, leaf, leaf)`` for a claw (leaves sorted),
    the sorted triple for a triangle, and the path order ``(a, b, c, d)`` for
    a P4, stored in whichever direction is lexicographically smaller.
    """

    shape: Shape
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vs = tuple(self.vertices)
        want = 3 if self.shape is Shape.TRIANGLE else 4
        if len(vs) != want or len(set(vs)) != want:
            raise InvalidInput(f"{self.shape.value} needs {want} distinct vertices, got {vs}")
        if self.shape is Shape.CLAW:
            vs = (vs[0], *sorted(vs[1:]))
        elif self.shape is Shape.TRIANGLE:
            vs = tuple(sorted(vs))
        else:
            vs = min(vs, vs[::-1])
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def claw(cls, center: int, *leaves: int) -> Part:
        return cls(Shape.CLAW, (center, *leaves))

    @classmethod
    def triangle(cls, a: int, b: int, c: int) -> Part:
        return cls(Shape.TRIANGLE, (a, b, c))

    @classmethod
    def path(cls, a: int, b: int, c: int, d: int) -> Part:
        return cls(Shape.PATH, (a, b, c, d))

    @property
    def edges(self) -> tuple[Edge, Edge, Edge]:
        vs = self.vertices
        if self.shape is Shape.CLAW:
            return (edge(vs[0], vs[1]), edge(vs[0], vs[2]), edge(vs[0], vs[3]))
        if self.shape is Shape.TRIANGLE:
            return (edge(vs[0], vs[1]), edge(vs[0], vs[2]), edge(vs[1], vs[2]))
        return (edge(vs[0], vs[1]), edge(vs[1], vs[2]), edge(vs[2], vs[3]))

    @property
    def middle_edge(self) -> Edge | None:
        if self.shape is not Shape.PATH:
            return None
        return edge(self.vertices[1], self.vertices[2])

    def __str__(self) -> str:
        return f"{self.shape.value} " + " ".join(str(v) for v in self.vertices)


Decomposition = list[Part]


@dataclass(frozen=True)
class MarkedInstance:
    graph: Graph
    marks: frozenset[Edge]

    def __post_init__(self) -> None:
        marks = frozenset(edge(*e) for e in self.marks)
        missing = sorted(marks - set(self.graph.edges))
        if missing:
            raise EdgeNotInGraph(f"marked pairs {missing} are not edges")
        object.__setattr__(self, "marks", marks)


@dataclass
class VerifyReport:
    valid: bool
    violations: list[str]
    shape_counts: dict[Shape, int] = field(default_factory=dict)
    # number of PATH parts through each vertex
    path_incidence: list[int] = field(default_factory=list)

    @property
    def incidence_profile(self) -> tuple[int, int, int]:
        """Counts of vertices lying on exactly one, two and three P4 parts."""
        c = Counter(self.path_incidence)
        return c[1], c[2], c[3]


def classify_part(g: Graph, edges: Sequence[tuple[int, int]]) -> Part | None:
    """Identify the shape formed by three edges of ``g`` (None if disconnected)."""
    es = [edge(*e) for e in edges]
    if len(es) != 3:
        raise InvalidInput("a part has exactly three edges")
    if len(set(es)) != 3:
        raise DuplicateEdge(f"repeated edge among {es}")
    for e in es:
        if e not in g.edge_index:
            raise EdgeNotInGraph(f"{e} is not an edge")
    deg = Counter(v for e in es for v in e)
    sig = sorted(deg.values())
    if sig == [1, 1, 1, 3]:
        center = next(v for v, d in deg.items() if d == 3)
        return Part.claw(center, *(v for v in deg if v != center))
    if sig == [2, 2, 2]:
        return Part.triangle(*deg)
    if sig == [1, 1, 2, 2]:
        ends = [v for v, d in deg.items() if d == 1]
        start = min(ends)
        order = [start]
        left = list(es)
        while left:
            e = next(e for e in left if order[-1] in e)
            left.remove(e)
            order.append(e[0] if e[1] == order[-1] else e[1])
        return Part.path(*order)
    return None


def _check(
    g: Graph, d: Iterable[Part], allowed: AllowedSet
) -> tuple[list[str], Counter[Edge], Counter[Shape], list[int]]:
    violations: list[str] = []
    cover: Counter[Edge] = Counter()
    shapes: Counter[Shape] = Counter()
    path_inc = [0] * g.n
    for i, part in enumerate(d):
        shapes[part.shape] += 1
        if part.shape not in allowed:
            violations.append(f"part {i} ({part}): shape {part.shape.value} not allowed")
        if any(not 0 <= v < g.n for v in part.vertices):
            violations.append(f"part {i} ({part}): vertex out of range")
            continue
        for e in part.edges:
            if e not in g.edge_index:
                violations.append(f"part {i} ({part}): {e} is not an edge")
            cover[e] += 1
        if part.shape is Shape.PATH:
            for v in part.vertices:
                path_inc[v] += 1
    for e in g.edges:
        if cover[e] == 0:
            violations.append(f"edge {e} uncovered")
        elif cover[e] > 1:
            violations.append(f"edge {e} covered {cover[e]} times")
    return violations, cover, shapes, path_inc


def verify(g: Graph, d: Iterable[Part], allowed: AllowedSet = FULL) -> VerifyReport:
    """Check that ``d`` partitions E(g) into parts whose shapes are allowed."""
    violations, _, shapes, path_inc = _check(g, list(d), allowed)
    return VerifyReport(not violations, violations, dict(shapes), path_inc)


def verify_marked(
    inst: MarkedInstance, d: Iterable[Part], allowed: AllowedSet = FULL
) -> VerifyReport:
    """:func:`verify` plus the marked-edge rules.

    No P4 may have a marked middle edge, and every triangle part must contain
    one or two marked edges.
    """
    d = list(d)
    violations, _, shapes, path_inc = _check(inst.graph, d, allowed)
    for i, part in enumerate(d):
        if part.shape is Shape.PATH and part.middle_edge in inst.marks:
            violations.append(f"part {i} ({part}): marked middle edge {part.middle_edge}")
        elif part.shape is Shape.TRIANGLE:
            k = sum(e in inst.marks for e in part.edges)
            if k not in (1, 2):
                violations.append(f"part {i} ({part}): triangle with {k} marked edges")
    return VerifyReport(not violations, violations, dict(shapes), path_inc)
