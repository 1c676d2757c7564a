"""Simple undirected graphs, structural queries, surgery and named gadgets.

Vertices are dense integers ``0..n-1``; an edge is the tuple ``(u, v)`` with
``u < v``.  Graphs are immutable and keep their edge list sorted, so two
graphs with the same edge set compare equal and print identically.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    BadAnchor,
    DuplicateEdge,
    ExhaustedRetries,
    IndexOutOfRange,
    LoopEdge,
    MissingEdge,
    UnknownName,
)

Edge = tuple[int, int]

RANDOM_CUBIC_RETRIES = 10_000


def edge(u: int, v: int) -> Edge:
    """Canonical form of the undirected edge {u, v}."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edge_index

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def is_cubic(self) -> bool:
        return all(len(nb) == 3 for nb in self.adj)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)


def build_graph(n: int, edge_list: Iterable[tuple[int, int]]) -> Graph:
    """Build a canonical simple graph; rejects loops, duplicates and bad ids."""
    if n < 0:
        raise IndexOutOfRange(f"negative vertex count {n}")
    seen: set[Edge] = set()
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        e = edge(u, v)
        if e in seen:
            raise DuplicateEdge(f"edge {e} given twice")
        seen.add(e)
    edges = tuple(sorted(seen))
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(n, edges, tuple(tuple(sorted(nb)) for nb in nbrs))


def _complement_of_cycle(k: int) -> list[Edge]:
    return [(i, j) for i in range(k) for j in range(i + 1, k) if (j - i) % k not in (1, k - 1)]


_NAMED: dict[str, tuple[int, list[Edge]]] = {
    "k4": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    "k33": (6, [(i, j) for i in range(3) for j in range(3, 6)]),
    "cube": (8, [(i, i ^ b) for i in range(8) for b in (1, 2, 4) if i < i ^ b]),
    "prism": (6, _complement_of_cycle(6)),
    "petersen": (
        10,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)],
    ),
    # u=0, v=1, w=2, x=3; {u, x} is the missing edge
    "diamond": (4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
    # a..e = 0..4, f = 5 is the degree-1 attachment vertex
    "cofish": (6, [(0, 1), (0, 3), (0, 5), (1, 2), (1, 4), (2, 3), (2, 4), (3, 4)]),
    "net": (6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]),
    "claw": (4, [(0, 1), (0, 2), (0, 3)]),
    "triangle": (3, [(0, 1), (0, 2), (1, 2)]),
    "p4": (4, [(0, 1), (1, 2), (2, 3)]),
}

NAMED_GRAPHS = tuple(_NAMED)
COFISH_ANCHOR = 5


def named_graph(name: str) -> Graph:
    try:
        n, edges = _NAMED[name.lower()]
    except KeyError:
        raise UnknownName(f"unknown graph {name!r}; choose from {', '.join(_NAMED)}") from None
    return build_graph(n, edges)


@dataclass(frozen=True)
class DegreeProfile:
    counts: dict[int, int]

    @property
    def v1(self) -> int:
        return self.counts.get(1, 0)

    @property
    def v2(self) -> int:
        return self.counts.get(2, 0)

    @property
    def v3(self) -> int:
        return self.counts.get(3, 0)


def degree_profile(g: Graph) -> DegreeProfile:
    return DegreeProfile(dict(sorted(Counter(len(nb) for nb in g.adj).items())))


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, in order of least vertex."""
    comp = [-1] * g.n
    out: list[list[int]] = []
    for s in range(g.n):
        if comp[s] >= 0:
            continue
        comp[s] = len(out)
        members = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if comp[w] < 0:
                    comp[w] = comp[s]
                    members.append(w)
                    queue.append(w)
        out.append(sorted(members))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def is_bipartite(g: Graph) -> list[int] | None:
    """Two-colouring by BFS (each component's least vertex gets colour 0), or None."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def find_bridges(g: Graph) -> list[Edge]:
    """Bridges by iterative low-link DFS, sorted."""
    order = [-1] * g.n
    low = [0] * g.n
    bridges: list[Edge] = []
    counter = 0
    for root in range(g.n):
        if order[root] >= 0:
            continue
        order[root] = low[root] = counter
        counter += 1
        # frames: (vertex, parent, neighbour iterator)
        stack = [(root, -1, iter(g.adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            for w in it:
                if w == parent:
                    continue  # simple graph: one parallel edge at most
                if order[w] < 0:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, u, iter(g.adj[w])))
                    break
                low[u] = min(low[u], order[w])
            else:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[u])
                    if low[u] > order[parent]:
                        bridges.append(edge(parent, u))
    return sorted(bridges)


def find_triangles(g: Graph) -> list[tuple[tuple[int, int, int], bool]]:
    """All triangles (sorted vertex triples, in lex order) with their isolated flag.

    A triangle is isolated when no other triangle shares one of its edges.
    """
    tris = []
    for u, v in g.edges:
        for w in sorted(set(g.adj[u]) & set(g.adj[v])):
            if w > v:
                tris.append((u, v, w))
    tris.sort()
    per_edge: Counter[Edge] = Counter()
    for a, b, c in tris:
        per_edge.update([(a, b), (a, c), (b, c)])
    return [
        (t, all(per_edge[e] == 1 for e in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))))
        for t in tris
    ]


def find_diamond(g: Graph) -> tuple[int, int, int, int] | None:
    """Lexicographically least induced diamond ``(u, v, w, x)``.

    ``{v, w}`` is the shared edge of the two triangles and ``{u, x}`` is a
    non-edge, with ``u < x`` and ``v < w``.
    """
    best = None
    for v, w in g.edges:
        common = sorted(set(g.adj[v]) & set(g.adj[w]))
        for i, u in enumerate(common):
            for x in common[i + 1 :]:
                if not g.has_edge(u, x):
                    cand = (u, v, w, x)
                    if best is None or cand < best:
                        best = cand
    return best


def subdivide(g: Graph, e: tuple[int, int]) -> tuple[Graph, int]:
    """Replace ``e`` by a path through a new vertex, returned with the graph."""
    e = edge(*e)
    if e not in g.edge_index:
        raise MissingEdge(f"{e} is not an edge")
    w = g.n
    edges = [f for f in g.edges if f != e] + [(e[0], w), (e[1], w)]
    return build_graph(g.n + 1, edges), w


def attach_to_edge_mapped(
    g: Graph, h: Graph, e: tuple[int, int], anchor: int
) -> tuple[Graph, list[int]]:
    """Like :func:`attach_to_edge`, also returning where each vertex of ``h`` went."""
    if not 0 <= anchor < h.n:
        raise BadAnchor(f"anchor {anchor} not a vertex of the attached graph")
    sub, w = subdivide(g, e)
    where = []
    nxt = sub.n
    for x in range(h.n):
        if x == anchor:
            where.append(w)
        else:
            where.append(nxt)
            nxt += 1
    edges = list(sub.edges) + [(where[a], where[b]) for a, b in h.edges]
    return build_graph(nxt, edges), where


def attach_to_edge(g: Graph, h: Graph, e: tuple[int, int], anchor: int) -> Graph:
    """Subdivide ``e`` with a new vertex and identify it with ``anchor`` of ``h``.

    The subdivision vertex gets id ``g.n``; the remaining vertices of ``h``
    follow in increasing order of their ids in ``h``.
    """
    return attach_to_edge_mapped(g, h, e, anchor)[0]


def random_cubic(n: int, seed: int) -> Graph:
    """Connected simple cubic graph on ``n`` vertices from the pairing model.

    Pairings with loops, multi-edges or more than one component are rejected
    and redrawn; the result depends only on ``(n, seed)``.
    """
    if n < 4 or n % 2:
        raise ValueError(f"cubic graphs need an even vertex count >= 4, got {n}")
    rng = random.Random(seed)
    points = [p // 3 for p in range(3 * n)]
    for _ in range(RANDOM_CUBIC_RETRIES):
        rng.shuffle(points)
        pairs = [edge(points[i], points[i + 1]) for i in range(0, 3 * n, 2)]
        if any(u == v for u, v in pairs) or len(set(pairs)) != len(pairs):
            continue
        g = build_graph(n, pairs)
        if is_connected(g):
            return g
    raise ExhaustedRetries(f"no simple connected pairing for n={n} in {RANDOM_CUBIC_RETRIES} tries")


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Image of ``g`` under the vertex bijection ``v -> perm[v]``."""
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def enumerate_cubic(n: int) -> list[Graph]:
    """All connected cubic graphs on ``n`` vertices, one per isomorphism class.

    Labelled candidates come from a backtracking search that fills the lowest
    unsaturated vertex and treats untouched vertices as interchangeable;
    isomorphic duplicates are then removed with networkx.
    """
    import networkx as nx

    if n < 4 or n % 2:
        return []
    adj: list[set[int]] = [set() for _ in range(n)]
    found: list[Graph] = []

    def fill(frontier: int, v: int, lo: int) -> None:
        while v < n and len(adj[v]) == 3:
            v += 1
            lo = v + 1
        if v == n:
            found.append(build_graph(n, [(a, b) for a in range(n) for b in adj[a] if a < b]))
            return
        cands = [w for w in range(max(lo, v + 1), frontier) if len(adj[w]) < 3 and w not in adj[v]]
        if frontier < n and frontier >= lo:
            cands.append(frontier)
        for w in cands:
            adj[v].add(w)
            adj[w].add(v)
            fill(max(frontier, w + 1), v, w + 1)
            adj[v].discard(w)
            adj[w].discard(v)

    fill(1, 0, 1)
    buckets: dict[str, list[nx.Graph]] = {}
    out: list[Graph] = []
    for g in found:
        if not is_connected(g):
            continue
        ng = nx.Graph(list(g.edges))
        key = nx.weisfeiler_lehman_graph_hash(ng, iterations=4)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(ng, other) for other in bucket):
            continue
        bucket.append(ng)
        out.append(g)
    return out
