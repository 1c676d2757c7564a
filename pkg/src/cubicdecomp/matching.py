"""Maximum-cardinality matching (Edmonds' blossom algorithm) and 2-factors."""

from __future__ import annotations

from collections import deque

from .errors import NotCubic, NotPerfect
from .graph import Edge, Graph, edge

Matching = frozenset[Edge]


def _augmenting_path_end(g: Graph, mate: list[int], root: int, parent: list[int]) -> int:
    """BFS for an augmenting path from ``root``, contracting odd cycles.

    Fills ``parent`` for the odd vertices of the alternating tree and returns
    the free endpoint reached, or -1.
    """
    n = g.n
    base = list(range(n))
    in_tree = [False] * n
    in_tree[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] < 0:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_blossom(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in g.adj[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] >= 0 and parent[mate[to]] >= 0):
                cur = lca(v, to)
                in_blossom = [False] * n
                mark_blossom(v, cur, to, in_blossom)
                mark_blossom(to, cur, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = cur
                        if not in_tree[i]:
                            in_tree[i] = True
                            queue.append(i)
            elif parent[to] < 0:
                parent[to] = v
                if mate[to] < 0:
                    return to
                in_tree[mate[to]] = True
                queue.append(mate[to])
    return -1


def maximum_matching(g: Graph) -> Matching:
    """A maximum matching; free vertices are grown from in ascending order."""
    mate = [-1] * g.n
    for root in range(g.n):
        if mate[root] >= 0:
            continue
        parent = [-1] * g.n
        end = _augmenting_path_end(g, mate, root, parent)
        while end >= 0:
            prev = parent[end]
            nxt = mate[prev]
            mate[end], mate[prev] = prev, end
            end = nxt
    return frozenset(edge(v, mate[v]) for v in range(g.n) if mate[v] > v)


def perfect_matching(g: Graph) -> Matching | None:
    if g.n % 2:
        return None
    m = maximum_matching(g)
    return m if 2 * len(m) == g.n else None


def is_matching(g: Graph, m: Matching) -> bool:
    covered: set[int] = set()
    for u, v in m:
        if not g.has_edge(u, v) or u in covered or v in covered:
            return False
        covered.update((u, v))
    return True


def two_factor_cycles(g: Graph, m: Matching) -> list[list[int]]:
    """Cycles of ``g - m`` for cubic ``g`` and perfect matching ``m``.

    Each cycle starts at its least vertex and heads to that vertex's smaller
    remaining neighbour; cycles are listed by least vertex.
    """
    if not g.is_cubic():
        raise NotCubic("two_factor_cycles needs a cubic graph")
    m = frozenset(edge(*e) for e in m)
    if not is_matching(g, m) or 2 * len(m) != g.n:
        raise NotPerfect("not a perfect matching of the graph")
    rest = [[w for w in g.adj[v] if edge(v, w) not in m] for v in range(g.n)]
    seen = [False] * g.n
    cycles = []
    for s in range(g.n):
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = True
        prev, cur = s, rest[s][0]
        while cur != s:
            cyc.append(cur)
            seen[cur] = True
            a, b = rest[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(cyc)
    return cycles
