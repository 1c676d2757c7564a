"""2-SAT via strongly connected components of the implication graph."""

from __future__ import annotations

from typing import Iterable

# A literal is (variable, polarity); (3, False) means "not x3".
Literal = tuple[int, bool]


def _node(lit: Literal) -> int:
    var, pol = lit
    return 2 * var + (0 if pol else 1)


def _sccs(n: int, succ: list[list[int]]) -> list[int]:
    """Tarjan's algorithm, iterative; component ids come out in reverse topological order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for j in range(i, len(succ[v])):
                w = succ[v][j]
                if index[w] < 0:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comp


def solve_2sat(num_vars: int, clauses: Iterable[tuple[Literal, Literal]]) -> list[bool] | None:
    """Satisfying assignment for a conjunction of 2-clauses, or None."""
    n = 2 * num_vars
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b in clauses:
        # (a or b) == (!a -> b) and (!b -> a)
        succ[_node(a) ^ 1].append(_node(b))
        succ[_node(b) ^ 1].append(_node(a))
    comp = _sccs(n, succ)
    out = []
    for var in range(num_vars):
        t, f = comp[2 * var], comp[2 * var + 1]
        if t == f:
            return None
        # Tarjan numbers sinks first; pick the literal whose component is closer to a sink
        out.append(t < f)
    return out
