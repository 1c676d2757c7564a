"""Text formats: graphs (.edg), marks, decompositions and positive 3-CNF.

Files use 1-based vertex ids; everything in memory is 0-based.  Blank lines
and lines starting with ``#`` are ignored everywhere (``c`` comments too in
CNF files).
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .errors import FormatError, GraphError
from .graph import Edge, Graph, build_graph, edge
from .model import Part, Shape
from .reductions import CnfFormula


def _content_lines(text: str, comment: str = "#") -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith(comment):
            yield no, line.split()


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", no) from None


def parse_graph(text: str) -> Graph:
    """Parse ``p edge N M`` followed by ``e u v`` lines."""
    n = m = None
    edges: list[Edge] = []
    for no, tok in _content_lines(text):
        if tok[0] == "p":
            if n is not None or len(tok) != 4 or tok[1] != "edge":
                raise FormatError("expected a single 'p edge N M' header", no)
            n, m = _ints(tok[2:], no)
        elif tok[0] == "e":
            if n is None:
                raise FormatError("edge line before the header", no)
            if len(tok) != 3:
                raise FormatError("expected 'e u v'", no)
            u, v = _ints(tok[1:], no)
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"unknown line type {tok[0]!r}", no)
    if n is None:
        raise FormatError("missing 'p edge N M' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return build_graph(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def format_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_marks(text: str, g: Graph) -> frozenset[Edge]:
    marks = set()
    for no, tok in _content_lines(text):
        if tok[0] != "m" or len(tok) != 3:
            raise FormatError("expected 'm u v'", no)
        u, v = _ints(tok[1:], no)
        e = edge(u - 1, v - 1)
        if not g.has_edge(*e):
            raise FormatError(f"marked pair {u} {v} is not an edge", no)
        marks.add(e)
    return frozenset(marks)


def format_marks(marks: Iterable[Edge]) -> str:
    return "".join(f"m {u + 1} {v + 1}\n" for u, v in sorted(marks))


_ARITY = {Shape.CLAW: 4, Shape.TRIANGLE: 3, Shape.PATH: 4}


def parse_decomposition(text: str) -> list[Part]:
    parts = []
    for no, tok in _content_lines(text):
        try:
            shape = Shape(tok[0])
        except ValueError:
            raise FormatError(f"unknown part type {tok[0]!r}", no) from None
        if len(tok) != _ARITY[shape] + 1:
            raise FormatError(f"{shape.value} needs {_ARITY[shape]} vertices", no)
        vs = [v - 1 for v in _ints(tok[1:], no)]
        try:
            parts.append(Part(shape, tuple(vs)))
        except ValueError as exc:
            raise FormatError(str(exc), no) from exc
    return parts


def format_part(p: Part) -> str:
    return p.shape.value + " " + " ".join(str(v + 1) for v in p.vertices)


def format_decomposition(d: Iterable[Part]) -> str:
    return "".join(format_part(p) + "\n" for p in d)


def parse_cnf(text: str) -> CnfFormula:
    """DIMACS CNF restricted to positive literals and exactly three per clause."""
    header = None
    clauses: list[tuple[int, int, int]] = []
    pending: list[int] = []
    for no, tok in _content_lines(text, comment="c"):
        if tok[0] == "p":
            if header is not None or len(tok) != 4 or tok[1] != "cnf":
                raise FormatError("expected a single 'p cnf V C' header", no)
            header = tuple(_ints(tok[2:], no))
            continue
        if tok[0] in ("%", "#"):
            continue
        if header is None:
            raise FormatError("clause before the header", no)
        for lit in _ints(tok, no):
            if lit < 0:
                raise FormatError("negated literals are not supported", no)
            if lit > header[0]:
                raise FormatError(f"variable {lit} exceeds the declared {header[0]}", no)
            if lit:
                pending.append(lit - 1)
                continue
            if len(pending) != 3:
                raise FormatError(f"clause has {len(pending)} literals, expected 3", no)
            clauses.append(tuple(pending))
            pending = []
    if header is None:
        raise FormatError("missing 'p cnf V C' header")
    if pending:
        raise FormatError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise FormatError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def format_cnf(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    lines += [" ".join(str(x + 1) for x in c) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


def read_text(path: str | Path) -> str:
    return Path(path).read_text()
