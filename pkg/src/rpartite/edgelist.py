"""Plain-text edge lists.

Format: optional ``#`` comment lines, a header ``"<n> <m>"``, then ``m``
lines ``"<u> <v>"`` with ``0 <= u < v < n`` and no repeats. Writers emit
edges in lexicographic order so files are byte-stable.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .graph import Graph, GraphError, build_graph


class EdgeListError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def parse_edge_list(lines: Iterable[str]) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise EdgeListError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListError(f"expected two integers, got {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListError("negative header value", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not 0 <= a < b < n:
            raise EdgeListError(f"edge {a} {b} violates 0 <= u < v < {n}", lineno)
        if (a, b) in seen:
            raise EdgeListError(f"duplicate edge {a} {b}", lineno)
        seen.add((a, b))
        edges.append((a, b))
    if header is None:
        raise EdgeListError("missing '<n> <m>' header")
    if len(edges) != header[1]:
        raise EdgeListError(f"header declares {header[1]} edges, found {len(edges)}")
    return build_graph(header[0], edges)


def format_edge_list(G: Graph, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{G.n} {G.m}")
    out.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(out) + "\n"


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh)


def write_edge_list(G: Graph, path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_edge_list(G, comments), encoding="utf-8")
