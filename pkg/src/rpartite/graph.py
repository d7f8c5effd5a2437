"""Immutable simple graphs backed by bit rows.

Each vertex ``v`` owns an ``int`` whose bit ``u`` is set iff ``uv`` is an
edge. Vertex sets use the same encoding, so neighbourhood arithmetic is
plain ``&``, ``|`` and ``int.bit_count``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

N_MAX = 4096


class GraphError(ValueError):
    """Raised for malformed graph input."""


class CapacityError(GraphError):
    """Raised when a graph would exceed the configured vertex capacity."""


class DuplicateEdgeWarning(UserWarning):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def as_mask(vertices) -> int:
    if isinstance(vertices, VertexSet):
        return vertices.mask
    if isinstance(vertices, int):
        return vertices
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class VertexSet:
    """A subset of ``range(n)`` stored as a bitmask."""

    n: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise GraphError(f"vertex set {self.mask:#x} outside range(0, {self.n})")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        return cls(n, as_mask(vertices))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.mask >> v & 1)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask & as_mask(other))

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask | as_mask(other))

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.mask & ~as_mask(other))

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.mask)

    def isdisjoint(self, other) -> bool:
        return not (self.mask & as_mask(other))

    def to_list(self) -> list[int]:
        return list(iter_bits(self.mask))

    def __repr__(self) -> str:
        return f"VertexSet({self.to_list()})"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Build instances with :func:`build_graph` or the constructors below;
    ``rows`` is trusted to be symmetric with an empty diagonal.
    """

    n: int
    rows: tuple[int, ...]
    m: int = field(compare=False)

    @property
    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.n, self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self.rows):
            out.extend((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))
        return out

    def induced_edges(self, vertices) -> int:
        """Number of edges of ``G[vertices]``."""
        mask = as_mask(vertices)
        return sum((self.rows[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return _from_rows(rows)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.rows)
        for u, v in edges:
            _check_pair(self.n, u, v)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return _from_rows(rows)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _from_rows(rows: Sequence[int], capacity: int = N_MAX) -> Graph:
    n = len(rows)
    if n > capacity:
        raise CapacityError(f"{n} vertices exceeds capacity {capacity}")
    m = sum(row.bit_count() for row in rows)
    return Graph(n, tuple(rows), m // 2)


def _check_pair(n: int, u: int, v: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"edge ({u}, {v}) has an endpoint outside range(0, {n})")
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")


def build_graph(n: int, edges: Iterable[tuple[int, int]], capacity: int = N_MAX) -> Graph:
    """Build a graph from unordered pairs.

    Duplicate pairs are collapsed and reported with a
    :class:`DuplicateEdgeWarning`.
    """
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    if n > capacity:
        raise CapacityError(f"{n} vertices exceeds capacity {capacity}")
    rows = [0] * n
    duplicates = 0
    for u, v in edges:
        _check_pair(n, u, v)
        if rows[u] >> v & 1:
            duplicates += 1
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    if duplicates:
        warnings.warn(f"collapsed {duplicates} duplicate edge(s)", DuplicateEdgeWarning, stacklevel=2)
    return _from_rows(rows, capacity)


def empty_graph(n: int) -> Graph:
    return _from_rows([0] * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return _from_rows([full & ~(1 << v) for v in range(n)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """``K(n_1, ..., n_r)`` with parts laid out as consecutive blocks."""
    n = sum(sizes)
    full = (1 << n) - 1
    rows = []
    start = 0
    for size in sizes:
        block = ((1 << size) - 1) << start
        rows.extend([full & ~block] * size)
        start += size
    return _from_rows(rows)


def max_degree(G: Graph) -> int:
    return max(G.degrees(), default=0)


def edges_between(G: Graph, U, W) -> int:
    """``e(U, W)`` for disjoint vertex sets."""
    u_mask, w_mask = as_mask(U), as_mask(W)
    if u_mask & w_mask:
        raise GraphError("vertex sets overlap")
    return sum((G.rows[v] & w_mask).bit_count() for v in iter_bits(u_mask))


def missing_between(G: Graph, U, W) -> int:
    """``e^c(U, W) = |U||W| - e(U, W)``."""
    u_mask, w_mask = as_mask(U), as_mask(W)
    return u_mask.bit_count() * w_mask.bit_count() - edges_between(G, u_mask, w_mask)


@dataclass(frozen=True)
class Partition:
    """Assignment of every vertex to one of ``r`` parts.

    ``internal`` holds the per-part induced edge counts for the graph the
    partition was built against.
    """

    r: int
    part_of: tuple[int, ...]
    internal: tuple[int, ...]

    @classmethod
    def from_assignment(cls, G: Graph, r: int, part_of: Sequence[int]) -> "Partition":
        if len(part_of) != G.n:
            raise GraphError(f"assignment covers {len(part_of)} vertices, graph has {G.n}")
        if any(not 0 <= p < r for p in part_of):
            raise GraphError(f"part index outside range(0, {r})")
        masks = [0] * r
        for v, p in enumerate(part_of):
            masks[p] |= 1 << v
        internal = tuple(G.induced_edges(mask) for mask in masks)
        return cls(r, tuple(part_of), internal)

    @classmethod
    def from_parts(cls, G: Graph, parts: Sequence) -> "Partition":
        part_of = [-1] * G.n
        for i, part in enumerate(parts):
            for v in iter_bits(as_mask(part)):
                if part_of[v] != -1:
                    raise GraphError(f"vertex {v} appears in two parts")
                part_of[v] = i
        if -1 in part_of:
            raise GraphError(f"vertex {part_of.index(-1)} is not covered")
        return cls.from_assignment(G, len(parts), part_of)

    @property
    def total(self) -> int:
        return sum(self.internal)

    def parts(self) -> list[VertexSet]:
        n = len(self.part_of)
        masks = [0] * self.r
        for v, p in enumerate(self.part_of):
            masks[p] |= 1 << v
        return [VertexSet(n, mask) for mask in masks]

    def internal_edge_list(self, G: Graph) -> list[tuple[int, int]]:
        return [(u, v) for u, v in G.edges() if self.part_of[u] == self.part_of[v]]


def internal_edges(G: Graph, P: Partition) -> tuple[list[int], int]:
    """Per-part induced edge counts of ``P`` in ``G`` and their total."""
    counts = [G.induced_edges(part) for part in P.parts()]
    return counts, sum(counts)


def find_clique(G: Graph, k: int, within: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically least ``k``-clique (as a sorted tuple), or ``None``."""
    if k < 1:
        raise ValueError("clique size must be at least 1")
    rows = G.rows
    start = (1 << G.n) - 1 if within is None else within

    def colors_reach(cand: int, need: int) -> bool:
        # greedy colouring: fewer than `need` colour classes rules out a clique
        count = 0
        while cand:
            count += 1
            if count >= need:
                return True
            q = cand
            while q:
                low = q & -q
                cand ^= low
                q &= ~low & ~rows[low.bit_length() - 1]
        return False

    def extend(cand: int, need: int, chosen: list[int]):
        if need == 0:
            return tuple(chosen)
        if need > 2 and not colors_reach(cand, need):
            return None
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            chosen.append(v)
            found = extend(cand & rows[v], need - 1, chosen)
            if found:
                return found
            chosen.pop()
        return None

    return extend(start, k, [])


def is_clique_free(G: Graph, k: int) -> tuple[bool, tuple[int, ...] | None]:
    """``(True, None)`` if ``G`` has no ``k``-clique, else ``(False, witness)``."""
    witness = find_clique(G, k)
    return witness is None, witness


def blow_up(H: Graph, sizes: Sequence[int]) -> Graph:
    """Replace vertex ``v`` of ``H`` by ``sizes[v]`` independent copies.

    Copies are numbered block by block in vertex order of ``H``.
    """
    if len(sizes) != H.n:
        raise GraphError(f"need {H.n} sizes, got {len(sizes)}")
    if any(s < 0 for s in sizes):
        raise GraphError("blow-up sizes must be nonnegative")
    blocks = []
    start = 0
    for s in sizes:
        blocks.append(((1 << s) - 1) << start)
        start += s
    rows = []
    for v, s in enumerate(sizes):
        row = 0
        for w in iter_bits(H.rows[v]):
            row |= blocks[w]
        rows.extend([row] * s)
    return _from_rows(rows)


def join(G: Graph, H: Graph, capacity: int = N_MAX) -> Graph:
    """``G ⊗ H``: disjoint union plus every edge between the two sides.

    ``G`` occupies vertices ``0..n_G-1`` and ``H`` the rest.
    """
    n = G.n + H.n
    if n > capacity:
        raise CapacityError(f"{n} vertices exceeds capacity {capacity}")
    g_mask = (1 << G.n) - 1
    h_mask = ((1 << H.n) - 1) << G.n
    rows = [row | h_mask for row in G.rows]
    rows += [(row << G.n) | g_mask for row in H.rows]
    return _from_rows(rows, capacity)


def turan_part_sizes(n: int, r: int) -> list[int]:
    q, s = divmod(n, r)
    return [q + 1] * s + [q] * (r - s)


def turan_number(n: int, r: int) -> int:
    """``ex(n, K_{r+1})``: edges of the balanced complete ``r``-partite graph."""
    if r < 1 or n < 0:
        raise ValueError("need r >= 1 and n >= 0")
    sizes = turan_part_sizes(n, r)
    return (n * n - sum(s * s for s in sizes)) // 2
