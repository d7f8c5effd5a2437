"""Exact minimum edge deletion to r-partiteness.

``D_r(G)`` is the least number of edges inside the parts over all
assignments of vertices to ``r`` parts; equivalently ``e(G)`` minus a
maximum ``r``-cut. :func:`min_deletions_exact` is a depth-first
branch-and-bound; :func:`min_deletions_bruteforce` enumerates every
assignment and exists to cross-check it.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, GraphError, Partition, as_mask, edges_between, iter_bits

BRUTEFORCE_GUARD = 10**8
CLASSWISE_MAX_PARTS = 12


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    TIMEOUT = "timeout"
    NODE_LIMIT = "node-limit"


@dataclass(frozen=True)
class SolveOptions:
    r: int
    time_limit: float = 0.0  # seconds, 0 = unlimited
    node_limit: int = 0  # 0 = unlimited
    want_partition: bool = True
    canonical_tiebreak: bool = False
    strong_bound: bool = True

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be at least 1")


@dataclass(frozen=True)
class SolveResult:
    status: Status
    best_value: int
    best_partition: Partition | None
    nodes_explored: int

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


class _Limit(Exception):
    def __init__(self, status: Status):
        self.status = status


class _Done(Exception):
    pass


def _canonical_labels(part_of: Sequence[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(p, len(relabel)) for p in part_of)


class _Search:
    def __init__(self, G: Graph, r: int, time_limit: float, node_limit: int, strong_bound: bool):
        self.G = G
        self.r = r
        self.rows = G.rows
        self.strong = strong_bound
        self.node_limit = node_limit
        self.deadline = time.perf_counter() + time_limit if time_limit > 0 else None
        self.nodes = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_limit and self.nodes > self.node_limit:
            raise _Limit(Status.NODE_LIMIT)
        if self.deadline is not None and self.nodes & 255 == 0 and time.perf_counter() > self.deadline:
            raise _Limit(Status.TIMEOUT)

    def _bound(self, order: Sequence[int], start: int, masks: list[int], used: int) -> int:
        if not self.strong or used < self.r:
            return 0
        rows = self.rows
        total = 0
        for v in order[start:]:
            row = rows[v]
            total += min((row & mask).bit_count() for mask in masks)
        return total

    def greedy(self, order: Sequence[int]) -> tuple[int, list[int]]:
        """Greedy assignment followed by single-vertex improving moves."""
        n, r, rows = self.G.n, self.r, self.rows
        masks = [0] * r
        part_of = [0] * n
        for v in order:
            costs = [(rows[v] & mask).bit_count() for mask in masks]
            p = costs.index(min(costs))
            part_of[v] = p
            masks[p] |= 1 << v
        improved = True
        while improved:
            improved = False
            for v in range(n):
                cur = part_of[v]
                costs = [(rows[v] & mask).bit_count() for mask in masks]
                p = costs.index(min(costs))
                if costs[p] < costs[cur]:
                    masks[cur] ^= 1 << v
                    masks[p] |= 1 << v
                    part_of[v] = p
                    improved = True
        cost = sum(self.G.induced_edges(mask) for mask in masks)
        return cost, part_of

    def minimize(self, order: Sequence[int], best: int, best_assign: list[int] | None):
        """Branch and bound below ``best``; returns the improved incumbent."""
        n, r, rows = self.G.n, self.r, self.rows
        masks = [0] * r
        assign = [0] * n
        self.best = best
        self.best_assign = best_assign

        def dfs(depth: int, cost: int, used: int) -> None:
            self._tick()
            if depth == n:
                self.best = cost
                self.best_assign = list(assign)
                if cost == 0:
                    raise _Done
                return
            v = order[depth]
            row = rows[v]
            limit = min(used + 1, r)
            children = sorted(range(limit), key=lambda p: (row & masks[p]).bit_count())
            for p in children:
                new_cost = cost + (row & masks[p]).bit_count()
                if new_cost >= self.best:
                    continue
                masks[p] |= 1 << v
                assign[v] = p
                new_used = max(used, p + 1)
                if new_cost + self._bound(order, depth + 1, masks, new_used) < self.best:
                    dfs(depth + 1, new_cost, new_used)
                masks[p] ^= 1 << v

        if n == 0:
            self.best = 0
            self.best_assign = []
            return
        try:
            # first vertex in branch order is pinned to part 0
            masks[0] = 1 << order[0]
            assign[order[0]] = 0
            dfs(1, 0, 1)
        except _Done:
            pass

    def first_at(self, target: int) -> list[int] | None:
        """Lexicographically least assignment (index order) costing ``target``."""
        n, r, rows = self.G.n, self.r, self.rows
        order = list(range(n))
        masks = [0] * r
        assign = [0] * n

        def dfs(depth: int, cost: int, used: int):
            self._tick()
            if depth == n:
                return list(assign) if cost == target else None
            v = depth
            row = rows[v]
            for p in range(min(used + 1, r)):
                new_cost = cost + (row & masks[p]).bit_count()
                if new_cost > target:
                    continue
                masks[p] |= 1 << v
                assign[v] = p
                new_used = max(used, p + 1)
                found = None
                if new_cost + self._bound(order, depth + 1, masks, new_used) <= target:
                    found = dfs(depth + 1, new_cost, new_used)
                masks[p] ^= 1 << v
                if found is not None:
                    return found
            return None

        if n == 0:
            return []
        return dfs(0, 0, 0)


def branch_order(G: Graph) -> list[int]:
    degrees = G.degrees()
    return sorted(range(G.n), key=lambda v: (-degrees[v], v))


def min_deletions_exact(G: Graph, opts: SolveOptions | int) -> SolveResult:
    """Compute ``D_r(G)`` by branch and bound.

    With a time or node limit the search may stop early; the result then
    carries a non-optimal status and the best deletion count found, which
    is always achievable.
    """
    if isinstance(opts, int):
        opts = SolveOptions(r=opts)
    search = _Search(G, opts.r, opts.time_limit, opts.node_limit, opts.strong_bound)
    order = branch_order(G)
    best, best_assign = search.greedy(order)
    status = Status.OPTIMAL
    try:
        if best > 0:
            search.minimize(order, best, best_assign)
            best, best_assign = search.best, search.best_assign
    except _Limit as stop:
        status = stop.status
        best, best_assign = search.best, search.best_assign
    if status is Status.OPTIMAL and opts.canonical_tiebreak:
        try:
            best_assign = search.first_at(best)
        except _Limit:
            # value stays proven optimal; only the tie-break was cut short
            pass
    partition = None
    if opts.want_partition:
        partition = Partition.from_assignment(G, opts.r, _canonical_labels(best_assign))
        assert partition.total == best
    return SolveResult(status, best, partition, search.nodes)


def is_r_partite(G: Graph, r: int) -> bool:
    """True iff ``G`` is ``r``-colourable, i.e. ``D_r(G) = 0``."""
    search = _Search(G, r, 0.0, 0, True)
    order = branch_order(G)
    cost, _ = search.greedy(order)
    if cost == 0:
        return True
    # incumbent 1 means only zero-cost completions survive pruning
    search.minimize(order, 1, None)
    return search.best == 0


def min_deletions_bruteforce(G: Graph, r: int) -> tuple[int, Partition]:
    """Exhaustive minimum over all assignments with vertex 0 in part 0."""
    if r < 1:
        raise ValueError("r must be at least 1")
    n = G.n
    if r**n > BRUTEFORCE_GUARD:
        raise ValueError(f"r^n = {r}^{n} exceeds the brute-force guard {BRUTEFORCE_GUARD}")
    edges = G.edges()
    if n == 0:
        return 0, Partition.from_assignment(G, r, [])
    best, best_assign = None, None
    for tail in itertools.product(range(r), repeat=n - 1):
        assign = (0,) + tail
        cost = sum(1 for u, v in edges if assign[u] == assign[v])
        if best is None or cost < best:
            best, best_assign = cost, assign
    return best, Partition.from_assignment(G, r, best_assign)


def min_deletions_classwise(G: Graph, parts: Sequence, r: int) -> int:
    """Best deletion count when each of ``parts`` moves as a whole block.

    An upper bound on ``D_r(G)``; tight for blow-ups whose optimal cut
    never splits a blown-up vertex.
    """
    masks = [as_mask(p) for p in parts]
    k = len(masks)
    if k > CLASSWISE_MAX_PARTS:
        raise ValueError(f"{k} parts exceeds the limit of {CLASSWISE_MAX_PARTS}")
    covered = 0
    for mask in masks:
        if covered & mask:
            raise GraphError("parts overlap")
        covered |= mask
    if covered != (1 << G.n) - 1:
        raise GraphError("parts do not cover the vertex set")
    if k == 0:
        return 0
    inside = [G.induced_edges(mask) for mask in masks]
    between = [[0] * k for _ in range(k)]
    for a, b in itertools.combinations(range(k), 2):
        between[a][b] = between[b][a] = edges_between(G, masks[a], masks[b])
    best = None
    for tail in itertools.product(range(r), repeat=k - 1):
        cls = (0,) + tail
        cost = sum(inside)
        for a, b in itertools.combinations(range(k), 2):
            if cls[a] == cls[b]:
                cost += between[a][b]
        if best is None or cost < best:
            best = cost
    return best
