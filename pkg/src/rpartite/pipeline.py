"""Constructive partitioning of near-extremal ``K_{r+1}``-free graphs.

Stages, in order:

1. degree majorization: peel off max-degree vertices into ``V_1..V_r``;
2. big vertices: keep the vertices of each ``V_i`` that miss few
   neighbours outside their own part;
3. anchors: a transversal ``K_r`` ``x_1..x_r`` through the big sets;
4. classes: ``X_i`` = common neighbourhood of the anchors other than
   ``x_i``; the leftover vertices form the exceptional set ``X``;
5. split ``X`` into high-degree ``X̄`` and the rest ``X̂``;
6. send every exceptional vertex to the class where it has the fewest
   neighbours.

The refined partition is compared with the majorization partition and
the better one is returned, so the result never has more than ``t``
internal edges on ``K_{r+1}``-free input.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bounds import alpha_of, regime_ok
from .graph import (
    Graph,
    Partition,
    VertexSet,
    as_mask,
    find_clique,
    iter_bits,
)


class CliqueFoundError(ValueError):
    """The input contains ``K_{r+1}``; ``witness`` lists its vertices."""

    def __init__(self, witness: Sequence[int]):
        self.witness = tuple(sorted(witness))
        super().__init__(f"graph contains a clique on {list(self.witness)}")


class StageFailure(RuntimeError):
    pass


class Stage(str, enum.Enum):
    MAJORIZATION = "majorization"
    BIG_SETS = "big_sets"
    ANCHORS = "anchors"
    CLASSES = "classes"
    SPLIT = "split"
    ASSIGNED = "assigned"


@dataclass(frozen=True)
class PipelineParams:
    big_slack_mult: float = 5.0
    bar_threshold_mult: float = 3.0
    alpha_override: float | Fraction | None = None
    allow_fallback: bool = True

    def __post_init__(self):
        if self.big_slack_mult < 0 or self.bar_threshold_mult < 0:
            raise ValueError("multipliers must be nonnegative")


@dataclass
class PipelineTrace:
    t: int = 0
    alpha: Fraction | float = 0
    V: list[VertexSet] = field(default_factory=list)
    Big: list[VertexSet] = field(default_factory=list)
    anchors: tuple[int, ...] | None = None
    X_parts: list[VertexSet] = field(default_factory=list)
    X: VertexSet | None = None
    X_bar: VertexSet | None = None
    X_hat: VertexSet | None = None
    d: float = 0.0
    k: float = 0.0
    deviations: list[float] = field(default_factory=list)
    deviation_bound: float = 0.0
    regime_ok: bool = False

    def to_dict(self) -> dict:
        def sets(items):
            return [s.to_list() for s in items]

        return {
            "t": self.t,
            "alpha": float(self.alpha),
            "parts": sets(self.V),
            "big_sets": sets(self.Big),
            "anchors": list(self.anchors) if self.anchors is not None else None,
            "x_classes": sets(self.X_parts),
            "exceptional": self.X.to_list() if self.X is not None else None,
            "x_bar": self.X_bar.to_list() if self.X_bar is not None else None,
            "x_hat": self.X_hat.to_list() if self.X_hat is not None else None,
            "d": self.d,
            "k": self.k,
            "deviations": self.deviations,
            "deviation_bound": self.deviation_bound,
            "regime_ok": self.regime_ok,
        }


@dataclass
class PipelineResult:
    partition: Partition
    deletions: int
    trace: PipelineTrace
    used_fallback: bool
    stage_reached: Stage

    def to_dict(self) -> dict:
        doc = self.trace.to_dict()
        doc["stage_reached"] = self.stage_reached.value
        doc["used_fallback"] = self.used_fallback
        doc["deletions"] = self.deletions
        return doc


@dataclass(frozen=True)
class Majorization:
    parts: list[VertexSet] | None
    centers: tuple[int, ...]
    witness: tuple[int, ...] | None = None


def _max_degree_vertex(G: Graph, within: int) -> int:
    best, best_deg = -1, -1
    for v in iter_bits(within):
        deg = (G.rows[v] & within).bit_count()
        if deg > best_deg:
            best, best_deg = v, deg
    return best


def degree_majorization(G: Graph, r: int) -> Majorization:
    """Erdős' degree majorization: ``V_i = V_{i-1}^+ \\ N(x_i)``.

    ``x_i`` is a max-degree vertex of ``G[V_{i-1}^+]`` (lowest index on
    ties). If ``V_r^+`` is nonempty the centres plus one more vertex form
    a ``K_{r+1}``, which is returned as ``witness`` instead of parts.
    """
    n = G.n
    remaining = (1 << n) - 1
    parts: list[VertexSet] = []
    centers: list[int] = []
    while remaining and len(parts) < r:
        x = _max_degree_vertex(G, remaining)
        centers.append(x)
        parts.append(VertexSet(n, remaining & ~G.rows[x]))
        remaining &= G.rows[x]
    if remaining:
        extra = _max_degree_vertex(G, remaining)
        return Majorization(None, tuple(centers), tuple(sorted(centers + [extra])))
    parts += [VertexSet(n, 0)] * (r - len(parts))
    return Majorization(parts, tuple(centers))


def big_vertex_sets(G: Graph, V_parts: Sequence[VertexSet], alpha, params: PipelineParams = PipelineParams()) -> list[VertexSet]:
    n, r = G.n, len(V_parts)
    slack = params.big_slack_mult * r * float(alpha) * n
    full = (1 << n) - 1
    out = []
    for part in V_parts:
        outside = full & ~as_mask(part)
        need = outside.bit_count() - slack
        mask = 0
        for v in iter_bits(as_mask(part)):
            if (G.rows[v] & outside).bit_count() >= need:
                mask |= 1 << v
        out.append(VertexSet(n, mask))
    return out


def find_anchor_clique(G: Graph, big_sets: Sequence[VertexSet]) -> tuple[int, ...] | None:
    """Lexicographically least ``(x_1, ..., x_r)`` with ``x_i ∈ Big_i`` forming a clique."""
    masks = [as_mask(b) for b in big_sets]
    r = len(masks)

    def extend(i: int, common: int, chosen: list[int]):
        if i == r:
            return tuple(chosen)
        for v in iter_bits(masks[i] & common):
            chosen.append(v)
            found = extend(i + 1, common & G.rows[v], chosen)
            if found:
                return found
            chosen.pop()
        return None

    return extend(0, (1 << G.n) - 1, [])


def common_neighborhood_classes(G: Graph, anchors: Sequence[int]) -> tuple[list[VertexSet], VertexSet]:
    """``X_i`` = common neighbourhood of all anchors but ``x_i``; ``X`` = the rest.

    A vertex in several ``X_i`` goes to the least index. Raises
    :class:`CliqueFoundError` if some ``X_i`` spans an edge.
    """
    n, r = G.n, len(anchors)
    full = (1 << n) - 1
    taken = 0
    classes = []
    for i in range(r):
        common = full
        for j, x in enumerate(anchors):
            if j != i:
                common &= G.rows[x]
        common &= ~taken
        taken |= common
        for u in iter_bits(common):
            clash = G.rows[u] & common
            if clash:
                v = (clash & -clash).bit_length() - 1
                raise CliqueFoundError([u, v] + [x for j, x in enumerate(anchors) if j != i])
        classes.append(VertexSet(n, common))
    return classes, VertexSet(n, full & ~taken)


def split_exceptional(G: Graph, X: VertexSet, X_parts: Sequence[VertexSet], alpha,
                      params: PipelineParams = PipelineParams()) -> tuple[VertexSet, VertexSet, float, float]:
    """Split ``X`` by degree into ``∪X_i``; returns ``(X̄, X̂, d, k)``."""
    n, r = G.n, len(X_parts)
    a = float(alpha)
    union = 0
    for part in X_parts:
        union |= as_mask(part)
    if union & as_mask(X):
        raise ValueError("X meets the classes")
    threshold = (r - 2) / r * n + params.bar_threshold_mult * a ** (1 / 3) * n
    bar = 0
    for v in X:
        if (G.rows[v] & union).bit_count() >= threshold:
            bar |= 1 << v
    size = len(X)
    d = bar.bit_count() / size if size else 0.0
    k = size / (a * n) if a > 0 else 0.0
    return VertexSet(n, bar), VertexSet(n, as_mask(X) & ~bar), d, k


def assign_exceptional(G: Graph, X_bar: VertexSet, X_hat: VertexSet, X_parts: Sequence[VertexSet]) -> dict[int, int]:
    """Map each exceptional vertex to the class holding fewest of its neighbours.

    Ties go to the lowest class index.
    """
    masks = [as_mask(p) for p in X_parts]
    out = {}
    for u in sorted(list(X_bar) + list(X_hat)):
        counts = [(G.rows[u] & mask).bit_count() for mask in masks]
        out[u] = counts.index(min(counts))
    return out


def run_pipeline(G: Graph, r: int, params: PipelineParams = PipelineParams()) -> PipelineResult:
    """Partition ``G`` into ``r`` parts following the stability argument.

    Raises :class:`CliqueFoundError` when ``G`` contains ``K_{r+1}``. With
    ``allow_fallback`` off, a failed refinement stage raises
    :class:`StageFailure` instead of returning the majorization partition.
    """
    witness = find_clique(G, r + 1)
    if witness is not None:
        raise CliqueFoundError(witness)
    n = G.n
    trace = PipelineTrace()
    t, alpha = alpha_of(G, r)
    if params.alpha_override is not None:
        alpha = params.alpha_override
    trace.t, trace.alpha = t, alpha
    trace.regime_ok = n > 0 and regime_ok(n, r, alpha)

    major = degree_majorization(G, r)
    if major.witness is not None:
        raise CliqueFoundError(major.witness)
    trace.V = major.parts
    trace.deviations = [abs(len(p) - n / r) for p in major.parts]
    trace.deviation_bound = 2.5 * math.sqrt(float(alpha)) * n
    base = Partition.from_parts(G, major.parts)

    def fallback(stage: Stage, reason: str) -> PipelineResult:
        if not params.allow_fallback:
            raise StageFailure(f"{reason} after stage {stage.value}")
        return PipelineResult(base, base.total, trace, True, stage)

    # alpha = 0 means G is Turán-extremal and the majorization is already clean
    if alpha == 0:
        return PipelineResult(base, base.total, trace, True, Stage.MAJORIZATION)

    trace.Big = big_vertex_sets(G, major.parts, alpha, params)
    if any(len(b) == 0 for b in trace.Big):
        return fallback(Stage.BIG_SETS, "empty big-vertex set")
    anchors = find_anchor_clique(G, trace.Big)
    if anchors is None:
        return fallback(Stage.BIG_SETS, "no transversal clique through the big sets")
    trace.anchors = anchors

    trace.X_parts, trace.X = common_neighborhood_classes(G, anchors)
    trace.X_bar, trace.X_hat, trace.d, trace.k = split_exceptional(G, trace.X, trace.X_parts, alpha, params)
    target = assign_exceptional(G, trace.X_bar, trace.X_hat, trace.X_parts)

    part_of = [0] * n
    for i, part in enumerate(trace.X_parts):
        for v in part:
            part_of[v] = i
    for u, i in target.items():
        part_of[u] = i
    refined = Partition.from_assignment(G, r, part_of)
    if base.total < refined.total:
        return PipelineResult(base, base.total, trace, True, Stage.ASSIGNED)
    return PipelineResult(refined, refined.total, trace, False, Stage.ASSIGNED)

