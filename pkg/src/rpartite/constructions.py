"""Generators for the graph families used in experiments."""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import exact_sqrt
from .graph import (
    Graph,
    GraphError,
    VertexSet,
    blow_up,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    is_clique_free,
    join,
    turan_number,
    turan_part_sizes,
)

# Sizes of the sharpness construction in rounding order. Vertices are laid
# out in cycle order A, X, B, C, D followed by the join parts.
SIZE_ORDER_BASE = ("X", "A", "B", "C", "D")
CYCLE_ORDER = ("A", "X", "B", "C", "D")


class ConstructionWarning(UserWarning):
    pass


def turan_graph(n: int, r: int) -> Graph:
    """Balanced complete ``r``-partite graph; larger parts come first."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return complete_multipartite(turan_part_sizes(n, r))


def c5_blowup(sizes: Sequence[int]) -> Graph:
    if len(sizes) != 5:
        raise GraphError("a C5 blow-up needs exactly 5 sizes")
    return blow_up(cycle_graph(5), sizes)


def conjecture_family(r: int, cycle_sizes: Sequence[int], join_sizes: Sequence[int]) -> Graph:
    """Blow-up of ``C_5 ⊗ K_{r-2}``.

    The five cycle classes come first, then the ``r - 2`` join classes.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    if len(join_sizes) != r - 2:
        raise GraphError(f"need {r - 2} join sizes, got {len(join_sizes)}")
    base = join(cycle_graph(5), complete_graph(r - 2))
    return blow_up(base, list(cycle_sizes) + list(join_sizes))


def _exact_sqrt(q: Fraction) -> Fraction | float:
    root = exact_sqrt(q)
    return math.sqrt(q) if root is None else root


def sharpness_sizes(n: int, r: int, alpha) -> dict[str, Fraction | float]:
    """Real-valued part sizes; exact ``Fraction``s unless ``alpha`` is a float
    or ``alpha/3`` is not a rational square."""
    if isinstance(alpha, float):
        side = math.sqrt(alpha / 3) * n
        x = 2 * r / 3 * alpha * n
        join_part = (1 - 2 * r / 3 * alpha) / r * n
    else:
        a = Fraction(alpha)
        side = _exact_sqrt(a / 3) * n
        x = Fraction(2 * r, 3) * a * n
        join_part = (1 - Fraction(2 * r, 3) * a) / r * n
    sizes = {"X": x, "A": side, "B": side, "C": join_part - side, "D": join_part - side}
    for i in range(1, r - 1):
        sizes[f"X_{i}"] = join_part
    return sizes


def round_sizes(values: Sequence) -> tuple[list[int], bool]:
    """Floor each value, then hand out the shortfall by largest remainder.

    Ties in the remainder go to the later part. Returns the integer sizes
    and whether any value was non-integral.
    """
    floors = [math.floor(v) for v in values]
    remainders = [v - f for v, f in zip(values, floors)]
    applied = any(rem != 0 for rem in remainders)
    shortfall = round(sum(values)) - sum(floors)
    ranked = sorted(range(len(values)), key=lambda i: (remainders[i], i), reverse=True)
    for i in ranked[:shortfall]:
        floors[i] += 1
    return floors, applied


@dataclass(frozen=True)
class ConstructionSpec:
    n: int
    r: int
    alpha: Fraction | float
    sizes: dict[str, int]
    rounding_applied: bool
    realized_n: int
    alpha_in_range: bool

    def parts(self) -> list[VertexSet]:
        """Vertex classes in layout order (cycle classes, then join classes)."""
        names = list(CYCLE_ORDER) + [f"X_{i}" for i in range(1, self.r - 1)]
        out, start = [], 0
        for name in names:
            size = self.sizes[name]
            out.append(VertexSet(self.realized_n, ((1 << size) - 1) << start))
            start += size
        return out

    def to_dict(self) -> dict:
        alpha = self.alpha
        return {
            "n": self.n,
            "r": self.r,
            "alpha": str(alpha) if isinstance(alpha, Fraction) else alpha,
            "sizes": dict(self.sizes),
            "rounding_applied": self.rounding_applied,
        }


def sharpness_graph(n: int, r: int, alpha) -> tuple[Graph, ConstructionSpec]:
    """Unbalanced ``C_5 ⊗ K_{r-2}`` blow-up with ``D_r`` about ``(2r/3√3) α^{3/2} n^2``.

    Classes ``A, X, B, C, D`` form the blown-up 5-cycle (``X`` adjacent to
    ``A`` and ``B``), and each ``X_i`` is joined to everything outside it.
    Pass ``alpha`` as a ``Fraction`` to keep integral sizes exact.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if n < r:
        raise ValueError("need n >= r")
    in_range = alpha < Fraction(1, 4 * r**4)
    if not in_range:
        warnings.warn(f"alpha={alpha} is outside (0, 1/(4r^4)); graph is still K_{r + 1}-free",
                      ConstructionWarning, stacklevel=2)
    real = sharpness_sizes(n, r, alpha)
    names = list(SIZE_ORDER_BASE) + [f"X_{i}" for i in range(1, r - 1)]
    values = [real[name] for name in names]
    rounded, applied = round_sizes(values)
    if any(s < 0 for s in rounded):
        raise ValueError(f"alpha={alpha} gives a negative part size")
    sizes = dict(zip(names, rounded))
    spec = ConstructionSpec(n, r, alpha, sizes, applied, sum(rounded), in_range)
    G = conjecture_family(r, [sizes[c] for c in CYCLE_ORDER], [sizes[f"X_{i}"] for i in range(1, r - 1)])
    free, witness = is_clique_free(G, r + 1)
    assert free, f"sharpness graph contains K_{r + 1}: {witness}"
    return G, spec


def random_near_extremal(n: int, r: int, t: int, seed: int) -> Graph:
    """``T(n, r)`` minus ``t`` distinct edges chosen uniformly at random."""
    total = turan_number(n, r)
    if not 0 <= t <= total:
        raise ValueError(f"t must lie in [0, {total}]")
    T = turan_graph(n, r)
    rng = random.Random(seed)
    return T.remove_edges(rng.sample(T.edges(), t))


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi ``G(n, p)`` with a seeded generator."""
    rng = random.Random(seed)
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(n, tuple(rows), sum(r.bit_count() for r in rows) // 2)
