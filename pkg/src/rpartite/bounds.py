"""Closed-form bounds for the r-partite deletion problem.

Real-valued evaluators use IEEE doubles. The two sharpness formulas are
exact ``Fraction``s when ``alpha`` is rational and ``alpha/3`` is a
rational square, which is the case on every integral construction.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, turan_number

Number = float | Fraction | int

SQRT3 = math.sqrt(3.0)


def leading_coefficient(r: int) -> float:
    """``2r / (3*sqrt(3))``, the sharp constant in front of ``alpha^{3/2} n^2``."""
    return 2 * r / (3 * SQRT3)


def main_upper_bound(n: int, r: int, alpha: Number) -> float:
    a = float(alpha)
    if a < 0:
        raise ValueError("alpha must be nonnegative")
    return (leading_coefficient(r) + 30 * r**3 * a ** (1 / 6)) * a**1.5 * n * n


def exact_sqrt(q: Fraction) -> Fraction | None:
    """``sqrt(q)`` as a ``Fraction`` when ``q`` is a rational square, else ``None``."""
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _exact_alpha_root(alpha: Number) -> tuple[Fraction, Fraction] | None:
    # (alpha, sqrt(alpha/3)) exactly, or None if that needs an irrational
    if isinstance(alpha, float):
        return None
    a = Fraction(alpha)
    root = exact_sqrt(a / 3)
    return None if root is None else (a, root)


def sharpness_lower_bound(n: int, r: int, alpha: Number) -> Number:
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    exact = _exact_alpha_root(alpha)
    if exact:
        a, root = exact
        return Fraction(2 * r, 3) * a * root * n * n
    return leading_coefficient(r) * float(alpha) ** 1.5 * n * n


def sharpness_edge_formula(n: int, r: int, alpha: Number) -> Number:
    """Edge count of the sharpness construction, term by term."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    nn = n * n
    exact = _exact_alpha_root(alpha)
    if exact:
        a, root = exact
        return (
            Fraction(r - 1, r) * nn / 2
            - a * nn
            + Fraction(4 * r, 3) * a * root * nn
            - Fraction(2 * r * (r - 3), 9) * a * a * nn
        )
    a = float(alpha)
    return (
        (1 - 1 / r) * nn / 2
        - a * nn
        + 4 * r / (3 * SQRT3) * a**1.5 * nn
        - 2 * r * (r - 3) / 9 * a * a * nn
    )


def c_alpha(r: int, alpha: Number, d: float, k: float) -> float:
    if not 0 <= d <= 1:
        raise ValueError("d must lie in [0, 1]")
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = float(alpha)
    return 20 * r * r * a ** (4 / 3) + (1 - (1 - d) * k / r) * a


def brouwer_threshold(n: int, r: int) -> int:
    """Edge count above which a ``K_{r+1}``-free graph must be ``r``-partite.

    Only meaningful for ``n >= 2r + 1``; see :func:`brouwer_applies`.
    """
    return turan_number(n, r) - n // r + 2


def brouwer_applies(n: int, r: int) -> bool:
    return r >= 2 and n >= 2 * r + 1


def alpha_of(G: Graph, r: int) -> tuple[int, Fraction]:
    """Turán deficit ``t`` of ``G`` and ``alpha = t / n^2``."""
    t = max(0, turan_number(G.n, r) - G.m)
    alpha = Fraction(t, G.n * G.n) if G.n else Fraction(0)
    return t, alpha


def regime_ok(n: int, r: int, alpha: Number) -> bool:
    """Whether ``(n, r, alpha)`` lies in the regime where main_upper_bound is proven.

    Requires ``n >= 3r^2``, ``alpha <= 1e-7 r^-12`` and
    ``alpha >= 1/(2rn)``. Informational only.
    """
    if n < 3 * r * r:
        return False
    return Fraction(1, 2 * r * n) <= alpha <= 1e-7 * r**-12


def f_z(z, r: int):
    """``z * sqrt(1 - z/r)``, maximised at ``z = 2r/3``."""
    return z * np.sqrt(1 - np.asarray(z) / r)


def fmax_grid(r: int, step: float = 1e-4) -> tuple[float, float]:
    """Grid maximum of :func:`f_z` on ``[0, r]``: ``(max value, argmax)``."""
    z = np.linspace(0.0, r, int(round(r / step)) + 1)
    values = f_z(z, r)
    i = int(np.argmax(values))
    return float(values[i]), float(z[i])


@dataclass(frozen=True)
class BoundReport:
    n: int
    r: int
    alpha: float
    t: int
    main_upper: float
    sharpness_lower: float
    sharpness_edges: float
    furedi_upper: int
    brouwer_threshold: int
    regime_ok: bool

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(n: int, r: int, alpha: Number) -> BoundReport:
    # e >= ex - alpha n^2 with e integral is the same as e >= ex - floor(alpha n^2)
    t = math.floor(Fraction(alpha) * n * n)
    return BoundReport(
        n=n,
        r=r,
        alpha=float(alpha),
        t=t,
        main_upper=main_upper_bound(n, r, alpha),
        sharpness_lower=float(sharpness_lower_bound(n, r, alpha)),
        sharpness_edges=float(sharpness_edge_formula(n, r, alpha)),
        furedi_upper=t,
        brouwer_threshold=brouwer_threshold(n, r),
        regime_ok=regime_ok(n, r, alpha),
    )
