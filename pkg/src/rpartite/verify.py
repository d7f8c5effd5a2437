"""Named verification suites run by ``rpartite verify``.

Each suite returns :class:`Check` records; a failed check is a result,
not an exception.
"""

from __future__ import annotations

import itertools
import random
import time
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .bounds import brouwer_applies, brouwer_threshold, fmax_grid, leading_coefficient, sharpness_edge_formula, sharpness_lower_bound
from .constructions import ConstructionWarning, random_graph, random_near_extremal, sharpness_graph, turan_graph
from .exact import SolveOptions, min_deletions_bruteforce, min_deletions_classwise, min_deletions_exact
from .graph import (
    Graph,
    complete_multipartite,
    cycle_graph,
    find_clique,
    max_degree,
    missing_between,
    turan_number,
)
from .pipeline import degree_majorization, run_pipeline


@dataclass
class Check:
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0
    limit_s: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def _timed(name: str, limit_s: float | None, passed: bool, measured: dict, seconds: float) -> Check:
    ok = passed and (limit_s is None or seconds < limit_s)
    return Check(name, ok, measured, round(seconds, 4), limit_s)


def suite_sharpness() -> list[Check]:
    with _Timer() as clock, warnings.catch_warnings():
        warnings.simplefilter("ignore", ConstructionWarning)
        G, spec = sharpness_graph(18, 2, Fraction(1, 12))
        res = min_deletions_exact(G, SolveOptions(r=2))
        formula = sharpness_lower_bound(18, 2, Fraction(1, 12))
    first = _timed(
        "sharpness-18-2", 1.0,
        res.optimal and res.best_value == 6 == formula and G.m == 67,
        {"exact": res.best_value, "status": res.status.value, "formula": float(formula), "edges": G.m}, clock.seconds,
    )
    with _Timer() as clock, warnings.catch_warnings():
        warnings.simplefilter("ignore", ConstructionWarning)
        G3, spec3 = sharpness_graph(81, 3, Fraction(1, 27))
        classwise = min_deletions_classwise(G3, spec3.parts(), 3)
        e18 = sharpness_edge_formula(18, 2, Fraction(1, 12))
        e81 = sharpness_edge_formula(81, 3, Fraction(1, 27))
        lower81 = sharpness_lower_bound(81, 3, Fraction(1, 27))
    second = _timed(
        "edge-formula", None,
        G.m == e18 == 67 and G3.m == e81 == 2052 and classwise == 54 == lower81,
        {"edges_18": G.m, "formula_18": float(e18), "edges_81": G3.m, "formula_81": float(e81),
         "classwise_81": classwise, "lower_81": float(lower81)}, clock.seconds,
    )
    return [first, second]


def sample_brouwer_instance(n: int, r: int, rng: random.Random) -> Graph:
    """Random ``K_{r+1}``-free graph with at least ``brouwer_threshold(n, r)`` edges.

    Starts from ``T(n, r)``, deletes random cross edges, then tries to add
    random intra-part edges, keeping each only if no ``K_{r+1}`` appears.
    Draws below the threshold are rejected and redrawn.
    """
    threshold = brouwer_threshold(n, r)
    budget = turan_number(n, r) - threshold
    T = turan_graph(n, r)
    cross = T.edges()
    intra = [(u, v) for u, v in itertools.combinations(range(n), 2) if not T.has_edge(u, v)]
    while True:
        tries = rng.randint(0, 3)
        G = T.remove_edges(rng.sample(cross, rng.randint(0, budget + tries)))
        for _ in range(tries):
            u, v = rng.choice(intra)
            if find_clique(G, r - 1, within=G.rows[u] & G.rows[v]) is None:
                G = G.add_edges([(u, v)])
        if G.m >= threshold:
            return G


def suite_brouwer(samples: int = 10_000, seed: int = 2) -> list[Check]:
    configs = [(n, r) for r in (2, 3) for n in range(2 * r + 1, 13) if brouwer_applies(n, r)]
    rng = random.Random(seed)
    failures = []
    with_intra = 0
    with _Timer() as clock:
        for i in range(samples):
            n, r = configs[i % len(configs)]
            G = sample_brouwer_instance(n, r, rng)
            if not _subgraph_of_turan(G, n, r):
                with_intra += 1
            res = min_deletions_exact(G, SolveOptions(r=r, want_partition=False))
            if not (res.optimal and res.best_value == 0) or find_clique(G, r + 1) is not None:
                failures.append({"n": n, "r": r, "edges": G.edges()})
    return [_timed("brouwer", 300.0, not failures,
                   {"samples": samples, "failures": len(failures), "not_turan_subgraph": with_intra,
                    "first_failure": failures[0] if failures else None}, clock.seconds)]


def _subgraph_of_turan(G: Graph, n: int, r: int) -> bool:
    T = turan_graph(n, r)
    return all(T.has_edge(u, v) for u, v in G.edges())


def furedi_instances(count: int = 200, seed: int = 3):
    """Seeded ``(n, r, t, G)`` draws with ``n`` in [10, 40], ``t`` in [0, n]."""
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(10, 40)
        r = rng.choice((2, 3))
        t = rng.randint(0, n)
        yield n, r, t, random_near_extremal(n, r, t, seed=rng.randrange(2**32))


def majorization_violations(G: Graph, r: int, t: int) -> list[str]:
    major = degree_majorization(G, r)
    if major.parts is None:
        return ["clique witness returned"]
    parts = major.parts
    out = []
    internal = sum(G.induced_edges(p) for p in parts)
    if internal > t:
        out.append(f"internal {internal} > t {t}")
    if max_degree(G) != sum(len(p) for p in parts[1:]):
        out.append("max degree differs from |V_2| + ... + |V_r|")
    missing = sum(missing_between(G, parts[i], parts[j]) for i, j in itertools.combinations(range(r), 2))
    if missing > 2 * t:
        out.append(f"cross non-edges {missing} > 2t {2 * t}")
    return out


def suite_furedi(count: int = 200, seed: int = 3) -> list[Check]:
    over, lemma = [], []
    with _Timer() as clock:
        for n, r, t, G in furedi_instances(count, seed):
            res = run_pipeline(G, r)
            if res.deletions > t:
                over.append({"n": n, "r": r, "t": t, "deletions": res.deletions})
            bad = majorization_violations(G, r, t)
            if bad:
                lemma.append({"n": n, "r": r, "t": t, "violations": bad})
    return [
        _timed("furedi-pipeline", 30.0, not over, {"instances": count, "violations": over}, clock.seconds),
        _timed("majorization-lemma", None, not lemma, {"instances": count, "violations": lemma}, clock.seconds),
    ]


def suite_rpartite_turan() -> list[Check]:
    host = complete_multipartite([2, 2, 2])
    edges = host.edges()
    fewest_missing = None
    with _Timer() as clock:
        for bits in range(1 << len(edges)):
            dropped = [e for j, e in enumerate(edges) if not bits >> j & 1]
            if find_clique(host.remove_edges(dropped), 3) is None:
                missing = len(dropped)
                fewest_missing = missing if fewest_missing is None else min(fewest_missing, missing)
    return [_timed("rpartite-turan", 1.0, fewest_missing is not None and fewest_missing >= 4,
                   {"subgraphs": 1 << len(edges), "fewest_missing": fewest_missing}, clock.seconds)]


def suite_fmax(tol: float = 1e-8) -> list[Check]:
    measured = {}
    ok = True
    with _Timer() as clock:
        for r in range(2, 11):
            value, arg = fmax_grid(r)
            good = value <= leading_coefficient(r) + tol and abs(arg - 2 * r / 3) <= 1e-3
            ok &= good
            measured[str(r)] = {"max": value, "argmax": arg, "bound": leading_coefficient(r), "pass": good}
    return [_timed("fmax", None, ok, measured, clock.seconds)]


def suite_oracle(count: int = 100, seed: int = 5) -> list[Check]:
    rng = random.Random(seed)
    mismatches = []
    with _Timer() as clock:
        for i in range(count):
            n = rng.randint(1, 10)
            r = rng.choice((2, 3))
            G = random_graph(n, rng.uniform(0.2, 0.8), seed=rng.randrange(2**32))
            exact = min_deletions_exact(G, SolveOptions(r=r))
            brute, _ = min_deletions_bruteforce(G, r)
            if not exact.optimal or exact.best_value != brute:
                mismatches.append({"n": n, "r": r, "exact": exact.best_value, "brute": brute})
    return [_timed("oracle", 60.0, not mismatches, {"graphs": count, "mismatches": mismatches}, clock.seconds)]


def triangle_free_maxima(n_max: int) -> list[int]:
    """``ex(n, K_3)`` for ``n = 0..n_max`` by exhaustive search.

    Enumerates triangle-free graphs up to isomorphism by adding a vertex
    joined to an independent set; the last level only needs
    ``max(e(G) + independence number)`` over the previous classes.
    """
    import networkx as nx

    def independent_sets(G: nx.Graph):
        nodes = list(G)
        for size in range(len(nodes) + 1):
            for combo in itertools.combinations(nodes, size):
                if not any(G.has_edge(a, b) for a, b in itertools.combinations(combo, 2)):
                    yield combo

    maxima = [0]
    classes = [nx.empty_graph(0)]
    for n in range(1, n_max + 1):
        maxima.append(max(G.number_of_edges() + max(len(s) for s in independent_sets(G)) for G in classes))
        if n == n_max:
            break
        buckets: dict[str, list[nx.Graph]] = {}
        for G in classes:
            for s in independent_sets(G):
                H = G.copy()
                H.add_node(n - 1)
                H.add_edges_from((n - 1, v) for v in s)
                key = nx.weisfeiler_lehman_graph_hash(H)
                bucket = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(H, K) for K in bucket):
                    bucket.append(H)
        classes = [H for bucket in buckets.values() for H in bucket]
    return maxima


def suite_turan_numbers() -> list[Check]:
    with _Timer() as clock:
        sandwich_fail = [
            (n, r) for n in range(0, 201) for r in range(1, 11)
            if not (n * n * (1 - 1 / r) / 2 - r / 2 <= turan_number(n, r) <= n * n * (1 - 1 / r) / 2)
        ]
        fixtures = {"5,2": turan_number(5, 2), "18,2": turan_number(18, 2), "6,3": turan_number(6, 3)}
        maxima = triangle_free_maxima(8)
        exhaustive_fail = [n for n in range(9) if maxima[n] != turan_number(n, 2)]
    ok = not sandwich_fail and not exhaustive_fail and fixtures == {"5,2": 6, "18,2": 81, "6,3": 12}
    return [_timed("turan-numbers", None, ok,
                   {"sandwich_failures": sandwich_fail, "exhaustive_maxima": maxima,
                    "exhaustive_failures": exhaustive_fail, "fixtures": fixtures}, clock.seconds)]


def suite_pipeline() -> list[Check]:
    with _Timer() as clock:
        res = run_pipeline(cycle_graph(5), 2)
    tr = res.trace
    ok = (
        res.deletions == 1
        and [p.to_list() for p in tr.V] == [[0, 2, 3], [1, 4]]
        and tr.anchors == (0, 1)
        and tr.X.to_list() == [3]
        and tr.X_bar.to_list() == []
        and [p.to_list() for p in res.partition.parts()] == [[0, 2, 3], [1, 4]]
    )
    return [_timed("pipeline-c5", None, ok, res.to_dict(), clock.seconds)]


SUITES = {
    "sharpness": suite_sharpness,
    "brouwer": suite_brouwer,
    "furedi": suite_furedi,
    "rpartite-turan": suite_rpartite_turan,
    "fmax": suite_fmax,
    "oracle": suite_oracle,
    "turan-numbers": suite_turan_numbers,
    "pipeline": suite_pipeline,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [check for suite in SUITES.values() for check in suite()]
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all") from None
    return suite()
