import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rpartite.bounds import sharpness_edge_formula
from rpartite.constructions import (
    ConstructionWarning,
    c5_blowup,
    conjecture_family,
    random_near_extremal,
    round_sizes,
    sharpness_graph,
    turan_graph,
)
from rpartite.graph import (
    blow_up,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    empty_graph,
    is_clique_free,
    join,
    turan_number,
)

quiet = pytest.mark.filterwarnings("ignore::rpartite.constructions.ConstructionWarning")


@pytest.mark.parametrize("n, r, sizes, m", [(5, 2, [3, 2], 6), (6, 3, [2, 2, 2], 12), (7, 3, [3, 2, 2], 16)])
def test_turan_graph(n, r, sizes, m):
    G = turan_graph(n, r)
    assert G == complete_multipartite(sizes)
    assert G.m == m == turan_number(n, r)
    assert is_clique_free(G, r + 1)[0]


def test_c5_blowup_examples():
    assert c5_blowup([1] * 5) == cycle_graph(5)
    assert c5_blowup([3, 2, 3, 5, 5]).m == 3 * 2 + 2 * 3 + 3 * 5 + 5 * 5 + 5 * 3 == 67
    assert c5_blowup([0, 0, 4, 0, 2]) == empty_graph(6)


@given(st.lists(st.integers(0, 6), min_size=5, max_size=5))
def test_c5_blowups_triangle_free(sizes):
    assert is_clique_free(c5_blowup(sizes), 3)[0]


def test_conjecture_family_examples():
    assert conjecture_family(2, [1] * 5, []) == cycle_graph(5)
    wheel = conjecture_family(3, [1] * 5, [1])
    assert wheel == join(cycle_graph(5), complete_graph(1)) and wheel.m == 10
    with pytest.warns(ConstructionWarning):
        G18, _ = sharpness_graph(18, 2, Fraction(1, 12))
    assert conjecture_family(2, [3, 2, 3, 5, 5], []) == G18


@settings(max_examples=40)
@given(st.integers(2, 5), st.lists(st.integers(0, 3), min_size=5, max_size=5), st.data())
def test_conjecture_family_free(r, cycle, data):
    joined = data.draw(st.lists(st.integers(0, 3), min_size=r - 2, max_size=r - 2))
    G = conjecture_family(r, cycle, joined)
    assert is_clique_free(G, r + 1)[0]
    assert conjecture_family(2, cycle, []) == c5_blowup(cycle)


@quiet
def test_sharpness_18():
    G, spec = sharpness_graph(18, 2, Fraction(1, 12))
    assert spec.sizes == {"X": 2, "A": 3, "B": 3, "C": 5, "D": 5}
    assert not spec.rounding_applied and spec.realized_n == 18
    assert G.m == 67 == sharpness_edge_formula(18, 2, Fraction(1, 12))
    assert not spec.alpha_in_range


@quiet
def test_sharpness_81():
    G, spec = sharpness_graph(81, 3, Fraction(1, 27))
    assert spec.sizes == {"X": 6, "A": 9, "B": 9, "C": 16, "D": 16, "X_1": 25}
    cycle = 9 * 6 + 6 * 9 + 9 * 16 + 16 * 16 + 16 * 9
    assert cycle == 652
    assert G.m == cycle + 25 * 56 == 2052
    assert is_clique_free(G, 4)[0]


def test_sharpness_degenerate_rounding():
    G, spec = sharpness_graph(10, 2, 1e-6)
    assert spec.sizes == {"X": 0, "A": 0, "B": 0, "C": 5, "D": 5}
    assert spec.rounding_applied
    assert G == complete_multipartite([5, 5])


def test_sharpness_float_alpha_matches_fraction():
    with pytest.warns(ConstructionWarning):
        G, spec = sharpness_graph(18, 2, 1 / 12)
    assert spec.sizes["X"] == 2 and G.m == 67


def test_sharpness_errors():
    with pytest.raises(ValueError):
        sharpness_graph(18, 2, 0)
    with pytest.raises(ValueError):
        sharpness_graph(18, 1, 0.01)
    with pytest.raises(ValueError), pytest.warns(ConstructionWarning):
        sharpness_graph(18, 2, Fraction(1, 2))


def test_spec_json():
    _, spec = sharpness_graph(100, 3, Fraction(1, 1000))
    doc = json.loads(json.dumps(spec.to_dict()))
    assert set(doc) == {"n", "r", "alpha", "sizes", "rounding_applied"}
    assert doc["alpha"] == "1/1000"


@quiet
@settings(max_examples=100)
@given(st.integers(3, 400), st.integers(2, 5), st.floats(1e-6, 0.003))
def test_sharpness_sizes_sum_to_n(n, r, alpha):
    if n < r:
        return
    G, spec = sharpness_graph(n, r, alpha)
    assert sum(spec.sizes.values()) == n == G.n
    assert all(s >= 0 for s in spec.sizes.values())
    assert is_clique_free(G, r + 1)[0]


def test_round_sizes_ties_go_to_later_parts():
    assert round_sizes([Fraction(1, 2), Fraction(1, 2), 1]) == ([0, 1, 1], True)
    assert round_sizes([1.2, 2.8]) == ([1, 3], True)
    assert round_sizes([2, 3]) == ([2, 3], False)


@quiet
@pytest.mark.parametrize("n, r, alpha", [(18, 2, Fraction(1, 12)), (81, 3, Fraction(1, 27)),
                                         (144, 2, Fraction(1, 48)), (144, 4, Fraction(1, 48))])
def test_integral_sizes_edge_identity(n, r, alpha):
    G, spec = sharpness_graph(n, r, alpha)
    assert not spec.rounding_applied
    assert G.m == sharpness_edge_formula(n, r, alpha)


def test_random_near_extremal():
    assert random_near_extremal(9, 3, 0, 4) == turan_graph(9, 3)
    assert random_near_extremal(10, 2, 25, 1) == empty_graph(10)
    G = random_near_extremal(20, 2, 5, 7)
    assert G.m == 95 and is_clique_free(G, 3)[0]
    assert G == random_near_extremal(20, 2, 5, 7)
    assert all(turan_graph(20, 2).has_edge(u, v) for u, v in G.edges())
    with pytest.raises(ValueError):
        random_near_extremal(10, 2, 26, 0)


def test_random_near_extremal_seeds_differ():
    assert len({random_near_extremal(12, 2, 6, s) for s in range(10)}) > 1
