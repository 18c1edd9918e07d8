import itertools

import pytest
from hypothesis import given, settings, strategies as st

from corpus import corpus
from graphscan.census import (CORRECTIONS, BudgetError, census_bruteforce, census_closed_form,
                              classify_tuple, graph_functionals)
from graphscan.graph import Graph, complete_graph, path_graph, star_graph
from graphscan.patterns import PATTERNS, config_of

GRAPHS = corpus()


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(2, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=min(len(pairs), 12),
                           unique=True))
    return Graph(n, chosen)


def test_patterns_are_pairwise_non_isomorphic():
    assert len({config_of(p) for p in PATTERNS}) == 19
    assert [config_of(p) for p in PATTERNS] == list(range(1, 20))


def test_classify_tuple_on_path():
    g = path_graph(5)
    assert classify_tuple(g, [(1, 2)] * 4) == 1
    assert classify_tuple(g, [(1, 2), (2, 3), (3, 4), (4, 5)]) == 10


def test_functionals_on_triangle():
    x = graph_functionals(complete_graph(3))["x"]
    assert x[0] == 6          # ordered pairs of adjacent edges
    assert x[4] == 3          # a single triangle counts three times


def test_star_has_no_disjoint_pairs():
    c = census_closed_form(star_graph(4))
    assert c.count(3) == 0 and c.count(9) == 24


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_closed_form_equals_bruteforce_on_corpus(name):
    g = GRAPHS[name]
    a, b = census_closed_form(g), census_bruteforce(g)
    assert a.counts == b.counts
    assert sum(a.counts) == g.m**4


def test_printed_counts_miss_triangles():
    g = complete_graph(3)
    printed = census_closed_form(g, printed=True)
    fixed = census_closed_form(g)
    assert sum(printed.counts) != g.m**4
    assert any("config 5" in f for f in fixed.flags)
    assert printed.count(5) - fixed.count(5) == 36 * 3
    assert set(CORRECTIONS) == {5, 19}


def test_printed_counts_are_exact_on_forests():
    g = GRAPHS["MST10"]
    assert census_closed_form(g, printed=True).counts == census_bruteforce(g).counts


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_closed_form_equals_bruteforce_random(g):
    assert census_closed_form(g).counts == census_bruteforce(g).counts


def test_bruteforce_budget():
    with pytest.raises(BudgetError):
        census_bruteforce(complete_graph(12))
