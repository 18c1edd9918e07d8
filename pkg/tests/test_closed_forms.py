import itertools
from fractions import Fraction

import pytest

from corpus import corpus
from graphscan.census import census_closed_form
from graphscan.closed_forms import (P1_CORRECTIONS, P2_CORRECTIONS, example1_closed_form,
                                    example1_probabilities, example2_closed_form,
                                    example2_probabilities, representatives)
from graphscan.moments import MomentError, MomentSpec, product_moment, config_contributions

GRAPHS = {k: g for k, g in corpus().items() if g.n >= 4}


def e1(r, s, t):
    return MomentSpec.of((r, 1), (r, 1), (s, 1), (t, 1))


def e2(r, s, t):
    return MomentSpec.of((r, 2), (s, 1), (s, 2), (t, 1))


def test_representatives():
    assert [representatives(c) for c in range(1, 20)] == [
        1, 7, 7, 6, 18, 6, 18, 6, 1, 12, 3, 12, 12, 4, 12, 4, 3, 6, 1]


@pytest.mark.parametrize("n", [8, 11])
def test_polynomials_count_representatives_when_events_are_certain(n):
    p = example1_probabilities(n, n, n, n)
    assert all(p[c] == representatives(c) for c in p)


@pytest.mark.parametrize("name", ["P5", "S6", "MST10", "KNN7"])
def test_example1_per_configuration(name):
    g = GRAPHS[name]
    c = census_closed_form(g)
    for r, s, t in itertools.combinations(range(1, g.n), 3):
        contrib = config_contributions(g, e1(r, s, t))
        probs = example1_probabilities(g.n, r, s, t)
        for cfg in range(1, 20):
            assert c.count(cfg) * probs[cfg] / representatives(cfg) == contrib[cfg - 1]


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_examples_equal_product_moment(name):
    g = GRAPHS[name]
    c = census_closed_form(g)
    for r, s, t in itertools.combinations(range(1, g.n), 3):
        assert example1_closed_form(g.n, r, s, t, c) == product_moment(g, e1(r, s, t))
        assert example2_closed_form(g.n, r, s, t, c) == product_moment(g, e2(r, s, t))


def test_example2_allows_equal_first_thresholds():
    g = GRAPHS["KNN9"]
    c = census_closed_form(g)
    assert example2_closed_form(g.n, 3, 3, 6, c) == product_moment(g, e2(3, 3, 6))
    with pytest.raises(MomentError):
        example1_closed_form(g.n, 3, 3, 6, c)


def test_printed_polynomials_differ_only_where_corrected():
    n, r, s, t = 13, 3, 6, 10
    for fn, fixes in ((example1_probabilities, P1_CORRECTIONS),
                      (example2_probabilities, P2_CORRECTIONS)):
        a, b = fn(n, r, s, t), fn(n, r, s, t, printed=True)
        changed = {cfg for cfg in a if a[cfg] != b[cfg]}
        assert changed == set(fixes)


def test_printed_example2_is_wrong_on_an_mst():
    g = GRAPHS["MST10"]
    c = census_closed_form(g)
    truth = product_moment(g, e2(2, 4, 7))
    assert example2_closed_form(g.n, 2, 4, 7, c) == truth
    assert example2_closed_form(g.n, 2, 4, 7, c, printed=True) != truth
    assert isinstance(truth, Fraction)
