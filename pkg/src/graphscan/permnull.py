"""Exact probabilities of node-position events under a uniform permutation.

Under the permutation null the observed order of the ``n`` observations is a
uniformly random permutation, so node ``i`` lands at a uniformly random
position and distinct nodes land at distinct positions. An event says that
each of ``d`` distinct nodes lands in a given contiguous position range.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class ConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class NodeConstraint:
    """Node ``node`` must land at a position in ``lo..hi`` (inclusive, 1-based).

    ``lo > hi`` encodes the empty range; such events have probability 0.
    """

    node: int
    lo: int
    hi: int


def falling(x: int, k: int) -> int:
    """Falling factorial ``x (x-1) ... (x-k+1)``; zero when ``k > x >= 0``."""
    out = 1
    for i in range(k):
        out *= x - i
        if out == 0:
            return 0
    return out


def _check(n, constraints):
    seen = set()
    for c in constraints:
        if c.node in seen:
            raise ConstraintError(f"node {c.node} constrained twice")
        seen.add(c.node)
    return [(max(c.lo, 1), min(c.hi, n)) for c in constraints]


@lru_cache(maxsize=1 << 18)
def count_placements(n: int, intervals: tuple[tuple[int, int], ...]) -> int:
    """Number of injective placements of ``len(intervals)`` nodes into ``1..n``
    with node ``k`` inside ``intervals[k]``.

    ``intervals`` should be sorted so that equal multisets share a cache entry.
    """
    if any(lo > hi for lo, hi in intervals):
        return 0
    cuts = sorted({0, n} | {lo - 1 for lo, _ in intervals} | {hi for _, hi in intervals})
    sizes = [b - a for a, b in zip(cuts, cuts[1:])]
    where = {c: k for k, c in enumerate(cuts)}
    spans = [range(where[lo - 1], where[hi]) for lo, hi in intervals]
    # dynamic program over nodes; state = how many nodes sit in each bucket
    states = {(0,) * len(sizes): 1}
    for span in spans:
        nxt: dict[tuple[int, ...], int] = {}
        for state, ways in states.items():
            for b in span:
                free = sizes[b] - state[b]
                if free <= 0:
                    continue
                key = state[:b] + (state[b] + 1,) + state[b + 1:]
                nxt[key] = nxt.get(key, 0) + ways * free
        states = nxt
        if not states:
            return 0
    return sum(states.values())


def interval_probability(n: int, intervals) -> Fraction:
    """Probability that distinct nodes land in the given ranges."""
    intervals = tuple(sorted(intervals))
    d = len(intervals)
    if d > n:
        return Fraction(0)
    return Fraction(count_placements(n, intervals), falling(n, d))


def event_probability(n: int, constraints) -> Fraction:
    """Exact probability that every constrained node lands in its range.

    Parameters
    ----------
    n : int
        Sequence length.
    constraints : list of NodeConstraint
        One per distinct node.

    Returns
    -------
    fractions.Fraction
    """
    return interval_probability(n, _check(n, constraints))


MAX_ORACLE_N = 9


def exhaustive_oracle(n: int, constraints) -> Fraction:
    """Same probability as :func:`event_probability`, by visiting all ``n!``
    orderings. Ground truth for small ``n`` only."""
    if n > MAX_ORACLE_N:
        raise ConstraintError(f"exhaustive enumeration refused for n={n} > {MAX_ORACLE_N}")
    cons = list(constraints)
    bounds = _check(n, cons)
    nodes = [c.node for c in cons]
    if any(not 1 <= v <= n for v in nodes):
        raise ConstraintError("constrained node outside 1..n")
    hits = 0
    for perm in itertools.permutations(range(1, n + 1)):
        # perm[v - 1] is the position of node v
        if all(lo <= perm[v - 1] <= hi for v, (lo, hi) in zip(nodes, bounds)):
            hits += 1
    return Fraction(hits, math.factorial(n))
