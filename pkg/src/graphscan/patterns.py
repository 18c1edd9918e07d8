"""The nineteen simple graphs with at most four edges.

A tuple of four edges drawn with replacement from a graph spans a simple
subgraph with one to four distinct edges; up to isomorphism there are
nineteen of them, numbered here in the order used throughout the package.
Subgraph counts ``sub(H, G)`` for every such ``H`` are obtained from
homomorphism counts by Moebius inversion over vertex partitions, which keeps
them exact and cheap on sparse graphs with hundreds of nodes.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .graph import Graph

# Canonical edge lists on nodes 0..v-1; index i holds configuration i + 1.
PATTERNS: tuple[tuple[tuple[int, int], ...], ...] = (
    ((0, 1),),                                  # 1  single edge
    ((0, 1), (1, 2)),                           # 2  two edges sharing a node
    ((0, 1), (2, 3)),                           # 3  two disjoint edges
    ((0, 1), (0, 2), (0, 3)),                   # 4  3-star
    ((0, 1), (1, 2), (2, 3)),                   # 5  3-edge path
    ((0, 1), (1, 2), (0, 2)),                   # 6  triangle
    ((0, 1), (1, 2), (3, 4)),                   # 7  2-path + edge
    ((0, 1), (2, 3), (4, 5)),                   # 8  three disjoint edges
    ((0, 1), (0, 2), (0, 3), (0, 4)),           # 9  4-star
    ((0, 1), (1, 2), (2, 3), (3, 4)),           # 10 4-edge path
    ((0, 1), (1, 2), (2, 3), (0, 3)),           # 11 4-cycle (box)
    ((0, 1), (1, 2), (0, 2), (2, 3)),           # 12 triangle + pendant
    ((0, 1), (0, 2), (0, 3), (3, 4)),           # 13 3-star with one edge extended
    ((0, 1), (0, 2), (0, 3), (4, 5)),           # 14 3-star + edge
    ((0, 1), (1, 2), (2, 3), (4, 5)),           # 15 3-edge path + edge
    ((0, 1), (1, 2), (0, 2), (3, 4)),           # 16 triangle + edge
    ((0, 1), (1, 2), (3, 4), (4, 5)),           # 17 two 2-paths
    ((0, 1), (1, 2), (3, 4), (5, 6)),           # 18 2-path + two edges
    ((0, 1), (2, 3), (4, 5), (6, 7)),           # 19 four disjoint edges
)

N_CONFIGS = len(PATTERNS)


def n_nodes(edges) -> int:
    return len({v for e in edges for v in e})


def shape_key(edges) -> tuple:
    """Isomorphism invariant of a small simple graph.

    The sorted list of (component size, component degree sequence) is a
    complete invariant for graphs with at most four edges.
    """
    adj: dict[int, set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen: set[int] = set()
    comps = []
    for start in adj:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append((len(comp), tuple(sorted(len(adj[v]) for v in comp))))
    return tuple(sorted(comps))


CONFIG_OF_KEY = {shape_key(p): k + 1 for k, p in enumerate(PATTERNS)}
assert len(CONFIG_OF_KEY) == N_CONFIGS


def config_of(edges) -> int:
    """Configuration id (1-19) of a simple graph with 1-4 edges."""
    return CONFIG_OF_KEY[shape_key(edges)]


@lru_cache(maxsize=None)
def automorphisms(config: int) -> int:
    edges = PATTERNS[config - 1]
    v = n_nodes(edges)
    eset = {frozenset(e) for e in edges}
    return sum(
        all(frozenset((p[a], p[b])) in eset for a, b in edges)
        for p in itertools.permutations(range(v))
    )


def surjections(m: int, k: int) -> int:
    """Number of maps from ``m`` labeled positions onto ``k`` labeled edges."""
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** m for j in range(k + 1))


# -- homomorphism counts of connected patterns -------------------------------

def _hom_table(g: Graph) -> dict:
    """Homomorphism counts into ``g`` keyed by connected-pattern shape."""
    a = g.adjacency.astype(np.int64)
    d = g.degree.astype(np.int64)
    ad = a @ d
    a2 = a @ a
    tri_walk = np.asarray(a2.multiply(a).sum(axis=1)).ravel()  # (A^3)_ii
    S = lambda x: int(np.sum(x, dtype=object))  # noqa: E731
    hom = {
        ((0, 1),): None,  # placeholder, not a valid key
        shape_key(PATTERNS[0]): 2 * g.m,
        shape_key(PATTERNS[1]): S(d * d),
        shape_key(PATTERNS[3]): S(d**3),
        shape_key(PATTERNS[8]): S(d.astype(object) ** 4),
        shape_key(PATTERNS[4]): S(d * ad),
        shape_key(PATTERNS[9]): S(ad.astype(object) ** 2),
        shape_key(PATTERNS[12]): S(d.astype(object) ** 2 * ad),
        shape_key(PATTERNS[5]): S(tri_walk),
        shape_key(PATTERNS[10]): int(sum(int(x) ** 2 for x in a2.data)),
        shape_key(PATTERNS[11]): S(tri_walk * d),
    }
    del hom[((0, 1),)]
    hom[((1, (0,)),)] = g.n
    return hom


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


@lru_cache(maxsize=None)
def _mobius_terms(config: int) -> tuple[tuple[int, tuple], ...]:
    """Quotients of the pattern: (mobius coefficient, component shapes)."""
    edges = PATTERNS[config - 1]
    verts = sorted({v for e in edges for v in e})
    acc: dict[tuple, int] = {}
    for part in _set_partitions(verts):
        block = {v: k for k, b in enumerate(part) for v in b}
        q = {tuple(sorted((block[a], block[b]))) for a, b in edges}
        if any(x == y for x, y in q):
            continue
        coef = 1
        for b in part:
            coef *= (-1) ** (len(b) - 1) * math.factorial(len(b) - 1)
        comps = tuple(sorted((c,) for c in shape_key(sorted(q))))
        acc[comps] = acc.get(comps, 0) + coef
    return tuple((c, k) for k, c in acc.items() if c)


class SubgraphCounter:
    """Lazy exact counts of every configuration pattern as a subgraph of ``g``."""

    def __init__(self, g: Graph):
        self.g = g
        self._hom = None
        self._sub: dict[int, int] = {}

    def hom_connected(self, key) -> int:
        if self._hom is None:
            self._hom = _hom_table(self.g)
        return self._hom[key]

    def injective(self, config: int) -> int:
        total = 0
        for coef, comps in _mobius_terms(config):
            prod = coef
            for (comp,) in comps:
                prod *= self.hom_connected((comp,))
            total += prod
        return total

    def count(self, config: int) -> int:
        """Number of subgraphs of ``g`` isomorphic to pattern ``config``."""
        if config not in self._sub:
            c = self.injective(config)
            aut = automorphisms(config)
            assert c % aut == 0
            self._sub[config] = c // aut
        return self._sub[config]

    def counts(self) -> list[int]:
        return [self.count(k) for k in range(1, N_CONFIGS + 1)]


_COUNTERS: dict[Graph, SubgraphCounter] = {}


def subgraph_counter(g: Graph) -> SubgraphCounter:
    """Shared per-graph counter (graphs are immutable and hashable)."""
    c = _COUNTERS.get(g)
    if c is None:
        if len(_COUNTERS) > 256:
            _COUNTERS.clear()
        c = _COUNTERS[g] = SubgraphCounter(g)
    return c
