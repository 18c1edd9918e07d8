"""Published per-configuration probabilities for two 4th-order moments.

``E(R1^2(r) R1(s) R1(t))`` and ``E(R2(r) R1(s) R2(s) R1(t))`` are assembled
from the configuration counts and one probability polynomial per
configuration. Each polynomial is the summed probability of a set of labeled
representatives of its configuration, so it is rescaled by the number of
representatives it covers; that number is the value the first moment's
polynomial takes at ``r = s = t = n``, where every event is certain.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .census import ConfigCensus
from .moments import MomentError
from .patterns import PATTERNS
from .permnull import falling


def _p1_numerators(n, r, s, t, printed=False):
    """Example-1 numerators over falling(n, v); returns {config: (num, v)}."""
    R = r * (r - 1)
    R3 = R * (r - 2)
    R4 = R3 * (r - 3)
    return {
        1: (R, 2),
        2: (R * ((t - 2) + 2 * (s - 2) + 4 * (r - 2)), 3),
        3: (R * ((t - 2) * (t - 3) + 2 * (s - 2) * (s - 3) + 4 * (r - 2) * (r - 3)), 4),
        4: (R * ((s - 2) * (t - 3) + 2 * (r - 2) * (t - 3) + 3 * (r - 2) * (s - 3)), 4),
        5: (R * ((r - 2) * (5 * (r - 3) + 4 * (t - 3) + 6 * (s - 3))
                 + (s - 2) * ((s - 3) + 2 * (t - 3))), 4),
        6: (R * ((s - 2) + 5 * (r - 2)), 3),
        7: (R3 * (2 * (t - 4) * ((t - 3) + 2 * (r - 3)) + 3 * (s - 4) * ((s - 3) + 2 * (r - 3)))
            + R * (s - 2) * (t - 4) * ((t - 3) + 2 * (s - 3)), 5),
        8: (R4 * (2 * (t - 4) * (t - 5) + 3 * (s - 4) * (s - 5))
            + R * (s - 2) * (s - 3) * (t - 4) * (t - 5), 6),
        9: (R3 * (s - 3) * (t - 4), 5),
        10: ((1 if printed else 2)
             * R3 * ((r - 3) * ((t - 4) + 2 * (s - 4)) + (s - 3) * (2 * (t - 4) + (s - 4))), 5),
        11: (R3 * (2 * (s - 3) + (r - 3)), 4),
        12: (R3 * (7 * (s - 3) + 2 * (r - 3) + 3 * (t - 3)), 4),
        13: (R3 * ((s - 3) * ((s - 4) + 7 * (t - 4)) + 2 * (r - 3) * ((s - 4) + (t - 4))), 5),
        14: (R3 * ((s - 3) * (t - 5) * ((s - 4) + (t - 4)) + 2 * (r - 3) * (s - 4) * (t - 5)), 6),
        15: (R4 * (3 * (s - 4) * (s - 5) + 4 * (s - 4) * (t - 5) + (t - 4) * (t - 5))
             + 2 * R3 * (s - 3) * ((s - 4) * (t - 5) + (t - 4) * (t - 5)), 6),
        16: (R3 * ((t - 3) * (t - 4) + (s - 3) * (s - 4) + 2 * (r - 3) * (s - 4)), 5),
        17: (R3 * (s - 4) * (t - 5) * ((s - 3) + 2 * (r - 3)), 6),
        18: (R4 * (s - 4) * (t - 6) * (2 * (t - 5) + 3 * (s - 5))
             + R3 * (s - 3) * (s - 4) * (t - 5) * (t - 6), 7),
        19: (R4 * (s - 4) * (s - 5) * (t - 6) * (t - 7), 8),
    }


def _p2_numerators(n, r, s, t, printed=False):
    """Example-2 numerators over falling(n, v).

    With ``printed=False`` the four terms listed in ``P2_CORRECTIONS`` are
    replaced by their rederived versions.
    """
    a = s - r          # nodes in (r, s]
    b = t - s          # nodes in (s, t]
    N = n - s          # nodes in (s, n]
    out = {c: (0, 2) for c in (1, 2, 4, 6, 9)}
    out[3] = ((s * (s - 1) + a * (a - 1)) * (N * (N - 1) + b * (b - 1)), 4)
    if printed:
        tail5 = a * (N - 1) * (b * (s - 1) + (s - 1) * N)
    else:
        tail5 = a * (s - 1) * (b * (b - 1) + N * (N - 1))
    out[5] = (b * (N - 1) * (a * (a - 1) + s * (s - 1) + a * (s - 1)) + tail5, 4)
    f7a = (a * (a - 1) * b * ((s - 2) * (N - 1) + (b - 1) * (N - 2) + (N - 1) * (N - 2))
           + a * (N - 1) * (2 * (a - 1) * (s - 2) * N + b * (s - 1) * (N - 2)))
    f7b = (b * (a * (s - 1) * (s - 2) * (N - 1) + (b - 1) * s * (s - 1) * (N - 2))
           + s * (s - 1) * ((s - 2) * N * (N - 1) + b * (N - 1) * (N - 2))
           + b * s * (s - 1) * ((s - 2) * (N - 1) + (b - 1) * (N - 2)))
    f7c = (r * N * (N - 1) * ((r - 1) * (n - r - 2) + 2 * a * (n - r - 3))
           + a * N * (N - 1) * (2 * (a - 1) * (n - r - 4) + r * (n - r - 3))
           + b * (b - 1) * a * (3 * r * (n - r - 3) + 2 * (a - 1) * (n - r - 4))
           + b * (b - 1) * r * (r - 1) * (n - r - 2))
    out[7] = (f7a + f7b + f7c, 5)
    f8a = (a * (a - 1) * (s - 2) * (N - 1) * (2 * (s - 3) * N + 2 * b * (N - 2))
           + b * (b - 1) * (N - 2) * (N - 3) * (a * (a - 1) + 2 * s * (s - 1))
           + s * (s - 1) * (s - 2) * (N - 1) * ((s - 3) * N + 2 * b * (N - 2))
           + 2 * a * b * (s - 1) * (s - 2) * (N - 1) * (N - 2))
    f8b = (r * N * (N - 1) * (n - r - 3) * ((r - 1) * (n - r - 2) + 2 * a * (n - r - 4))
           + a * (a - 1) * N * (N - 1) * (n - r - 4) * (n - r - 5)
           + b * (b - 1) * (r * (r - 1) * (n - r - 2) * (n - r - 3)
                            + 2 * r * a * (n - r - 3) * (n - r - 4)
                            + a * (a - 1) * (n - r - 4) * (n - r - 5)))
    out[8] = (f8a + f8b, 6)
    f10a = b * (s - 1) * (a * (s - 2) * (N - 1) + a * (b - 1) * (N - 2)
                          + (N - 1) * a * (s - 2) + s * (N - 1) * (N - 2))
    f10b = (a * N * (N - 1) * (r * (s - 2) + (a - 1) * (s - 2))
            + a * b * (s - 1) * ((N - 1) * (N - 2) + (b - 1) * (N - 2))
            + a * b * (N - 1) * (r * (n - r - 3) + (a - 1) * (n - r - 4) + (a - 1) * (s - 2)))
    f10c = (s - 1) * (N - 1) * (a * (s - 2) * N + b * s * (N - 2))
    out[10] = (f10a + f10b + f10c, 5)
    out[11] = (a * b * (s - 1) * (N - 1), 4)
    out[12] = ((1 if printed else 2) * a * b * (s - 1) * (N - 1), 4)
    out[13] = (a * b * (s - 1) * ((s - 2) * (N - 1) + (b - 1) * (N - 2))
               + a * b * (N - 1) * (3 * r * (n - r - 3) + 2 * (a - 1) * (n - r - 4))
               + b * (r * (r - 1) * (N - 1) * (n - r - 2))
               + a * (s - 1) * (N - 1) * ((s - 2) * N + b * (N - 2)), 5)
    f14a = (a * b * (s - 1) * (s - 2) * ((s - 3) * (N - 1) + (b - 1) * (N - 2))
            + b * s * (s - 1) * (N - 2) * ((N - 1) * (s - 2) + (b - 1) * (N - 3)))
    f14b = (a * (a - 1) * (s - 2) * (N - 1) * (b * (N - 2) + (s - 3) * N)
            + a * (s - 1) * (N - 1) * (N - 2) * (N * (s - 2) + b * (N - 3)))
    out[14] = (f14a + f14b, 6)
    f15a = b * ((N - 1) * (r * (r - 1) * (n - r - 2) * (n - r - 3)
                           + 2 * r * a * (n - r - 3) * (n - r - 4)
                           + a * (a - 1) * (n - r - 4) * (n - r - 5))
                + a * (s - 1) * (s - 2) * ((s - 3) * (N - 1) + (b - 1) * (N - 2))
                + s * (s - 1) * (N - 2) * ((N - 1) * (s - 2) + (b - 1) * (N - 3)))
    f15b = (a * (s - 1) * (s - 2) * (N - 1) * ((s - 3) * N + b * (N - 2))
            + b * s * (s - 1) * (N - 2) * ((s - 2) * (N - 1) + (b - 1) * (N - 3)))
    f15c = b * (a * (s - 2) * ((a - 1) * (s - 3) * (N - 1) + (b - 1) * (s - 1) * (N - 2))
                + (s - 1) * (N - 2) * ((N - 1) * a * (s - 2) + (b - 1) * s * (N - 3)))
    f15d = a * ((a - 1) * (s - 2) * ((s - 3) * N * (N - 1) + b * (N - 1) * (N - 2))
                + b * (s - 1) * ((s - 2) * (N - 1) * (N - 2) + (b - 1) * (N - 2) * (N - 3))
                + r * (N - 1) * ((r - 1) * N * (n - r - 3) + 2 * (a - 1) * N * (n - r - 4)
                                 + b * (N - 2) * (n - r - 4))
                + (a - 1) * (N - 1) * (n - r - 5) * ((a - 2) * N + b * (N - 2)))
    f15e = (a * (N * (N - 1) * (r * (r - 1) * (n - r - 3) + 2 * r * (a - 1) * (n - r - 4)
                                + (a - 1) * (a - 2) * (n - r - 5) + (s - 1) * (s - 2) * (s - 3))
                 + (s - 1) * b * (N - 2) * (2 * (s - 2) * (N - 1) + (b - 1) * (N - 3)))
            + b * (N - 2) * (N - 1) * (r * (r - 1) * (n - r - 3) + 2 * r * a * (n - r - 4)
                                       + a * (a - 1) * (n - r - 5)))
    out[15] = (f15a + f15b + f15c + f15d + f15e, 6)
    out[16] = (b * (s - 1) * (a * (s - 2) * (N - 1) + (b - 1) * s * (N - 2))
               + a * (N - 1) * ((a - 1) * (s - 2) * N + b * (s - 1) * (N - 2)), 5)
    out[17] = (a * b * (a - 1) * (s - 2) * ((s - 3) * (N - 1) + (b - 1) * (N - 2))
               + a * b * (s - 1) * (N - 2) * ((N - 1) * (s - 2) + (b - 1) * (N - 3))
               + a * (s - 1) * (s - 2) * (N - 1) * ((s - 3) * N + b * (N - 2))
               + s * (s - 1) * (N - 1) * (N - 2) * ((s - 2) * N + b * (N - 3)), 6)
    f18a = (a * ((a - 1) * (s - 2) * ((s - 3) * (s - 4) * N * (N - 1)
                                      + 2 * b * (s - 3) * (N - 1) * (N - 2)
                                      + b * (b - 1) * (N - 2) * (N - 3))
                 + (s - 1) * (N - 2) * ((s - 2) * (s - 3) * N * (N - 1)
                                        + 2 * b * (s - 2) * (N - 1) * (N - 3)
                                        + b * (b - 1) * (N - 3) * (N - 4))))
    f18b = (a * (s - 1) * (s - 2) * ((s - 3) * (s - 4) * N * (N - 1)
                                     + 2 * b * (s - 3) * (N - 1) * (N - 2)
                                     + b * (b - 1) * (N - 2) * (N - 3))
            + s * (s - 1) * (N - 2) * ((s - 2) * (s - 3) * N * (N - 1)
                                       + 2 * b * (s - 2) * (N - 1) * (N - 3)
                                       + b * (b - 1) * (N - 3) * (N - 4)))
    f18c = (a * (s - 2) * ((a - 1) * (s - 3) * (N - 1) * ((s - 4) * N + b * (N - 2))
                           + (N - 2) * (N - 1) * (s - 1) * (b * (N - 3) + (s - 3) * N))
            + b * (s - 1) * (a * (s - 2) * (N - 2) * ((s - 3) * (N - 1) + (b - 1) * (N - 3))
                             + (N - 2) * (N - 3) * (s * (N - 1) * (s - 2)
                                                    + s * (b - 1) * (N - 4))))
    f18d = (a * (a - 1) * (s - 2) * (s - 3) * (N - 1) * ((s - 4) * N + b * (N - 2))
            + 2 * a * (s - 1) * (s - 2) * (N - 1) * (N - 2)
            * (N * (s - 3) + (2 if printed else 1) * b * (N - 3))
            + s * (s - 1) * (N - 1) * (N - 2) * (N - 3) * (N * (s - 2) + b * (N - 4)))
    f18e = b * (a * (a - 1) * (s - 2) * (s - 3) * ((s - 4) * (N - 1) + (b - 1) * (N - 2))
                + 2 * a * (s - 1) * (s - 2) * (N - 2) * ((N - 1) * (s - 3) + (b - 1) * (N - 3))
                + s * (s - 1) * ((N - 1) if printed else (N - 2)) * (N - 3)
                * ((N - 1) * (s - 2) + (b - 1) * (N - 4)))
    out[18] = (f18a + f18b + f18c + f18d + f18e, 7)
    f19a = a * (a - 1) * (s - 2) * (s - 3) * ((s - 4) * (s - 5) * N * (N - 1)
                                              + 2 * b * (s - 4) * (N - 1) * (N - 2)
                                              + b * (b - 1) * (N - 2) * (N - 3))
    f19b = 2 * a * (s - 1) * (s - 2) * (N - 2) * (N * (s - 3) * (s - 4) * (N - 1)
                                                  + 2 * (N - 1) * b * (s - 3) * (N - 3)
                                                  + b * (b - 1) * (N - 3) * (N - 4))
    f19c = s * (s - 1) * (N - 2) * (N - 3) * (N * (N - 1) * (s - 2) * (s - 3)
                                              + 2 * (N - 1) * b * (s - 2) * (N - 4)
                                              + b * (b - 1) * (N - 4) * (N - 5))
    out[19] = (f19a + f19b + f19c, 8)
    return out


P1_CORRECTIONS = {
    10: "each printed term stands for two assignments that differ by swapping "
        "the two R1(r) factors; the sum is doubled",
}

P2_CORRECTIONS = {
    5: "second term reads (s-r)(s-1)((t-s)(t-s-1)+(n-s)(n-s-1))",
    12: "the two non-adjacent factor pairs each give (s-r)(t-s)(s-1)(n-s-1); "
        "only one is printed",
    18: "f18d: 2(t-s)(n-s-3) reads (t-s)(n-s-3); "
        "f18e: s(s-1)(n-s-1)(n-s-3) reads s(s-1)(n-s-2)(n-s-3)",
}


def _probabilities(numerators, n):
    out = {}
    for cfg, (num, v) in numerators.items():
        den = falling(n, v)
        out[cfg] = Fraction(num, den) if den else Fraction(0)
    return out


def example1_probabilities(n, r, s, t, printed: bool = False) -> dict[int, Fraction]:
    return _probabilities(_p1_numerators(n, r, s, t, printed), n)


def example2_probabilities(n, r, s, t, printed: bool = False) -> dict[int, Fraction]:
    return _probabilities(_p2_numerators(n, r, s, t, printed), n)


@lru_cache(maxsize=None)
def representatives(cfg: int) -> int:
    """Number of labeled representatives summed in one configuration's
    polynomial: assignments of the four factor slots onto the pattern's
    edges (every edge used), up to automorphisms of the pattern."""
    edges = PATTERNS[cfg - 1]
    k = len(edges)
    verts = sorted({v for e in edges for v in e})
    index = {frozenset(e): i for i, e in enumerate(edges)}
    edge_perms = set()
    for perm in itertools.permutations(verts):
        img = dict(zip(verts, perm))
        mapped = [index.get(frozenset((img[a], img[b]))) for a, b in edges]
        if None not in mapped:
            edge_perms.add(tuple(mapped))
    orbits = set()
    for f in itertools.product(range(k), repeat=4):
        if len(set(f)) < k:
            continue
        orbits.add(min(tuple(ep[x] for x in f) for ep in edge_perms))
    return len(orbits)


def _check_order(n, r, s, t, strict_rs=True):
    ok = (r < s if strict_rs else r <= s) and s < t and 1 <= r and t <= n - 1
    if not ok:
        raise MomentError(f"need 1 <= r < s < t <= n-1, got r={r}, s={s}, t={t}")


def _assemble(census: ConfigCensus, probs):
    return sum((Fraction(census.count(c)) * probs[c] / representatives(c)
                for c in probs), Fraction(0))


def example1_closed_form(n, r, s, t, census: ConfigCensus, printed: bool = False) -> Fraction:
    """``E(R1^2(r) R1(s) R1(t))`` from configuration counts.

    Examples
    --------
    >>> from graphscan.graph import path_graph
    >>> from graphscan.census import census_closed_form
    >>> example1_closed_form(4, 1, 2, 3, census_closed_form(path_graph(4)))
    Fraction(0, 1)
    """
    _check_order(n, r, s, t)
    return _assemble(census, example1_probabilities(n, r, s, t, printed))


def example2_closed_form(n, r, s, t, census: ConfigCensus, printed: bool = False) -> Fraction:
    """``E(R2(r) R1(s) R2(s) R1(t))`` from configuration counts.

    ``s = r`` is allowed and gives a three-threshold moment. ``printed=True``
    uses the polynomials exactly as published, without ``P2_CORRECTIONS``.
    """
    _check_order(n, r, s, t, strict_rs=False)
    return _assemble(census, example2_probabilities(n, r, s, t, printed))
