"""Ground truth by visiting every ordering of the nodes.

Nothing here reuses the library's moment or counting code: edge counts are
recomputed from scratch for each of the ``n!`` orderings and averaged with
exact rational arithmetic.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def count_table(g):
    """``(R1, R2)`` as ``(n!, n-1)`` integer arrays, one row per ordering.

    Row ``k`` places node ``v`` at time ``perm[v-1]`` for the ``k``-th
    permutation in lexicographic order.
    """
    n = g.n
    perms = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int64)
    ts = np.arange(1, n)
    r1 = np.zeros((len(perms), n - 1), dtype=np.int64)
    r2 = np.zeros_like(r1)
    for i, j in g.edges:
        a, b = perms[:, i - 1], perms[:, j - 1]
        lo, hi = np.minimum(a, b)[:, None], np.maximum(a, b)[:, None]
        r1 += hi <= ts
        r2 += lo > ts
    return r1, r2


def mean(values) -> Fraction:
    """Exact average of an integer array over its first axis."""
    values = np.asarray(values)
    return Fraction(int(values.sum()), len(values))


def product_moment(table, factors) -> Fraction:
    """``E prod R_side(t)`` for ``factors = [(t, side), ...]``.

    Integer arithmetic; int64 is ample for the ``n <= 9`` graphs this is
    meant for (at most ``36^4 * 9!`` per sum).
    """
    r1, r2 = table
    prod = np.ones(len(r1), dtype=np.int64)
    for t, side in factors:
        prod = prod * (r1 if side == 1 else r2)[:, t - 1]
    return Fraction(int(prod.sum()), len(r1))


def form_values(table, form):
    """Exact per-ordering values of ``sum c * R_side(t)`` as Fractions."""
    r1, r2 = table
    out = [Fraction(0)] * len(r1)
    for (t, side), c in form.items():
        col = (r1 if side == 1 else r2)[:, t - 1]
        out = [o + c * int(x) for o, x in zip(out, col)]
    return out


def centered(values):
    mu = sum(values, Fraction(0)) / len(values)
    return [v - mu for v in values], mu


def centered_product_moment(columns) -> Fraction:
    """``E prod_k (X_k - E X_k)`` for exact per-ordering columns.

    Each column is scaled to integers and centered as ``N x - sum x`` so the
    whole average is one exact integer sum.
    """
    size = len(columns[0])
    prod = np.ones(size, dtype=object)
    scale = 1
    for col in columns:
        den = math.lcm(*(Fraction(x).denominator for x in col))
        ints = np.array([int(Fraction(x) * den) for x in col], dtype=object)
        prod = prod * (size * ints - ints.sum())
        scale *= den * size
    return Fraction(int(prod.sum()), scale * size)
