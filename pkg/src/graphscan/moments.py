"""Exact permutation-null moments of the edge counts R1 and R2.

A product moment ``E(R_{s_1}(t_1) ... R_{s_m}(t_m))`` is a sum over ordered
``m``-tuples of edges of the probability that every listed edge lies
entirely on its side of its threshold. That probability depends on the tuple
only through the node-sharing pattern of its distinct edges, so the sum
collapses to ``sum_H sub(H, G) * W_H`` over the nineteen small patterns
``H``, where ``W_H`` adds the event probabilities of all ways of assigning
the ``m`` factors onto the edges of ``H``. Direct enumeration of the tuples
is kept as an independent route for small graphs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .census import BudgetError
from .graph import Graph
from .patterns import N_CONFIGS, PATTERNS, n_nodes, subgraph_counter
from .permnull import interval_probability

LOW, HIGH = 1, 2  # R1: both endpoints <= t; R2: both endpoints > t
ENUMERATION_BUDGET = 250_000


class MomentError(ValueError):
    pass


@dataclass(frozen=True)
class MomentSpec:
    """Ordered factors ``(threshold, side)``; side 1 is R1, side 2 is R2."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not 1 <= len(self.factors) <= 4:
            raise MomentError("a moment spec has 1 to 4 factors")
        for t, side in self.factors:
            if side not in (LOW, HIGH):
                raise MomentError(f"side must be 1 or 2, got {side}")

    @classmethod
    def of(cls, *factors) -> MomentSpec:
        return cls(tuple((int(t), int(s)) for t, s in factors))

    @property
    def order(self) -> int:
        return len(self.factors)

    def validate(self, n: int) -> None:
        for t, _ in self.factors:
            if not 1 <= t <= n - 1:
                raise MomentError(f"threshold {t} outside 1..{n - 1}")

    def key(self) -> tuple:
        return tuple(sorted(self.factors))


def _window(n, t, side):
    return (1, t) if side == LOW else (t + 1, n)


def _node_intervals(n, factor_nodes, factors):
    """Per-node intersection of the windows of the factors touching it."""
    out = {}
    for (t, side), nodes in zip(factors, factor_nodes):
        lo, hi = _window(n, t, side)
        for v in nodes:
            a, b = out.get(v, (1, n))
            out[v] = (max(a, lo), min(b, hi))
    return tuple(out.values())


@lru_cache(maxsize=None)
def _surjections(m: int, config: int):
    """Maps of the ``m`` factor slots onto the edges of pattern ``config``,
    each given as the tuple of edge endpoints per slot."""
    edges = PATTERNS[config - 1]
    k = len(edges)
    return tuple(
        tuple(edges[c] for c in choice)
        for choice in itertools.product(range(k), repeat=m)
        if len(set(choice)) == k
    )


@lru_cache(maxsize=1 << 16)
def pattern_weight(n: int, config: int, factors: tuple) -> Fraction:
    """``W_H``: summed event probability over ways to lay ``factors`` onto the
    edges of pattern ``config`` (placed on distinct nodes of ``1..n``)."""
    m = len(factors)
    if len(PATTERNS[config - 1]) > m or n_nodes(PATTERNS[config - 1]) > n:
        return Fraction(0)
    total = Fraction(0)
    for slot_edges in _surjections(m, config):
        total += interval_probability(n, _node_intervals(n, slot_edges, factors))
    return total


def config_contributions(g: Graph, spec: MomentSpec) -> list[Fraction]:
    """Contribution of each of the nineteen patterns to a product moment."""
    spec.validate(g.n)
    key = spec.key()
    sc = subgraph_counter(g)
    out = []
    for cfg in range(1, N_CONFIGS + 1):
        if len(PATTERNS[cfg - 1]) > spec.order:
            out.append(Fraction(0))
            continue
        w = pattern_weight(g.n, cfg, key)
        out.append(sc.count(cfg) * w if w else Fraction(0))
    return out


def _enumerate(g: Graph, spec: MomentSpec, budget: int) -> Fraction:
    m = spec.order
    if g.m**m > budget:
        raise BudgetError(f"{g.m}^{m} edge tuples exceeds the budget of {budget}")
    total = Fraction(0)
    for tup in itertools.product(g.edges, repeat=m):
        total += interval_probability(g.n, _node_intervals(g.n, tup, spec.factors))
    return total


def product_moment(g: Graph, spec: MomentSpec, method: str = "census",
                   budget: int = ENUMERATION_BUDGET) -> Fraction:
    """Exact ``E(prod_k R_{side_k}(t_k))`` under the permutation null.

    Parameters
    ----------
    g : Graph
    spec : MomentSpec
    method : {"census", "enumerate"}
        ``"census"`` sums pattern counts times pattern weights and scales to
        large sparse graphs; ``"enumerate"`` visits every ordered edge tuple
        and refuses when ``|G|^m`` exceeds ``budget``.
    """
    spec.validate(g.n)
    if method == "enumerate":
        return _enumerate(g, spec, budget)
    if method != "census":
        raise MomentError(f"unknown method {method!r}")
    return sum(config_contributions(g, spec), Fraction(0))


# -- moments of linear forms ---------------------------------------------

def raw_moment(g: Graph, factors) -> Fraction:
    """Product moment with the empty product defined as 1."""
    factors = tuple(sorted(factors))
    if not factors:
        return Fraction(1)
    return _raw_cached(g, factors)


@lru_cache(maxsize=1 << 14)
def _raw_cached(g, factors):
    return product_moment(g, MomentSpec(factors))


def linear_moment(g: Graph, forms) -> Fraction:
    """``E(prod_k L_k)`` for linear forms ``L_k = sum c * R_side(t)``.

    Each form is a mapping ``{(t, side): coefficient}``.
    """
    total = Fraction(0)
    for choice in itertools.product(*(f.items() for f in forms)):
        coef = Fraction(1)
        for _, c in choice:
            coef *= c
        if coef:
            total += coef * raw_moment(g, [k for k, _ in choice])
    return total


def centered_moment(g: Graph, forms) -> Fraction:
    """``E(prod_k (L_k - E L_k))``."""
    forms = list(forms)
    means = [linear_moment(g, [f]) for f in forms]
    total = Fraction(0)
    for keep in itertools.product((False, True), repeat=len(forms)):
        coef = Fraction(1)
        sub = []
        for f, mu, k in zip(forms, means, keep):
            if k:
                sub.append(f)
            else:
                coef *= -mu
        if coef:
            total += coef * linear_moment(g, sub)
    return total


def weights(n: int, t: int) -> tuple[Fraction, Fraction]:
    """``(p(t), q(t))`` of the weighted statistic."""
    return Fraction(n - t - 1, n - 2), Fraction(t - 1, n - 2)


def form_w(n, t):
    p, q = weights(n, t)
    return {(t, LOW): p, (t, HIGH): q}


def form_diff(t):
    return {(t, LOW): Fraction(1), (t, HIGH): Fraction(-1)}


# -- first and second moments --------------------------------------------

@dataclass(frozen=True)
class MomentSummary:
    """Exact null means and (co)variances of the edge counts at ``t``."""

    t: int
    n: int
    m: int
    mean_r0: Fraction
    mean_r1: Fraction
    mean_r2: Fraction
    var_r1: Fraction
    var_r2: Fraction
    cov_r12: Fraction
    p: Fraction
    q: Fraction

    @property
    def var_r0(self) -> Fraction:
        return self.var_r1 + self.var_r2 + 2 * self.cov_r12

    @property
    def var_w(self) -> Fraction:
        p, q = self.p, self.q
        return p * p * self.var_r1 + q * q * self.var_r2 + 2 * p * q * self.cov_r12

    @property
    def var_diff(self) -> Fraction:
        return self.var_r1 + self.var_r2 - 2 * self.cov_r12

    @property
    def mean_w(self) -> Fraction:
        return self.p * self.mean_r1 + self.q * self.mean_r2

    @property
    def mean_diff(self) -> Fraction:
        return self.mean_r1 - self.mean_r2

    @property
    def sigma(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.var_r1, self.cov_r12), (self.cov_r12, self.var_r2))

    def degenerate(self) -> list[str]:
        """Names of variances that vanish at this ``t``."""
        out = [name for name, v in (("r0", self.var_r0), ("w", self.var_w),
                                    ("diff", self.var_diff)) if v == 0]
        if self.var_r1 * self.var_r2 - self.cov_r12**2 == 0:
            out.append("sigma")
        return out

    def to_dict(self) -> dict:
        from .report import exact

        return {
            "t": self.t,
            "mean_r0": exact(self.mean_r0),
            "mean_r1": exact(self.mean_r1),
            "mean_r2": exact(self.mean_r2),
            "var_r0": exact(self.var_r0),
            "var_r1": exact(self.var_r1),
            "var_r2": exact(self.var_r2),
            "cov_r12": exact(self.cov_r12),
            "var_w": exact(self.var_w),
            "var_diff": exact(self.var_diff),
            "p": exact(self.p),
            "q": exact(self.q),
        }


def moment_summary(g: Graph, t: int) -> MomentSummary:
    if not 1 <= t <= g.n - 1:
        raise MomentError(f"t={t} outside 1..{g.n - 1}")
    e1 = raw_moment(g, [(t, LOW)])
    e2 = raw_moment(g, [(t, HIGH)])
    e11 = raw_moment(g, [(t, LOW), (t, LOW)])
    e22 = raw_moment(g, [(t, HIGH), (t, HIGH)])
    e12 = raw_moment(g, [(t, LOW), (t, HIGH)])
    p, q = weights(g.n, t) if g.n > 2 else (Fraction(1), Fraction(0))
    return MomentSummary(
        t=t, n=g.n, m=g.m,
        mean_r0=g.m - e1 - e2, mean_r1=e1, mean_r2=e2,
        var_r1=e11 - e1 * e1, var_r2=e22 - e2 * e2, cov_r12=e12 - e1 * e2,
        p=p, q=q,
    )


def r0_moments(g: Graph, t: int) -> tuple[Fraction, Fraction]:
    """``(E R0(t), Var R0(t))`` via ``R0 = |G| - R1 - R2``."""
    ms = moment_summary(g, t)
    return ms.mean_r0, ms.var_r0
