"""Edge-count statistics, their scan maxima and permutation p-values.

Observations are the graph's nodes in time order: node ``i`` is the ``i``-th
observation, so a candidate change-point ``t`` splits the nodes into
``1..t`` and ``t+1..n``.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Graph
from .moments import MomentSummary, moment_summary
from .report import exact

STATISTICS = ("z", "zw", "zdiff", "s", "m")
SINGULAR_TOL = 1e-14
WORKERS_ENV = "GRAPHSCAN_WORKERS"


class ScanError(ValueError):
    pass


def compute_counts(g: Graph, t: int) -> tuple[int, int, int]:
    """``(R0, R1, R2)`` at ``t`` for the identity ordering.

    Examples
    --------
    >>> from graphscan.graph import complete_graph
    >>> compute_counts(complete_graph(3), 1)
    (2, 0, 1)
    """
    if not 1 <= t <= g.n - 1:
        raise ScanError(f"t={t} outside 1..{g.n - 1}")
    r1 = sum(1 for i, j in g.edges if j <= t)
    r2 = sum(1 for i, j in g.edges if i > t)
    return g.m - r1 - r2, r1, r2


def count_series(n: int, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``R1(t)`` and ``R2(t)`` for ``t = 1..n-1`` from each edge's earlier
    (``lo``) and later (``hi``) time index, both 1-based.

    A leading batch axis is allowed.
    """
    lo = np.asarray(lo)
    hi = np.asarray(hi)
    batch = lo.shape[:-1]
    flat_lo = lo.reshape(-1, lo.shape[-1])
    flat_hi = hi.reshape(-1, hi.shape[-1])
    rows = np.arange(flat_lo.shape[0])[:, None]
    hist_hi = np.zeros((flat_lo.shape[0], n + 1), dtype=np.int64)
    hist_lo = np.zeros_like(hist_hi)
    np.add.at(hist_hi, (rows, flat_hi), 1)
    np.add.at(hist_lo, (rows, flat_lo), 1)
    m = lo.shape[-1]
    r1 = np.cumsum(hist_hi, axis=1)[:, 1:n]
    r2 = m - np.cumsum(hist_lo, axis=1)[:, 1:n]
    return r1.reshape(batch + (n - 1,)), r2.reshape(batch + (n - 1,))


def _edge_positions(g: Graph, order: np.ndarray | None = None):
    """Earlier and later time index of every edge when node ``v`` is observed
    at time ``order[v-1]`` (identity when ``order`` is None)."""
    e = g.edge_array + 1
    if order is not None:
        e = np.take(np.asarray(order), e - 1, axis=-1)
    return e.min(axis=-1), e.max(axis=-1)


@dataclass(frozen=True)
class _Coefficients:
    """Float null moments for each t, used to standardize many orderings."""

    ts: np.ndarray
    mean1: np.ndarray
    mean2: np.ndarray
    v11: np.ndarray
    v22: np.ndarray
    v12: np.ndarray
    p: np.ndarray
    q: np.ndarray
    summaries: tuple

    @classmethod
    def build(cls, g: Graph, ts) -> _Coefficients:
        sums = tuple(moment_summary(g, int(t)) for t in ts)
        f = lambda attr: np.array([float(getattr(s, attr)) for s in sums])
        return cls(np.asarray(ts), f("mean_r1"), f("mean_r2"), f("var_r1"), f("var_r2"),
                   f("cov_r12"), f("p"), f("q"), sums)


def _standardized(c: _Coefficients, r1: np.ndarray, r2: np.ndarray) -> dict[str, np.ndarray]:
    """All five statistics (NaN where undefined) on arrays aligned with ``c.ts``."""
    d1 = r1 - c.mean1
    d2 = r2 - c.mean2
    out = {}
    with np.errstate(divide="ignore", invalid="ignore"):
        var0 = np.array([float(s.var_r0) for s in c.summaries])
        varw = np.array([float(s.var_w) for s in c.summaries])
        vard = np.array([float(s.var_diff) for s in c.summaries])
        exact_zero = lambda attr: np.array([getattr(s, attr) == 0 for s in c.summaries])
        out["z"] = np.where(exact_zero("var_r0"), np.nan, (d1 + d2) / np.sqrt(var0))
        out["zw"] = np.where(exact_zero("var_w"), np.nan,
                             (c.p * d1 + c.q * d2) / np.sqrt(varw))
        out["zdiff"] = np.where(exact_zero("var_diff"), np.nan, (d1 - d2) / np.sqrt(vard))
        det = c.v11 * c.v22 - c.v12**2
        scale = np.maximum(np.abs(c.v11 * c.v22), np.abs(c.v12**2))
        singular = ~(np.abs(det) > SINGULAR_TOL * np.where(scale > 0, scale, 1.0))
        quad = (c.v22 * d1**2 - 2 * c.v12 * d1 * d2 + c.v11 * d2**2) / det
        out["s"] = np.where(singular, np.nan, quad)
        out["m"] = np.fmax(np.abs(out["zdiff"]), out["zw"])
        out["m"] = np.where(np.isnan(out["zdiff"]) | np.isnan(out["zw"]), np.nan, out["m"])
    return out


def statistics_at(g: Graph, t: int, ms: MomentSummary | None = None,
                  counts: tuple[int, int, int] | None = None) -> dict[str, float | None]:
    """``Z, Z_w, Z_diff, S, M`` at ``t``; ``None`` marks an undefined value."""
    ms = ms or moment_summary(g, t)
    _, r1, r2 = counts or compute_counts(g, t)
    c = _Coefficients(np.array([t]), np.array([float(ms.mean_r1)]), np.array([float(ms.mean_r2)]),
                      np.array([float(ms.var_r1)]), np.array([float(ms.var_r2)]),
                      np.array([float(ms.cov_r12)]), np.array([float(ms.p)]),
                      np.array([float(ms.q)]), (ms,))
    vals = _standardized(c, np.array([float(r1)]), np.array([float(r2)]))
    return {k: (None if np.isnan(v[0]) else float(v[0])) for k, v in vals.items()}


def _first_max(values: np.ndarray) -> int | None:
    """Index of the largest non-NaN value; ties go to the smallest index."""
    if np.all(np.isnan(values)):
        return None
    return int(np.nanargmax(values))


@dataclass
class StatSeries:
    """Counts and statistics over the scanned range ``[n0, n1]``."""

    n0: int
    n1: int
    ts: list[int]
    r0: list[int]
    r1: list[int]
    r2: list[int]
    values: dict[str, list[float | None]]
    argmax: dict[str, int | None] = field(default_factory=dict)
    maximum: dict[str, float | None] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n0": self.n0, "n1": self.n1, "t": self.ts,
            "r0": self.r0, "r1": self.r1, "r2": self.r2,
            "values": self.values, "argmax": self.argmax, "max": self.maximum,
        }


def check_range(n: int, n0: int, n1: int) -> None:
    if not 1 <= n0 <= n1 <= n - 1:
        raise ScanError(f"need 1 <= n0 <= n1 <= n-1, got n0={n0}, n1={n1}, n={n}")


def scan(g: Graph, stat: str | None = None, n0: int = 1, n1: int | None = None) -> StatSeries:
    """Evaluate every statistic on ``[n0, n1]`` and record max and argmax.

    If ``stat`` is given, it must be defined somewhere in the range.
    """
    n1 = g.n - 1 if n1 is None else n1
    check_range(g.n, n0, n1)
    if stat is not None and stat not in STATISTICS:
        raise ScanError(f"unknown statistic {stat!r}; choose from {STATISTICS}")
    ts = np.arange(n0, n1 + 1)
    coef = _Coefficients.build(g, ts)
    lo, hi = _edge_positions(g)
    r1, r2 = count_series(g.n, lo, hi)
    r1, r2 = r1[n0 - 1:n1], r2[n0 - 1:n1]
    vals = _standardized(coef, r1.astype(float), r2.astype(float))
    series = StatSeries(
        n0=n0, n1=n1, ts=[int(t) for t in ts],
        r0=[int(g.m - a - b) for a, b in zip(r1, r2)],
        r1=[int(a) for a in r1], r2=[int(b) for b in r2],
        values={k: [None if np.isnan(x) else float(x) for x in v] for k, v in vals.items()},
    )
    for k, v in vals.items():
        i = _first_max(v)
        series.argmax[k] = None if i is None else int(ts[i])
        series.maximum[k] = None if i is None else float(v[i])
    if stat is not None and series.argmax[stat] is None:
        raise ScanError(f"{stat} is undefined at every t in [{n0}, {n1}]")
    return series


@dataclass(frozen=True)
class ScanResult:
    statistic: str
    maximum: float
    argmax: int
    pvalue: float
    replicates: int
    seed: int
    exceed: int

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic, "max": self.maximum, "argmax": self.argmax,
            "pvalue": exact(Fraction(1 + self.exceed, self.replicates + 1)),
            "replicates": self.replicates, "seed": self.seed, "exceed": self.exceed,
        }


def replicate_orders(n: int, replicates: int, seed: int) -> np.ndarray:
    """Permutations used by the permutation test, one row per replicate.

    Replicate ``k`` draws from its own Philox stream, the ``k``-th child of
    ``SeedSequence(seed)``, so any split of the replicates across workers
    gives the same rows.
    """
    children = np.random.SeedSequence(seed).spawn(replicates)
    out = np.empty((replicates, n), dtype=np.int64)
    for k, child in enumerate(children):
        out[k] = np.random.Generator(np.random.Philox(child)).permutation(n) + 1
    return out


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def replicate_maxima(g: Graph, stat: str, n0: int, n1: int, orders: np.ndarray,
                     coef: _Coefficients | None = None, chunk: int = 256) -> np.ndarray:
    """Scan maximum of ``stat`` for each row of ``orders`` (NaN if undefined)."""
    coef = coef or _Coefficients.build(g, np.arange(n0, n1 + 1))

    def run(block):
        lo, hi = _edge_positions(g, block)
        r1, r2 = count_series(g.n, lo, hi)
        vals = _standardized(coef, r1[:, n0 - 1:n1].astype(float), r2[:, n0 - 1:n1].astype(float))
        v = vals[stat]
        res = np.full(v.shape[0], np.nan)
        ok = ~np.all(np.isnan(v), axis=1)
        res[ok] = np.nanmax(v[ok], axis=1)
        return res

    blocks = [orders[i:i + chunk] for i in range(0, len(orders), chunk)]
    workers = _workers()
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    return np.concatenate(parts) if parts else np.empty(0)


def permutation_pvalue(g: Graph, stat: str, n0: int, n1: int, replicates: int,
                       seed: int) -> ScanResult:
    """Scan maximum of ``stat`` and its add-one permutation p-value.

    Each replicate relabels the observation times with a uniform permutation
    while the graph stays fixed. A replicate whose statistic is undefined on
    the whole range does not count as exceeding.
    """
    if replicates < 1:
        raise ScanError("replicates must be at least 1")
    series = scan(g, stat, n0, n1)
    observed = series.maximum[stat]
    coef = _Coefficients.build(g, np.arange(n0, n1 + 1))
    maxima = replicate_maxima(g, stat, n0, n1, replicate_orders(g.n, replicates, seed), coef)
    exceed = int(np.sum(maxima >= observed))
    return ScanResult(stat, observed, series.argmax[stat],
                      (1 + exceed) / (replicates + 1), replicates, seed, exceed)


# -- decompositions ------------------------------------------------------

def z_combination(ms: MomentSummary, zw: float, zdiff: float, sign: int = -1) -> float:
    """``Z`` rebuilt from ``Z_w`` and ``Z_diff``.

    Since ``R1 = R_w + q R_diff`` and ``R2 = R_w - p R_diff``, the crossing
    count satisfies ``-(R0 - E R0) = 2 (R_w - E R_w) + (q - p)(R_diff - E R_diff)``.
    ``sign=-1`` gives that weight ``(q - p)`` on the ``Z_diff`` term;
    ``sign=+1`` gives ``(p - q)``, the form with the opposite sign.
    """
    sw = math.sqrt(float(ms.var_w))
    sd = math.sqrt(float(ms.var_diff))
    c = float(ms.p - ms.q) * sign
    den = math.sqrt(4 * sw * sw + c * c * sd * sd)
    return (2 * sw * zw + c * sd * zdiff) / den


def decomposition_check(g: Graph, t: int, tol: float = 1e-10) -> dict:
    """Residuals of the identities tying ``Z`` and ``S`` to ``Z_w, Z_diff``."""
    ms = moment_summary(g, t)
    st = statistics_at(g, t, ms)
    if any(st[k] is None for k in ("z", "zw", "zdiff")):
        raise ScanError(f"statistics undefined at t={t}")
    out = {
        "t": t,
        "z_residual_q_minus_p": abs(st["z"] - z_combination(ms, st["zw"], st["zdiff"], -1)),
        "z_residual_p_minus_q": abs(st["z"] - z_combination(ms, st["zw"], st["zdiff"], +1)),
        "cov_w_diff": exact(ms.p * ms.var_r1 - ms.q * ms.var_r2 + (ms.q - ms.p) * ms.cov_r12),
    }
    if st["s"] is not None:
        scale = max(1.0, abs(st["s"]))
        out["s_residual_sum_of_squares"] = abs(st["s"] - (st["zw"] ** 2 + st["zdiff"] ** 2)) / scale
        out["s_residual_linear_diff"] = abs(st["s"] - (st["zw"] ** 2 + st["zdiff"])) / scale
        holds = [name for name in ("s_residual_sum_of_squares", "s_residual_linear_diff")
                 if out[name] <= tol]
        out["s_identity"] = holds
    out["z_identity"] = [name for name in ("z_residual_q_minus_p", "z_residual_p_minus_q")
                         if out[name] <= tol]
    return out
