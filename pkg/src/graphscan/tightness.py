"""Kolmogorov-Chentsov fourth-moment criterion for the scan processes.

For ``X`` in ``{Z_w, Z_diff}`` and ``0 < u < v < w < 1`` the criterion
quantity is ``E[(X(v) - X(u))^2 (X(w) - X(v))^2]`` with ``X`` evaluated at
``r = floor(nu)``, ``s = floor(nv)``, ``t = floor(nw)``. It is computed from
exact centered fourth moments of the edge-count linear forms; the
standardizing square roots make the final value a float.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .census import graph_functionals
from .graph import Graph
from .moments import centered_moment, form_diff, form_w, moment_summary
from .report import exact
from .scan import _Coefficients, _edge_positions, _standardized, count_series

PROCESSES = ("zw", "zdiff")
DEFAULT_EPS = 0.1


class TightnessError(ValueError):
    pass


def _form(process: str, n: int, t: int):
    if process == "zw":
        return form_w(n, t)
    if process == "zdiff":
        return form_diff(t)
    raise TightnessError(f"process must be one of {PROCESSES}, got {process!r}")


def _variance(process: str, g: Graph, t: int) -> Fraction:
    ms = moment_summary(g, t)
    return ms.var_w if process == "zw" else ms.var_diff


def thresholds(n: int, u: float, v: float, w: float) -> tuple[int, int, int]:
    if not 0 < u <= v <= w < 1:
        raise TightnessError(f"need 0 < u <= v <= w < 1, got {(u, v, w)}")
    return math.floor(n * u), math.floor(n * v), math.floor(n * w)


# (X_s - X_r)(X_s - X_r)(X_t - X_s)(X_t - X_s) as signed monomials over
# the indices 0 = r, 1 = s, 2 = t.
def _expansion() -> dict[tuple[int, ...], int]:
    factors = [((1, 1), (0, -1)), ((1, 1), (0, -1)), ((2, 1), (1, -1)), ((2, 1), (1, -1))]
    out: Counter = Counter()
    for choice in itertools.product(*factors):
        key = tuple(sorted(i for i, _ in choice))
        out[key] += math.prod(c for _, c in choice)
    return {k: c for k, c in out.items() if c}


EXPANSION = _expansion()


@dataclass
class KCMoment:
    """Value of the criterion at one ``(u, v, w)``."""

    process: str
    u: float
    v: float
    w: float
    r: int
    s: int
    t: int
    value: float
    method: str
    degenerate: bool = False
    stderr: float | None = None
    centered: dict = field(default_factory=dict)   # index tuple -> Fraction
    variances: tuple = ()
    zero_variance: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "process": self.process, "u": self.u, "v": self.v, "w": self.w,
            "r": self.r, "s": self.s, "t": self.t, "value": self.value,
            "method": self.method, "degenerate": self.degenerate, "stderr": self.stderr,
            "centered_moments": {"".join("rst"[i] for i in k): exact(x)
                                 for k, x in self.centered.items()},
            "variances": [exact(x) for x in self.variances],
            "zero_variance_at": self.zero_variance,
        }


def kc_moment(g: Graph, process: str, u: float, v: float, w: float,
              method: str = "exact", samples: int = 20000, seed: int = 0) -> KCMoment:
    """``E[(X(v) - X(u))^2 (X(w) - X(v))^2]`` under the permutation null.

    ``method="exact"`` combines exact centered fourth moments;
    ``method="mc"`` averages over ``samples`` seeded random orderings and
    reports the standard error. When ``floor(nu) = floor(nv)`` or
    ``floor(nv) = floor(nw)`` one squared factor vanishes identically and the
    value is exactly 0.
    """
    n = g.n
    r, s, t = thresholds(n, u, v, w)
    if r == s or s == t:
        return KCMoment(process, u, v, w, r, s, t, 0.0, method, degenerate=True,
                        stderr=0.0 if method == "mc" else None)
    ts = (r, s, t)
    if not 1 <= r or t > n - 1:
        raise TightnessError(f"thresholds {ts} outside 1..{n - 1}")
    var = tuple(_variance(process, g, x) for x in ts)
    zero = [x for x, vx in zip(ts, var) if vx == 0]
    if method == "exact":
        forms = [_form(process, n, x) for x in ts]
        # A zero-variance form is constant under the null; its standardized
        # value is taken as 0, so monomials containing it drop out.
        inv = [0.0 if vx == 0 else 1 / math.sqrt(float(vx)) for vx in var]
        centered = {}
        value = 0.0
        for key, coef in EXPANSION.items():
            mom = centered_moment(g, [forms[i] for i in key])
            centered[key] = mom
            value += coef * float(mom) * math.prod(inv[i] for i in key)
        out = KCMoment(process, u, v, w, r, s, t, value, "exact",
                       centered=centered, variances=var)
        out.zero_variance = zero
        return out
    if method == "mc":
        vals = _mc_samples(g, process, ts, samples, seed)
        out = KCMoment(process, u, v, w, r, s, t, float(vals.mean()), "mc",
                       stderr=float(vals.std(ddof=1) / math.sqrt(len(vals))), variances=var)
        out.zero_variance = zero
        return out
    raise TightnessError(f"method must be 'exact' or 'mc', got {method!r}")


def _mc_samples(g: Graph, process: str, ts, samples: int, seed: int) -> np.ndarray:
    """Per-ordering values of the criterion product, one Philox stream per
    block of orderings derived from ``seed``."""
    coef = _Coefficients.build(g, np.asarray(ts))
    block = 2048
    children = np.random.SeedSequence(seed).spawn(-(-samples // block))
    out = []
    for k, child in enumerate(children):
        size = min(block, samples - k * block)
        rng = np.random.Generator(np.random.Philox(child))
        orders = np.argsort(rng.random((size, g.n)), axis=1) + 1
        lo, hi = _edge_positions(g, orders)
        r1, r2 = count_series(g.n, lo, hi)
        idx = np.asarray(ts) - 1
        z = _standardized(coef, r1[:, idx].astype(float), r2[:, idx].astype(float))[process]
        z = np.nan_to_num(z, nan=0.0)
        out.append((z[:, 1] - z[:, 0]) ** 2 * (z[:, 2] - z[:, 1]) ** 2)
    return np.concatenate(out)


def kc_grid(eps: float = DEFAULT_EPS, points: int = 5) -> list[tuple[float, float, float]]:
    """Triples ``u < v < w`` from an evenly spaced grid on ``[eps, 1 - eps]``."""
    if not 0 < eps < 0.5:
        raise TightnessError("eps must lie in (0, 0.5)")
    axis = np.linspace(eps, 1 - eps, points)
    return [(float(a), float(b), float(c)) for a, b, c in itertools.combinations(axis, 3)]


# -- leading-term expressions ------------------------------------------------

def _config_terms(g: Graph) -> dict:
    fn = graph_functionals(g)
    n, m = g.n, g.m
    x = fn["x"]
    return {
        "n": n, "m": m, "k": m / n,
        "sum_d2": float(fn["sum_d2"]), "sum_d3": float(fn["sum_d3"]), "sum_d4": float(fn["sum_d4"]),
        "edge_chain": float(fn["edge_chain"]), "edge_chain_sq": float(fn["edge_chain_sq"]),
        "x7": float(x[6]), "x8": float(x[7]), "x9": float(x[8]), "x14": float(x[13]),
    }


def zw_coefficients(u: float, v: float, w: float) -> list[float]:
    """``C_{w,1..12}`` at ``(u, v, w)``."""
    return [
        4 * v * w * (1 - v) * (1 - u) + 2 * (v - u) * (w - v),
        8 * v * w * (v - u) * (1 - u) * (1 - v),
        -2 * (v - u) * (w - v) + 2 * v * (1 - u) * (1 + v) + v * w * (5 * u - 7) * (1 - v),
        8 * v * (w - v) - 8 * w + 2 * v * (2 + 9 * w) * (1 - u) * (1 - v),
        8 * (w - u * v) + (48 - 56 * v) * (w - v) + 16 * (3 * v**2 + w) * (1 - u)
        - 4 * v * w * (49 - 37 * u) * (1 - v),
        -4 * (v - u) * (w - v) - 8 * v * w * (1 - v) * (1 - u),
        2 * (w - u * v) + 2 * (1 - 2 * v) * (w - v) + v * w * (9 * u - 11) * (1 - v)
        + 2 * v**2 * (1 - u),
        16 * (v - u) * (w - v) + 32 * v * w * (1 - v) * (1 - u),
        2 * (28 * v - 23) * (w - v) - 2 * (23 * v**2 + 9 * w) * (1 - u)
        - 2 * v * w * (72 * u - 95) * (1 - v) + 10 * (u * v - w),
        -8 * v * w * (1 - u) * (1 - v) - 4 * (w - v) * (v - u),
        4 * v * w * (1 - u) * (1 - v) + 2 * (w - v) * (v - u),
        8 * v * (5 * v * (1 - v) - (1 - u) * (12 * v**2 - 7 * v + 2))
        - (w - v) * (24 * (1 - u) + 8 * (1 - v) * (12 * u * v - 17 * v + 4)),
    ]


X8_READINGS = {"n*x8": 1, "n^2*x8": 2, "x8": 0}


@dataclass
class LeadingTerms:
    num: float
    den: float
    ratio: float
    coefficients: list[float]
    flags: list[str]
    variants: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"num": self.num, "den": self.den, "ratio": self.ratio,
                "coefficients": self.coefficients, "flags": self.flags,
                "variants": self.variants}


def zw_leading_terms(g: Graph, u: float, v: float, w: float,
                     x8_reading: str = "n^2*x8") -> LeadingTerms:
    """Leading-order numerator and denominator of the ``Z_w`` criterion.

    The ``x_8`` term carries a power of ``n`` that is illegible in the
    source; ``x8_reading`` picks one of :data:`X8_READINGS` and the ratios
    under every reading are kept in ``variants``.
    """
    c = _config_terms(g)
    n, k = c["n"], c["k"]
    C = zw_coefficients(u, v, w)
    gap = k * n * n - c["sum_d2"]
    den = v**2 * w**2 * gap**2 * (1 - u) ** 2 * (1 - v) ** 2
    flags = []
    if c["sum_d2"] > 0.5 * k * n * n:
        flags.append("sum |G_i|^2 is not small against k n^2; the denominator's leading "
                     "factor (k n^2 - sum |G_i|^2) is not dominant")

    def numerator(power):
        inner = (k * k * n**4 * C[0] + c["x14"] * C[1] + C[2] * c["sum_d4"]
                 + n * C[3] * c["sum_d3"] + C[4] * c["edge_chain_sq"]
                 + k * n * n * C[5] * c["sum_d2"] + n * n * C[6] * c["sum_d2"]
                 + k * n * C[7] * c["edge_chain"] + n * C[8] * c["edge_chain"]
                 + n * c["x7"] * C[9] + n**power * c["x8"] * C[10] + n * c["x9"] * C[11])
        return (w - v) * (v - u) * inner

    if x8_reading not in X8_READINGS:
        raise TightnessError(f"x8_reading must be one of {list(X8_READINGS)}")
    variants = {}
    for name, power in X8_READINGS.items():
        num_v = numerator(power)
        variants[name] = num_v / den if den else math.nan
    num = numerator(X8_READINGS[x8_reading])
    return LeadingTerms(num, den, num / den if den else math.nan, C, flags, variants)


def zdiff_k_terms(u: float, v: float, w: float) -> dict[str, float]:
    """``K_1..K_6`` at ``(u, v, w)`` from ``C_{d,1..29}``."""
    sq = math.sqrt
    eu, ev, ew = u * (1 - u), v * (1 - v), w * (1 - w)
    su, sv, sw = sq(eu), sq(ev), sq(ew)
    du, dw = v - u, w - v
    a_uv = sq(u * (1 - v))
    b_vu = sq(v * (1 - u))
    a_uw = sq(u * (1 - w))
    b_wu = sq(w * (1 - u))
    g_uv = su * (su - sv)       # sqrt(e_u)(sqrt(e_u) - sqrt(e_v))
    g_vw = sv * (sv - sw)       # sqrt(e_v)(sqrt(e_v) - sqrt(e_w))

    cd = {}
    cd[1] = 64 * v * (1 - v) * su * (u * (1 - v) + 2 * v * (1 - u) - 3 * sq(eu * ev))
    cd[2] = (32 * su * (12 * u - 8) * du**3
             + 192 * su * (8 * u**2 - 9 * u + 2 + su * (2 * sv - sw)) * du**2
             + 32 * (2 * su * (36 * u**3 - 57 * u**2 + 24 * u - 2)
                     - 18 * u * sv * (1 - u) * (1 - 2 * u)
                     + 2 * u * sw * (1 - u) * (5 - 9 * u) + 2 * su * sv * sw * (3 * u - 2)) * du
             - 64 * u * su * (24 * u**2 - 25 * u + 5) * (1 - u)
             + 192 * u * sv * (1 - u) * (6 * u**2 - 6 * u + 1)
             - 64 * u * sw * (1 - u) * (9 * u**2 - 10 * u + 2)
             + 32 * su * sv * sw * (12 * u**2 - 14 * u + 3))
    cd[3] = 64 * eu * (sw * (3 * u - 2) - 3 * su * (1 - 2 * u))
    cd[4] = 64 * ev * su
    K1 = (cd[1] * dw**2 + cd[2] * du * dw + cd[3] * g_uv * dw
          + cd[4] * g_vw * (a_uv * (b_vu - a_uv) - 2 * b_vu * (b_vu - a_uv)))

    cd[5] = 16 * (-6 * u * w + 4 * w + 2 * u - 1)
    cd[6] = 16 * (-12 * u**2 + 14 * u - 6 * su * sv - 3)
    cd[7] = 16 * (-2 * sw * (2 - 3 * u) - 2 * su * (1 - 3 * u))
    cd[8] = 32 * (3 * u - 2) * su
    cd[9] = -96 * sw
    cd[10] = 32 * su
    K2 = su * sv * sw * (cd[5] * du**2 + cd[6] * (w - u) * du + cd[7] * (su - sv) * du
                         + cd[8] * (su - sw) * du + cd[9] * su * (su - sv) ** 2
                         + cd[10] * (su - sv) * (a_uw * (b_wu - a_uw)
                                                 - 2 * b_wu * (b_wu - a_uw)))

    cd[11] = (-2 * v * su * (3 * u + 5 * v - 8 * u * v + 6 * u * v**2 - 4 * v**2 - 2)
              - 4 * eu * sv * (3 * v**2 - 3 * v + 1))
    # The printed C_{d,12} breaks its lines with stray commas; the lines are
    # read as one sum.
    cd[12] = (8 * su * (2 - 3 * u) * du**3 * dw
              - (4 * su * (24 * u**2 - 27 * u + 7) + 24 * eu * sv + 12 * eu * sw) * du**2 * dw
              + (-2 * su * (72 * u**3 - 114 * u**2 + 56 * u - 9)
                 + 36 * u * sv * (2 * u**2 - 3 * u + 1)
                 - 4 * u * sw * (9 * u**2 - 14 * u + 5) - 4 * su * sv * sw * (3 * u - 2)) * du * dw
              - 2 * su * (48 * u**4 - 98 * u**3 + 70 * u**2 - 21 * u + 2)
              + 4 * u * sv * (18 * u**3 - 36 * u**2 + 23 * u - 5)
              - 2 * u * sw * (18 * u**3 - 38 * u**2 + 25 * u - 5)
              - su * sv * sw * (24 * u**2 - 28 * u + 7)
              - 2 * sw * (1 - u - v) * (6 * u**3 - 10 * u**2 + 5 * u - 1))
    cd[13] = -4 * su * (14 * u**2 - (6 * u - 1) * (u**2 + u + 1))
    cd[14] = 2 * sw * (6 * u**3 - 10 * u**2 + 5 * u - 1)
    cd[15] = 4 * sv * (3 * v**2 - 3 * v + 1)
    cd[16] = 2 * v * su * (6 * v**2 - 8 * v + 3)
    K3 = (cd[11] * dw**2 + cd[12] * du * dw + cd[13] * g_uv * dw + cd[14] * sv * (sv - su) * dw
          + cd[15] * g_vw * g_uv + cd[16] * g_vw * du)

    cd[17] = (su * (16 * u * v * (12 * v**2 - 16 * v + 5) - 16 * v * (8 * v**2 - 9 * v + 2))
              + 32 * eu * sv * (6 * v**2 - 6 * v + 1))
    cd[18] = (128 * su * (3 * u - 2) * du**3
              + (32 * su * (48 * u**2 - 54 * u + 13) + 384 * eu * sv - 192 * eu * sw) * du**2
              + (16 * su * (144 * u**3 - 228 * u**2 + 104 * u - 13)
                 - 576 * sv * u * (2 * u**2 - 3 * u + 1)
                 + 64 * sw * u * (9 * u**2 - 14 * u + 5) + 64 * su * sv * sw * (3 * u - 2)) * du
              + 16 * su * (96 * u**4 - 196 * u**3 + 130 * u**2 - 31 * u + 2))
    cd[19] = 8 * (su * (1 - 2 * u) * (4 * (1 - 6 * u * (1 - u)))
                  + 2 * sw * (1 - u) * (1 - 8 * u + 3 * u**2))
    cd[20] = (sv - sw) * (-192 * eu * du**2
                          + 64 * (6 * u - 2 * su * sv - 18 * u**2 + 12 * u**3 + 3 * su * sv * u) * du
                          - 32 * eu * (7 - 36 * u * (1 - u))
                          + 16 * su * sv * (9 - 40 * u + 36 * u**2))
    cd[21] = (32 * su * (1 - 2 * u) * (1 - 12 * u + 12 * u**2)
              + 16 * sv * (u * (36 * u**2 - 56 * u + 23) - 2 + 5 * u - 14 * u**2 + 9 * u**3))
    cd[22] = 32 * su * (1 - 6 * u + 6 * u**2)
    K4 = (cd[17] * dw**2 + cd[18] * dw * du + cd[19] * g_uv * dw + cd[20] * du**2
          + cd[21] * su * (sv - sw) * du + cd[22] * eu * (su - sv) * (sv - sw))

    cd[23] = 4 * v * (1 - v) * ((u + 2 * v - 3 * u * v) * su - 3 * sv * u * (1 - u))
    cd[24] = -2 * sv * ((6 * u * sw - 6 * su + 12 * su * v) * (su - sv)
                        - 2 * (1 - 2 * v) * (u + 2 * v - 3 * u * v)
                        + 12 * u * (1 - u) * (1 - 2 * v) + 2 * su * sw * (-6 * u + 3 * v - 2))
    cd[25] = -2 * su * sv * ((4 * sw - 8 * su + 12 * su * u) * du
                             + 2 * su * (2 * u - 1) * (3 * u - 2) + sw * (8 * u - 3)
                             - 6 * su**2 * sw)
    cd[26] = -4 * sv * ((-3 * u**2 + 3 * u) * du + 2 * su * sv - 3 * u + 9 * u**2
                        - 6 * u**3 - 3 * u * su * sv)
    cd[27] = 12 * sv * u * (1 - u)
    K5 = (cd[23] * dw**2 + cd[24] * g_uv * dw + cd[25] * du * dw + cd[26] * g_vw * du
          + cd[27] * g_vw * g_uv)

    cd[28] = (16 * su * sw * (su + 2 * sw - 3 * sw * u - 3 * su * w) * du**2
              - 8 * su * sw * (-2 * su * (3 * u + 5 * w - 9 * u * w - 1)
                               + sv * (2 * u + 4 * w - 6 * u * w - 1)
                               + 2 * sw * (9 * u**2 - 10 * u + 2) + 6 * su * sv * sw) * du
              - 8 * sw * (-2 * u * (1 - u) * w * (-9 * u**2 + 10 * u - 2)
                          + 2 * u**2 * (1 - u) * (2 - 3 * u)
                          - su * sv * (3 * u + 3 * w - 14 * u * w + 12 * u**2 * w - 4 * u**2)
                          + 2 * su * sw * u * (9 * u**2 - 14 * u + 5)
                          - 6 * sv * sw * u * (2 * u**2 - 3 * u + 1)))
    cd[29] = -su * (48 * u * w * (1 - u) * (1 - w) + 16 * su * sw * (u * (1 - w) + 2 * w * (1 - u)))
    K6 = cd[28] * du + cd[29] * g_uv
    out = {"K1": K1, "K2": K2, "K3": K3, "K4": K4, "K5": K5, "K6": K6}
    out.update({f"C_d{i}": val for i, val in cd.items()})
    return out


def zdiff_leading_terms(g: Graph, u: float, v: float, w: float) -> LeadingTerms:
    """Leading-order numerator and denominator of the ``Z_diff`` criterion."""
    c = _config_terms(g)
    n, k = c["n"], c["k"]
    K = zdiff_k_terms(u, v, w)
    vg = c["sum_d2"] - 4 * c["m"] ** 2 / n
    eu, ev, ew = u * (1 - u), v * (1 - v), w * (1 - w)
    den = (n * vg) ** 2 * w * (1 - u) * eu * ev**3 * ew
    num = (K["K1"] * k**4 * n * n + K["K2"] * k * k * n * c["sum_d2"] + K["K3"] * c["sum_d4"]
           + K["K4"] * k * c["sum_d3"] + K["K5"] * c["x14"] + K["K6"] * c["edge_chain_sq"])
    flags = []
    if vg <= 1e-9 * max(1.0, c["sum_d2"]):
        flags.append("V_G = 0: degrees are constant and Z_diff is degenerate")
    ratio = num / den if den else math.nan
    return LeadingTerms(num, den, ratio, [K[f"K{i}"] for i in range(1, 7)], flags,
                        {name: val for name, val in K.items() if name.startswith("C_d")})


# -- convexity inequalities --------------------------------------------------

def _g(u, d):
    return np.sqrt(u * (1 - u)) * (np.sqrt(u * (1 - u)) - np.sqrt((u + d) * (1 - u - d)))


def _h(u, d):
    a = np.sqrt((u + d) * (1 - u))
    return a * (a - np.sqrt(u * (1 - u - d)))


def _second_derivative(u, d):
    """Shared closed form of ``g''`` and ``h''``."""
    y = u + d
    f = np.sqrt(y * (1 - y))
    return np.sqrt(u * (1 - u)) / 2 * (2 / f + (1 - 2 * y) ** 2 / (2 * f**3))


def inequality_suite(step: float = 1e-3, slack: float = 1e-12) -> dict:
    """Check the four inequalities behind the ``Z_diff`` coefficient bounds on
    every grid pair ``0 < u < v < 1`` of spacing ``step``."""
    axis = np.arange(1, int(round(1 / step))) * step
    iu, iv = np.triu_indices(len(axis), k=1)
    u, v = axis[iu], axis[iv]
    d = v - u
    su, sv = np.sqrt(u * (1 - u)), np.sqrt(v * (1 - v))
    b = np.sqrt(v * (1 - u))
    a = np.sqrt(u * (1 - v))
    checks = {
        "abs_g_le_delta": np.abs(su * (su - sv)) - d,
        "h_le_delta": b * (b - a) - d,
        "cross_le_delta": a * (b - a) - d,
    }
    report = {}
    for name, excess in checks.items():
        worst = int(np.argmax(excess))
        report[name] = {"holds": bool(np.all(excess <= slack)),
                        "max_excess": float(excess[worst]),
                        "at": [float(u[worst]), float(v[worst])]}
    # Convexity: closed-form second derivative positive, and the discrete
    # second difference of g and h non-negative away from the endpoints.
    second = _second_derivative(u, d)
    h2 = step
    inner = (d > h2) & (d < 1 - u - h2)
    ui, di = u[inner], d[inner]
    dg = _g(ui, di + h2) - 2 * _g(ui, di) + _g(ui, di - h2)
    dh = _h(ui, di + h2) - 2 * _h(ui, di) + _h(ui, di - h2)
    report["convexity"] = {
        "holds": bool(np.all(second > 0) and np.all(dg >= -slack) and np.all(dh >= -slack)),
        "min_second_derivative": float(second.min()),
        "min_second_difference_g": float(dg.min()),
        "min_second_difference_h": float(dh.min()),
    }
    report["pairs"] = int(len(u))
    report["step"] = step
    report["slack"] = slack
    report["all_hold"] = all(v["holds"] for k, v in report.items() if isinstance(v, dict))
    return report


# -- graph conditions ----------------------------------------------------------

def graph_conditions(g: Graph) -> dict:
    """Degree statistics entering the two tightness conditions."""
    d = g.degree.astype(float)
    n, m = g.n, g.m
    k = m / n
    s2 = float(np.sum(d**2))
    centered = d - 2 * m / n
    vg = s2 - 4 * m * m / n
    flags = []
    ratio1 = s2 / (k * n * n) if k else math.nan
    ratio2 = vg / (k * k) if k else math.nan
    if ratio1 > 0.5:
        flags.append("sum |G_i|^2 is of order k n^2 (hub dominated); the Z_w condition fails")
    if abs(vg) <= 1e-9 * max(1.0, s2):
        flags.append("V_G = 0 (regular graph); the Z_diff condition fails")
    return {
        "n": n, "m": m, "k": k, "sum_d2": s2, "V_G": vg,
        "centered_degree_max": float(np.max(np.abs(centered))) if n else 0.0,
        "ratio_sum_d2_over_kn2": ratio1, "ratio_VG_over_k2": ratio2,
        "flags": flags,
    }


def condition_diagnostics(family, sizes) -> dict:
    """Per-size graph conditions for ``family(n) -> Graph`` and the fitted
    growth exponents of ``k`` (alpha) and of the largest centered degree
    (beta)."""
    rows = [graph_conditions(family(int(n))) for n in sizes]
    logn = np.log([r["n"] for r in rows])

    def slope(vals):
        vals = np.asarray(vals, float)
        if len(rows) < 2 or np.any(vals <= 0):
            return None
        return float(np.polyfit(logn, np.log(vals), 1)[0])

    r1 = [r["ratio_sum_d2_over_kn2"] for r in rows]
    return {
        "rows": rows,
        "alpha": slope([r["k"] for r in rows]),
        "beta": slope([r["centered_degree_max"] for r in rows]),
        "ratio_sum_d2_over_kn2_decreasing": bool(all(b < a for a, b in zip(r1, r1[1:]))),
        "min_ratio_VG_over_k2": float(min(r["ratio_VG_over_k2"] for r in rows)),
    }
