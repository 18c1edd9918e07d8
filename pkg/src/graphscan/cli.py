"""Command-line interface: ``graphscan <subcommand> ...``.

Every subcommand writes one JSON report (to ``--out`` or stdout) that embeds
the resolved run configuration and the library version. Input errors exit
with status 2 and a single diagnostic line on stderr; no report is written.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .census import BudgetError, census_bruteforce, census_closed_form
from .graph import Graph, GraphError, build_knn, build_mst, read_table
from .moments import MomentError, MomentSpec, product_moment
from .permnull import ConstraintError
from .report import SCHEMA, exact, finite
from .scan import STATISTICS, ScanError, permutation_pvalue, scan
from .tightness import (DEFAULT_EPS, TightnessError, graph_conditions, kc_grid, kc_moment,
                        zdiff_leading_terms, zw_leading_terms)

GRIDS = {"coarse": 5, "fine": 9}
INPUT_ERRORS = (GraphError, MomentError, ScanError, TightnessError, ConstraintError,
                BudgetError, OSError, json.JSONDecodeError, KeyError, TypeError)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    graph: str | None = None
    metric: str = "euclidean"
    delimiter: str | None = None
    statistic: str | None = None
    n0: int | None = None
    n1: int | None = None
    perms: int | None = None
    seed: int | None = None
    eps: float | None = None
    output: str | None = None
    extra: dict | None = None


def default_range(n: int) -> tuple[int, int]:
    """``(ceil(0.05 n), floor(0.95 n))`` clipped to ``1..n-1``."""
    return max(1, math.ceil(0.05 * n)), min(n - 1, math.floor(0.95 * n))


def _load_graph(cfg: RunConfig) -> Graph:
    """Graph from a JSON file, or built from ``--input`` data with an
    ``mst`` / ``knn:k`` spec."""
    spec = cfg.graph
    if spec is None:
        raise UsageError("--graph is required")
    if spec == "mst" or spec.startswith("knn:"):
        if cfg.input is None:
            raise UsageError(f"--graph {spec} needs --input data")
        data = read_table(cfg.input, cfg.delimiter)
        if spec == "mst":
            return build_mst(data, cfg.metric)
        try:
            kk = int(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad k-NN spec {spec!r}; use knn:<k>") from None
        return build_knn(data, kk, cfg.metric)
    return Graph.load(spec)


_FACTOR = re.compile(r"R([12])(?:\^(\d+))?\(\s*([rst]|\d+)\s*\)")


def parse_moment_spec(text: str, values: dict[str, int | None]) -> MomentSpec:
    """Parse ``R1^2(r)R1(s)R1(t)``-style products.

    Symbols ``r``, ``s``, ``t`` take their numeric values from ``values``;
    integer literals are also accepted.
    """
    compact = text.replace(" ", "").replace("*", "")
    factors = []
    pos = 0
    for mt in _FACTOR.finditer(compact):
        if mt.start() != pos:
            raise UsageError(f"cannot parse moment spec near {compact[pos:]!r}")
        pos = mt.end()
        side, power, arg = int(mt.group(1)), int(mt.group(2) or 1), mt.group(3)
        if arg.isdigit():
            t = int(arg)
        else:
            if values.get(arg) is None:
                raise UsageError(f"spec uses {arg} but --{arg} was not given")
            t = values[arg]
        factors.extend([(t, side)] * power)
    if pos != len(compact) or not factors:
        raise UsageError(f"cannot parse moment spec {text!r}")
    if len(factors) > 4:
        raise UsageError("moment spec has more than four factors")
    return MomentSpec.of(*factors)


def _cmd_build_graph(cfg: RunConfig, args) -> dict:
    g = _load_graph(cfg)
    if args.graph_out:
        g.save(args.graph_out)
    return {"graph": g.to_dict(), "n": g.n, "m": g.m}


def _cmd_census(cfg: RunConfig, args) -> dict:
    g = _load_graph(cfg)
    if args.method == "bruteforce":
        c = census_bruteforce(g)
    else:
        c = census_closed_form(g, printed=args.printed)
    return {"census": c.to_dict(), "n": g.n, "m": g.m}


def _cmd_moment(cfg: RunConfig, args) -> dict:
    g = _load_graph(cfg)
    spec = parse_moment_spec(args.spec, {"r": args.r, "s": args.s, "t": args.t})
    cfg.extra = {"spec": args.spec, "r": args.r, "s": args.s, "t": args.t, "method": args.method}
    value = product_moment(g, spec, method=args.method)
    return {"factors": [list(f) for f in spec.factors], "value": exact(value)}


def _cmd_scan(cfg: RunConfig, args) -> dict:
    g = _load_graph(cfg)
    lo, hi = default_range(g.n)
    cfg.n0 = lo if cfg.n0 is None else cfg.n0
    cfg.n1 = hi if cfg.n1 is None else cfg.n1
    series = scan(g, cfg.statistic, cfg.n0, cfg.n1)
    out = {"series": series.to_dict(), "statistic": cfg.statistic,
           "max": series.maximum[cfg.statistic], "argmax": series.argmax[cfg.statistic]}
    if cfg.perms:
        res = permutation_pvalue(g, cfg.statistic, cfg.n0, cfg.n1, cfg.perms, cfg.seed)
        out["test"] = res.to_dict()
    return out


def _cmd_tightness(cfg: RunConfig, args) -> dict:
    g = _load_graph(cfg)
    cfg.extra = {"grid": args.grid, "method": args.method, "samples": args.samples}
    rows = []
    for u, v, w in kc_grid(cfg.eps, GRIDS[args.grid]):
        k = kc_moment(g, cfg.statistic, u, v, w, method=args.method,
                      samples=args.samples, seed=cfg.seed)
        lead = (zw_leading_terms if cfg.statistic == "zw" else zdiff_leading_terms)(g, u, v, w)
        row = k.to_dict()
        row["ratio_to_sq_width"] = k.value / (w - u) ** 2
        row["leading_terms"] = lead.to_dict()
        row["leading_gap"] = (abs(k.value - lead.ratio) / k.value) if k.value else None
        rows.append(row)
    bound = max(r["ratio_to_sq_width"] for r in rows) if rows else None
    return {"grid": rows, "max_ratio_to_sq_width": bound, "conditions": graph_conditions(g)}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphscan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"graphscan {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, stat_choices=None):
        sp.add_argument("--input", help="header-less numeric table, one observation per row")
        sp.add_argument("--graph", help="graph JSON file, or 'mst' / 'knn:<k>' with --input")
        sp.add_argument("--metric", default="euclidean", choices=["euclidean", "manhattan"])
        sp.add_argument("--delimiter", default=None, help="override tab/comma detection")
        sp.add_argument("--out", default=None, help="report path (default: stdout)")
        if stat_choices:
            sp.add_argument("--stat", required=True, choices=stat_choices)

    sp = sub.add_parser("build-graph", help="build an MST or k-NN graph from data")
    common(sp)
    sp.add_argument("--graph-out", default=None, help="also write the bare graph JSON here")
    sp.set_defaults(func=_cmd_build_graph)

    sp = sub.add_parser("census", help="counts of the nineteen 4-edge configurations")
    common(sp)
    sp.add_argument("--method", default="closed", choices=["closed", "bruteforce"])
    sp.add_argument("--printed", action="store_true", help="use the count formulas as published")
    sp.set_defaults(func=_cmd_census)

    sp = sub.add_parser("moment", help="exact null product moment of R1/R2 counts")
    common(sp)
    sp.add_argument("--spec", required=True, help="e.g. 'R1^2(r)R1(s)R1(t)'")
    for name in "rst":
        sp.add_argument(f"--{name}", type=int, default=None)
    sp.add_argument("--method", default="census", choices=["census", "enumerate"])
    sp.set_defaults(func=_cmd_moment)

    sp = sub.add_parser("scan", help="scan statistic and permutation p-value")
    common(sp, list(STATISTICS))
    sp.add_argument("--n0", type=int, default=None)
    sp.add_argument("--n1", type=int, default=None)
    sp.add_argument("--perms", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_scan)

    sp = sub.add_parser("tightness", help="fourth-moment tightness criterion on a grid")
    common(sp, ["zw", "zdiff"])
    sp.add_argument("--grid", default="coarse", choices=list(GRIDS))
    sp.add_argument("--eps", type=float, default=DEFAULT_EPS)
    sp.add_argument("--method", default="exact", choices=["exact", "mc"])
    sp.add_argument("--samples", type=int, default=20000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_tightness)
    return p


def _config(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command, input=args.input, graph=args.graph, metric=args.metric,
        delimiter=args.delimiter, statistic=getattr(args, "stat", None),
        n0=getattr(args, "n0", None), n1=getattr(args, "n1", None),
        perms=getattr(args, "perms", None), seed=getattr(args, "seed", None),
        eps=getattr(args, "eps", None), output=args.out,
    )
    if cfg.perms is not None and cfg.perms < 0:
        raise UsageError("--perms must be non-negative")
    if cfg.eps is not None and not 0 < cfg.eps < 0.5:
        raise UsageError("--eps must lie in (0, 0.5)")
    if getattr(args, "samples", 2) < 2:
        raise UsageError("--samples must be at least 2")
    return cfg


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its message
        return 0 if exc.code == 0 else 2
    try:
        cfg = _config(args)
        result = args.func(cfg, args)
    except (UsageError, *INPUT_ERRORS) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"graphscan {args.command}: error: {msg}", file=sys.stderr)
        return 2
    report = {"schema": SCHEMA, "version": __version__, "config": asdict(cfg), "result": result}
    text = json.dumps(finite(report), indent=2, sort_keys=True, allow_nan=False)
    if cfg.output:
        Path(cfg.output).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
