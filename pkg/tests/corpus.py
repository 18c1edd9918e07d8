"""The fixed test corpus of small graphs."""
from __future__ import annotations

import numpy as np

from graphscan.graph import build_knn, build_mst, complete_graph, cycle_graph, path_graph, star_graph


def corpus() -> dict:
    """Name -> graph. Random members use fixed seeds."""
    graphs = {"K3": complete_graph(3)}
    for n in range(3, 7):
        graphs[f"P{n}"] = path_graph(n)
    for n in range(4, 7):
        graphs[f"S{n}"] = star_graph(n - 1)
    graphs["C6"] = cycle_graph(6)
    graphs["MST10"] = build_mst(np.random.default_rng(11).normal(size=(10, 2)))
    graphs["KNN7"] = build_knn(np.random.default_rng(12).normal(size=(7, 2)), 2)
    graphs["KNN9"] = build_knn(np.random.default_rng(13).normal(size=(9, 2)), 3)
    return graphs


def small_corpus(max_n: int = 7) -> dict:
    return {k: g for k, g in corpus().items() if g.n <= max_n}
