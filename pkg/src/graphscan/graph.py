"""Similarity graphs on time-indexed observations.

Nodes are 1-based and identified with the time order of the observations.
"""
from __future__ import annotations

import json
from collections.abc import Iterable
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy.spatial.distance import cdist


class GraphError(ValueError):
    """Raised for malformed graph or data input."""


_METRICS = {"euclidean": "euclidean", "manhattan": "cityblock"}


class Graph:
    """Undirected simple graph on nodes ``1..n``.

    Parameters
    ----------
    n : int
        Number of nodes.
    edges : iterable of (int, int)
        Unordered node pairs. Stored as ``(i, j)`` with ``i < j``, sorted
        lexicographically.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        n = int(n)
        if n < 1:
            raise GraphError(f"node count must be positive, got {n}")
        normalized = set()
        for e in edges:
            i, j = (int(x) for x in e)
            if i == j:
                raise GraphError(f"self-loop at node {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphError(f"edge ({i}, {j}) has endpoint outside 1..{n}")
            key = (min(i, j), max(i, j))
            if key in normalized:
                raise GraphError(f"duplicate edge {key}")
            normalized.add(key)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(normalized))
        self._edge_index = {e: k for k, e in enumerate(self.edges)}

    def __repr__(self):
        return f"Graph(n={self.n}, edges={len(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        """Number of edges, ``|G|``."""
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edge_index

    def edge_id(self, e: tuple[int, int]) -> int:
        i, j = e
        try:
            return self._edge_index[(min(i, j), max(i, j))]
        except KeyError:
            raise GraphError(f"edge {tuple(e)} is not in the graph") from None

    @cached_property
    def edge_array(self) -> np.ndarray:
        """``(m, 2)`` array of 0-based endpoints."""
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.asarray(self.edges, dtype=np.int64) - 1

    @cached_property
    def degree(self) -> np.ndarray:
        """Per-node degree ``|G_i|`` for nodes ``1..n`` (index 0 is node 1)."""
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.edge_array.ravel(), 1)
        return deg

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        """1-based neighbor sets; ``neighbors[0]`` is unused and empty."""
        nb: list[set[int]] = [set() for _ in range(self.n + 1)]
        for i, j in self.edges:
            nb[i].add(j)
            nb[j].add(i)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def adjacency(self):
        """Sparse symmetric 0/1 adjacency matrix (CSR, int64)."""
        from scipy.sparse import csr_matrix

        ea = self.edge_array
        rows = np.concatenate([ea[:, 0], ea[:, 1]])
        cols = np.concatenate([ea[:, 1], ea[:, 0]])
        data = np.ones(rows.size, dtype=np.int64)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def relabel(self, perm) -> Graph:
        """Graph with node ``i`` renamed to ``perm[i - 1]`` (1-based values)."""
        perm = np.asarray(perm)
        return Graph(self.n, ((int(perm[i - 1]), int(perm[j - 1])) for i, j in self.edges))

    # -- persistence -------------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, doc: dict) -> Graph:
        try:
            return cls(doc["n"], doc["edges"])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph document: {exc}") from None

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()) + "\n")

    @classmethod
    def load(cls, path) -> Graph:
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from None
        return cls.from_dict(doc)


# -- common graphs ---------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def star_graph(leaves: int) -> Graph:
    """Star with center node 1 and ``leaves`` leaves."""
    return Graph(leaves + 1, ((1, j) for j in range(2, leaves + 2)))


# -- construction from data ------------------------------------------------

def as_data_matrix(data) -> np.ndarray:
    """Validate observations as a finite ``(n, d)`` float array."""
    x = np.asarray(data, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise GraphError("data must be a 1-D or 2-D array")
    if x.shape[0] < 2:
        raise GraphError("need at least two observations")
    if not np.all(np.isfinite(x)):
        raise GraphError("data contains non-finite values")
    return x


def pairwise_distances(data, metric: str = "euclidean") -> np.ndarray:
    x = as_data_matrix(data)
    try:
        name = _METRICS[metric]
    except KeyError:
        raise GraphError(f"unknown metric {metric!r}; use one of {sorted(_METRICS)}") from None
    return cdist(x, x, metric=name)


class _DisjointSet:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def build_mst(data, metric: str = "euclidean") -> Graph:
    """Minimum spanning tree by Kruskal's algorithm.

    Equal-weight edges are taken in lexicographic ``(i, j)`` order, so the
    result is reproducible bit for bit.
    """
    dist = pairwise_distances(data, metric)
    n = dist.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    # lexsort keys: last is primary
    order = np.lexsort((ju, iu, dist[iu, ju]))
    ds = _DisjointSet(n)
    tree = []
    for k in order:
        a, b = int(iu[k]), int(ju[k])
        if ds.union(a, b):
            tree.append((a + 1, b + 1))
            if len(tree) == n - 1:
                break
    return Graph(n, tree)


def build_knn(data, kk: int, metric: str = "euclidean") -> Graph:
    """Symmetrized k-nearest-neighbor graph.

    Edge ``(i, j)`` is present when ``j`` is among the ``kk`` nearest
    neighbors of ``i`` or vice versa. Distance ties go to the smaller index.
    """
    dist = pairwise_distances(data, metric)
    n = dist.shape[0]
    if not 1 <= kk <= n - 1:
        raise GraphError(f"kk must be in 1..{n - 1}, got {kk}")
    idx = np.arange(n)
    edges = set()
    for i in range(n):
        others = idx[idx != i]
        # stable argsort keeps index order among equal distances
        nearest = others[np.argsort(dist[i, others], kind="stable")[:kk]]
        for j in nearest:
            edges.add((min(i, int(j)) + 1, max(i, int(j)) + 1))
    return Graph(n, edges)


def neighborhood_stats(g: Graph) -> dict:
    """Degree power sums and shared-neighbor counts per edge.

    Returns a dict with exact integer ``sum_d2``, ``sum_d3``, ``sum_d4`` and
    ``shared``, a mapping from each edge ``(i, j)`` to
    ``|{l : (i, l), (j, l) in G}|``.
    """
    d = [int(x) for x in g.degree]
    nb = g.neighbors
    return {
        "sum_d2": sum(x * x for x in d),
        "sum_d3": sum(x**3 for x in d),
        "sum_d4": sum(x**4 for x in d),
        "shared": {(i, j): len(nb[i] & nb[j]) for i, j in g.edges},
    }


def read_table(path, delimiter: str | None = None) -> np.ndarray:
    """Read header-less numeric text, one observation per row.

    The delimiter is detected among tab and comma unless given; a file with
    neither is read as whitespace separated.
    """
    text = Path(path).read_text()
    if delimiter is None:
        first = next((ln for ln in text.splitlines() if ln.strip()), "")
        delimiter = "\t" if "\t" in first else ("," if "," in first else None)
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split(delimiter) if delimiter else line.split()
        try:
            rows.append([float(p) for p in parts])
        except ValueError:
            raise GraphError(f"{path}:{lineno}: non-numeric entry") from None
    if not rows:
        raise GraphError(f"{path}: no observations")
    if len({len(r) for r in rows}) != 1:
        raise GraphError(f"{path}: rows have differing numbers of columns")
    return as_data_matrix(np.array(rows))
