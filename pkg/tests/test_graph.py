import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.sparse.csgraph import minimum_spanning_tree

from graphscan.graph import (Graph, GraphError, build_knn, build_mst, complete_graph,
                             cycle_graph, neighborhood_stats, pairwise_distances, path_graph,
                             read_table, star_graph)

# Lattice points keep every pairwise distance well away from zero, which the
# scipy reference would read as a missing edge.
points = st.integers(3, 14).flatmap(
    lambda n: st.lists(st.tuples(st.integers(-40, 40), st.integers(-40, 40)),
                       min_size=n, max_size=n, unique=True)).map(lambda p: [(a / 7, b / 3) for a, b in p])


def test_edges_are_normalized_and_sorted():
    g = Graph(3, [(3, 1), (2, 1)])
    assert g.edges == ((1, 2), (1, 3))
    assert g.m == 2
    assert g.degree.tolist() == [2, 1, 1]


@pytest.mark.parametrize("edges", [[(1, 1)], [(1, 4)], [(1, 2), (2, 1)]])
def test_malformed_edges_rejected(edges):
    with pytest.raises(GraphError):
        Graph(3, edges)


def test_standard_graphs():
    assert complete_graph(4).m == 6
    assert path_graph(5).edges == ((1, 2), (2, 3), (3, 4), (4, 5))
    assert cycle_graph(4).has_edge(4, 1)
    assert star_graph(3).degree.tolist() == [3, 1, 1, 1]


def test_roundtrip(tmp_path):
    g = cycle_graph(5)
    g.save(tmp_path / "g.json")
    assert Graph.load(tmp_path / "g.json") == g


def test_relabel_preserves_degree_multiset():
    g = star_graph(4)
    h = g.relabel([5, 4, 3, 2, 1])
    assert h.degree.tolist() == [1, 1, 1, 1, 4]


def test_neighborhood_stats_triangle():
    s = neighborhood_stats(complete_graph(3))
    assert s["sum_d2"] == 12
    assert set(s["shared"].values()) == {1}


@settings(max_examples=40, deadline=None)
@given(points)
def test_mst_is_spanning_tree_of_minimum_weight(pts):
    data = np.array(pts)
    g = build_mst(data)
    assert g.m == len(pts) - 1
    dist = pairwise_distances(data)
    ours = sum(dist[i - 1, j - 1] for i, j in g.edges)
    ref = minimum_spanning_tree(dist).sum()
    assert ours == pytest.approx(ref, rel=1e-12, abs=1e-12)
    # connected: a tree with n-1 edges and no cycle reaches every node
    seen, stack = {1}, [1]
    while stack:
        v = stack.pop()
        for w in g.neighbors[v] - seen:
            seen.add(w)
            stack.append(w)
    assert len(seen) == len(pts)


@settings(max_examples=40, deadline=None)
@given(points, st.integers(1, 3))
def test_knn_contains_each_nearest_neighbor(pts, kk):
    data = np.array(pts)
    kk = min(kk, len(pts) - 1)
    g = build_knn(data, kk)
    dist = pairwise_distances(data)
    for i in range(len(pts)):
        d = np.delete(dist[i], i)
        kth = np.sort(d)[kk - 1]
        # every node has at least kk neighbors, all strictly closer ones included
        assert len(g.neighbors[i + 1]) >= kk
        for j in range(len(pts)):
            if j != i and dist[i, j] < kth:
                assert g.has_edge(i + 1, j + 1)


def test_mst_is_deterministic_under_ties():
    data = np.array([[0.0], [1.0], [2.0], [3.0]])
    assert build_mst(data).edges == ((1, 2), (2, 3), (3, 4))


def test_read_table_delimiters(tmp_path):
    (tmp_path / "a.tsv").write_text("1\t2\n3\t4\n")
    (tmp_path / "b.csv").write_text("1,2\n3,4\n")
    (tmp_path / "c.txt").write_text("1 2\n3 4\n\n")
    for name in ("a.tsv", "b.csv", "c.txt"):
        assert read_table(tmp_path / name).tolist() == [[1, 2], [3, 4]]


def test_read_table_errors(tmp_path):
    (tmp_path / "bad.tsv").write_text("1\tx\n")
    (tmp_path / "ragged.tsv").write_text("1\t2\n3\n")
    with pytest.raises(GraphError, match="non-numeric"):
        read_table(tmp_path / "bad.tsv")
    with pytest.raises(GraphError, match="columns"):
        read_table(tmp_path / "ragged.tsv")
