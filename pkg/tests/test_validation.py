import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import clique_union, path_graph, random_graph
from mclflow.clusters import Clustering, extract_clusters
from mclflow.engine import run
from mclflow.errors import DunnUndefinedError
from mclflow.graph import Graph
from mclflow.synth import RggParams, generate_rgg
from mclflow.validation import (
    DunnResult,
    EuclideanDistance,
    HopDistance,
    dunn_index,
    format_float,
    pairwise_distance,
)


def brute_force_dunn(clustering, dist):
    """Double loop over all node pairs; ``dist(u, v)`` supplies distances."""
    min_inter, max_intra = math.inf, 0.0
    for u, v in itertools.combinations(range(clustering.n), 2):
        d = dist(u, v)
        if clustering.assignment[u] == clustering.assignment[v]:
            max_intra = max(max_intra, d)
        else:
            min_inter = min(min_inter, d)
    return min_inter, max_intra


def nx_hops(graph):
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from((u, v) for u, v, _ in graph.edges)
    lengths = dict(nx.all_pairs_shortest_path_length(g))
    return lambda u, v: float(lengths[u].get(v, math.inf))


def py_euclid(coords):
    pts = [tuple(map(float, p)) for p in coords]

    def d(u, v):
        dx = pts[u][0] - pts[v][0]
        dy = pts[u][1] - pts[v][1]
        return math.sqrt(dx * dx + dy * dy)

    return d


def test_euclidean_345():
    assert pairwise_distance(EuclideanDistance([[0, 0], [3, 4]]), 0, 1) == 5.0


def test_hops_path_and_disconnected():
    backend = HopDistance(path_graph(3))
    assert pairwise_distance(backend, 0, 2) == 2
    assert pairwise_distance(backend, 1, 1) == 0
    assert pairwise_distance(HopDistance(clique_union(2, 2)), 0, 3) == math.inf


def test_distance_index_errors():
    with pytest.raises(IndexError):
        pairwise_distance(HopDistance(path_graph(3)), 0, 3)
    with pytest.raises(IndexError):
        pairwise_distance(EuclideanDistance([[0, 0]]), -1, 0)


@pytest.mark.parametrize("seed", range(8))
def test_hop_bfs_agrees_with_matrix_and_networkx(seed):
    g = random_graph(seed)
    backend = HopDistance(g)
    oracle = nx_hops(g)
    mat = backend.matrix()
    for u, v in itertools.product(range(g.n), repeat=2):
        assert backend.distance(u, v) == mat[u, v] == oracle(u, v)


def test_euclidean_matrix_bitwise_matches_pairwise():
    coords = np.random.default_rng(0).random((40, 2))
    backend = EuclideanDistance(coords)
    mat = backend.matrix()
    oracle = py_euclid(coords)
    for u, v in itertools.product(range(40), repeat=2):
        assert mat[u, v] == backend.distance(u, v) == oracle(u, v)


def test_dunn_two_columns():
    c = Clustering.from_groups([[0, 1], [2, 3]])
    r = dunn_index(c, EuclideanDistance([[0, 0], [0, 1], [5, 0], [5, 1]]))
    assert r == DunnResult(5.0, 5.0, 1.0)


def test_dunn_two_singletons_is_infinite():
    c = Clustering.from_groups([[0], [1]])
    r = dunn_index(c, EuclideanDistance([[0, 0], [2, 0]]))
    assert (r.min_inter, r.max_intra, r.value) == (2.0, 0.0, math.inf)
    assert r.csv_row(2) == "2,2,0,inf"


def test_dunn_disconnected_hops_is_infinite():
    g = clique_union(3, 3)
    r = dunn_index(Clustering.from_groups([[0, 1, 2], [3, 4, 5]]), HopDistance(g))
    assert r.min_inter == math.inf and r.value == math.inf and r.max_intra == 1


def test_dunn_zero_over_zero_convention():
    c = Clustering.from_groups([[0], [1]])
    assert dunn_index(c, EuclideanDistance([[0.5, 0.5], [0.5, 0.5]])).value == 0.0


def test_dunn_needs_two_clusters():
    with pytest.raises(DunnUndefinedError, match="DI undefined"):
        dunn_index(Clustering.from_groups([[0, 1]]), HopDistance(path_graph(2)))


def test_dunn_size_mismatch():
    with pytest.raises(ValueError):
        dunn_index(Clustering.from_groups([[0], [1]]), HopDistance(path_graph(3)))


def test_dunn_on_clustered_rgg_matches_brute_force():
    geo = generate_rgg(RggParams(150, 0.3, 2, seed=7))
    from mclflow.engine import MclConfig

    c = extract_clusters(run(geo, MclConfig(expansion=2)).final_matrix)
    assert len(c) >= 2
    r = dunn_index(c, EuclideanDistance(geo.coords))
    min_inter, max_intra = brute_force_dunn(c, py_euclid(geo.coords))
    assert (r.min_inter, r.max_intra) == (min_inter, max_intra)
    assert r.value == min_inter / max_intra


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.01, 100))
def test_dunn_scale_invariant(seed, scale):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 20))
    coords = rng.random((n, 2))
    labels = rng.integers(0, 3, n)
    labels[:2] = [0, 1]
    c = Clustering.from_assignment(labels.tolist())
    a = dunn_index(c, EuclideanDistance(coords)).value
    b = dunn_index(c, EuclideanDistance(coords * scale)).value
    assert b == pytest.approx(a, rel=1e-12) or (math.isinf(a) and math.isinf(b))


@pytest.mark.parametrize("seed", range(10))
def test_merging_closest_clusters_never_shrinks_diameter(seed):
    rng = np.random.default_rng(seed)
    coords = rng.random((25, 2))
    c = Clustering.from_assignment(rng.integers(0, 5, 25).tolist())
    if len(c) < 3:
        return
    backend = EuclideanDistance(coords)
    d = backend.matrix()
    pairs = itertools.combinations(range(len(c)), 2)
    a, b = min(pairs, key=lambda ab: d[np.ix_(c.clusters[ab[0]], c.clusters[ab[1]])].min())
    merged = [cl for i, cl in enumerate(c.clusters) if i not in (a, b)] + [c.clusters[a] + c.clusters[b]]
    before = dunn_index(c, backend).max_intra
    assert dunn_index(Clustering.from_groups(merged), backend).max_intra >= before


@pytest.mark.parametrize("seed", range(10))
def test_dunn_permutation_invariant(seed):
    g = random_graph(seed)
    rng = np.random.default_rng(seed)
    c = Clustering.from_assignment(rng.integers(0, 3, g.n).tolist())
    if len(c) < 2:
        return
    perm = rng.permutation(g.n)
    assert dunn_index(c, HopDistance(g)) == dunn_index(c.permuted(perm), HopDistance(g.permuted(perm)))


def test_format_float():
    assert [format_float(x) for x in (2.0, 0.0, math.inf, 0.1, 1e-300)] == ["2", "0", "inf", "0.1", "1e-300"]
    assert float(format_float(1 / 3)) == 1 / 3


def test_euclidean_requires_pairs():
    from mclflow.errors import GraphValidationError

    with pytest.raises(GraphValidationError):
        EuclideanDistance([1, 2, 3])


def test_hop_distance_on_geometric_graph():
    geo = generate_rgg(RggParams(10, 0.5, seed=1))
    assert HopDistance(geo).graph is geo.graph
    assert isinstance(HopDistance(Graph(["a"], [])).matrix(), np.ndarray)
