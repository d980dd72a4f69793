import itertools
import json

import numpy as np
import pytest

from mclflow import graph as gm
from mclflow.errors import ParameterError
from mclflow.synth import RggParams, generate_rgg, sweep_sizes


def brute_force_edges(coords, radius, p):
    out = set()
    for u, v in itertools.combinations(range(len(coords)), 2):
        d = (abs(coords[u][0] - coords[v][0]) ** p + abs(coords[u][1] - coords[v][1]) ** p) ** (1 / p)
        if d <= radius:
            out.add((u, v))
    return out


def test_single_node():
    geo = generate_rgg(RggParams(1, seed=3))
    assert geo.graph.n == 1 and geo.graph.edges == ()
    assert geo.graph.labels == ("v0",)


def test_two_nodes_large_radius():
    assert generate_rgg(RggParams(2, radius=2.0, seed=9)).graph.edges == ((0, 1, 1.0),)


@pytest.mark.parametrize("n, radius, p, seed", [
    (200, 0.3, 2, 42), (150, 0.3, 2, 1), (300, 0.15, 2, 5), (120, 0.25, 1, 2), (90, 0.2, 3.5, 8),
])
def test_edges_match_brute_force(n, radius, p, seed):
    geo = generate_rgg(RggParams(n, radius, p, seed))
    coords = geo.coords.tolist()
    assert {(u, v) for u, v, _ in geo.graph.edges} == brute_force_edges(coords, radius, p)
    assert all(w == 1.0 for *_, w in geo.graph.edges)
    assert geo.coords.min() >= 0 and geo.coords.max() < 1


def test_draw_order_is_x_then_y_per_node():
    geo = generate_rgg(RggParams(4, seed=123))
    rng = np.random.default_rng(123)
    expected = [[rng.random(), rng.random()] for _ in range(4)]
    assert geo.coords.tolist() == expected


def test_same_seed_same_bytes(tmp_path):
    for name in ("a.json", "b.json"):
        gm.save_json(generate_rgg(RggParams(100, seed=77)), tmp_path / name)
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert json.loads((tmp_path / "a.json").read_text())["coords"]


def test_different_seeds_differ():
    assert generate_rgg(RggParams(50, seed=1)).graph != generate_rgg(RggParams(50, seed=2)).graph


def test_mean_degree_band():
    means = [2 * generate_rgg(RggParams(200, seed=s)).graph.n_edges / 200 for s in range(20)]
    assert 15 <= np.mean(means) <= 45


@pytest.mark.parametrize("kwargs", [
    {"n": 0}, {"n": 5, "radius": 0}, {"n": 5, "radius": -1}, {"n": 5, "metric_p": 0.5},
    {"n": 5, "seed": -1}, {"n": 2.5},
])
def test_params_rejected(kwargs):
    with pytest.raises(ParameterError):
        RggParams(**kwargs)


def test_sweep_sizes():
    assert sweep_sizes(150, 250, 25) == [150, 175, 200, 225, 250]
    assert sweep_sizes(5, 5, 1) == [5]
    assert sweep_sizes(1, 10, 4) == [1, 5, 9]
    for bad in [(5, 4, 1), (1, 5, 0)]:
        with pytest.raises(ParameterError):
            sweep_sizes(*bad)
