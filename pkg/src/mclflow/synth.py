"""Seeded random geometric graphs in the unit square.

Points come from NumPy's ``PCG64`` bit generator (``numpy.random.default_rng``)
seeded with the given integer: ``rng.random((n, 2))`` consumes draws in node
order, ``x`` before ``y`` for each node. Two nodes are joined when their
Minkowski-``p`` distance is at most ``radius`` (closed ball).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist

from .errors import ParameterError
from .graph import GeometricGraph, Graph


@dataclass(frozen=True)
class RggParams:
    n: int
    radius: float = 0.3
    metric_p: float = 2.0
    seed: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n}")
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise ParameterError(f"radius must be > 0, got {self.radius}")
        if not self.metric_p >= 1:
            raise ParameterError(f"metric_p must be >= 1, got {self.metric_p}")
        if not 0 <= int(self.seed) < 2**64:
            raise ParameterError(f"seed must fit in 64 unsigned bits, got {self.seed}")


def generate_rgg(params):
    """Random geometric graph with labels ``v0 .. v{n-1}`` and unit weights."""
    rng = np.random.default_rng(int(params.seed))
    coords = rng.random((params.n, 2))
    n = params.n
    if n > 1:
        dist = pdist(coords, metric="minkowski", p=params.metric_p)
        u, v = np.triu_indices(n, k=1)
        hit = dist <= params.radius
        edges = [(int(a), int(b), 1.0) for a, b in zip(u[hit], v[hit])]
    else:
        edges = []
    graph = Graph([f"v{i}" for i in range(n)], edges)
    return GeometricGraph(graph, coords)


def sweep_sizes(start, stop, step):
    """Inclusive arithmetic sequence ``start, start+step, ... <= stop``."""
    if step < 1 or start > stop:
        raise ParameterError(f"invalid size range {start}:{stop}:{step}")
    return list(range(start, stop + 1, step))
