"""Dunn index with graph-hop or Euclidean distances."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .errors import DunnUndefinedError, GraphValidationError
from .graph import GeometricGraph, as_graph


class HopDistance:
    """Unweighted shortest-path length on a graph; ``inf`` when disconnected."""

    kind = "hop"

    def __init__(self, graph):
        self.graph = as_graph(graph)
        self._adj = None
        self._matrix = None

    @property
    def n(self):
        return self.graph.n

    def distance(self, u, v):
        _check_index(u, self.n)
        _check_index(v, self.n)
        if u == v:
            return 0.0
        if self._adj is None:
            self._adj = self.graph.neighbors()
        seen = {u: 0}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            for b in self._adj[a]:
                if b not in seen:
                    seen[b] = seen[a] + 1
                    if b == v:
                        return float(seen[b])
                    queue.append(b)
        return math.inf

    def matrix(self):
        if self._matrix is None:
            self._matrix = shortest_path(
                self.graph.adjacency(), directed=False, unweighted=True
            )
        return self._matrix


class EuclideanDistance:
    """L2 distance between node coordinates."""

    kind = "euclidean"

    def __init__(self, coords):
        if isinstance(coords, GeometricGraph):
            coords = coords.coords
        coords = np.asarray(coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise GraphValidationError("euclidean distance needs (n, 2) coordinates")
        self.coords = coords
        self._matrix = None

    @property
    def n(self):
        return len(self.coords)

    def distance(self, u, v):
        _check_index(u, self.n)
        _check_index(v, self.n)
        dx = self.coords[u, 0] - self.coords[v, 0]
        dy = self.coords[u, 1] - self.coords[v, 1]
        return float(np.sqrt(dx * dx + dy * dy))

    def matrix(self):
        # same operation sequence as distance(), so entries agree bit for bit
        if self._matrix is None:
            dx = self.coords[:, None, 0] - self.coords[None, :, 0]
            dy = self.coords[:, None, 1] - self.coords[None, :, 1]
            self._matrix = np.sqrt(dx * dx + dy * dy)
        return self._matrix


def _check_index(v, n):
    if not 0 <= v < n:
        raise IndexError(f"node index {v} out of range for n={n}")


def pairwise_distance(backend, u, v):
    return backend.distance(u, v)


@dataclass(frozen=True)
class DunnResult:
    value: float
    min_inter: float
    max_intra: float

    def csv_row(self, n_clusters):
        """``n_clusters,min_inter,max_intra,dunn`` with ``inf`` for infinity."""
        return ",".join(
            [str(n_clusters), format_float(self.min_inter),
             format_float(self.max_intra), format_float(self.value)]
        )


def format_float(x):
    """Shortest round-trip text; integral values without a fraction, ``inf`` spelt out."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def dunn_ratio(min_inter, max_intra):
    if math.isinf(min_inter):
        return math.inf
    if max_intra == 0:
        return math.inf if min_inter > 0 else 0.0
    return min_inter / max_intra


def dunn_index(clustering, backend):
    """Single-linkage separation over largest cluster diameter.

    Raises :class:`DunnUndefinedError` for fewer than two clusters.
    """
    if len(clustering) < 2:
        raise DunnUndefinedError("DI undefined for fewer than 2 clusters")
    if backend.n != clustering.n:
        raise ValueError(f"backend covers {backend.n} nodes, clustering {clustering.n}")
    dist = backend.matrix()
    labels = np.asarray(clustering.assignment)
    same = labels[:, None] == labels[None, :]
    min_inter = float(dist[~same].min())
    max_intra = float(dist[same].max())
    return DunnResult(dunn_ratio(min_inter, max_intra), min_inter, max_intra)
