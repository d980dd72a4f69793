"""Undirected weighted graphs and their on-disk formats.

Two edge-list dialects are understood:

``generic-tsv``
    ``label_a<TAB>label_b[<TAB>weight]``; a missing weight means 1.0.
``string-tsv``
    STRING ``protein.links`` export with a header naming ``protein1``,
    ``protein2`` and ``combined_score``; the score (0..1000) becomes
    ``combined_score / 1000``.

Lines starting with ``#`` and blank lines are ignored in both. The JSON form
``{"nodes": [...], "edges": [[u, v, w], ...], "coords": [[x, y], ...]}`` is
the lossless interchange format (``coords`` only for geometric graphs).
"""

from __future__ import annotations

import json
import logging
import math
from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import GraphFormatError, GraphValidationError

log = logging.getLogger(__name__)

FORMATS = ("generic-tsv", "string-tsv")


@dataclass(frozen=True)
class Graph:
    """Immutable undirected weighted graph.

    ``labels[i]`` names node ``i``. ``edges`` holds ``(u, v, w)`` triples with
    ``u < v``, at most one per node pair, no self-loops and ``w > 0``.
    """

    labels: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(
            self, "edges", tuple((int(u), int(v), float(w)) for u, v, w in self.edges)
        )
        if len(set(self.labels)) != len(self.labels):
            raise GraphValidationError("node labels must be unique")
        n = len(self.labels)
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u}, {v}) references a missing node")
            if u == v:
                raise GraphValidationError(f"self-loop on node {u}")
            if u > v:
                raise GraphValidationError(f"edge ({u}, {v}) must be stored with u < v")
            if (u, v) in seen:
                raise GraphValidationError(f"duplicate edge ({u}, {v})")
            if not (math.isfinite(w) and w > 0):
                raise GraphValidationError(f"edge ({u}, {v}) has non-positive weight {w}")
            seen.add((u, v))

    @property
    def n(self):
        return len(self.labels)

    @property
    def n_edges(self):
        return len(self.edges)

    def index(self, label):
        """Node index of ``label`` (KeyError if absent)."""
        try:
            return self._index[label]
        except AttributeError:
            object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})
            return self._index[label]

    def adjacency(self):
        """Symmetric weighted adjacency as a CSR matrix without diagonal."""
        if not self.edges:
            return sp.csr_array((self.n, self.n))
        u, v, w = (np.array(col) for col in zip(*self.edges))
        rows = np.concatenate([u, v]).astype(np.int64)
        cols = np.concatenate([v, u]).astype(np.int64)
        data = np.concatenate([w, w]).astype(float)
        return sp.csr_array((data, (rows, cols)), shape=(self.n, self.n))

    def neighbors(self):
        """Adjacency lists, each sorted ascending."""
        adj = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [sorted(a) for a in adj]

    def permuted(self, perm):
        """Relabelled copy where old node ``i`` becomes new node ``perm[i]``."""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        labels = [None] * self.n
        for old, new in enumerate(perm):
            labels[new] = self.labels[old]
        edges = []
        for u, v, w in self.edges:
            a, b = perm[u], perm[v]
            edges.append((min(a, b), max(a, b), w))
        return Graph(labels, sorted(edges))


@dataclass(frozen=True)
class GeometricGraph:
    """A graph whose nodes carry 2-D coordinates in the unit square."""

    graph: Graph
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        if coords.shape != (self.graph.n, 2):
            raise GraphValidationError(
                f"coords shape {coords.shape} does not match {self.graph.n} nodes"
            )
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)


class _Builder:
    """Accumulates labelled edges with first-appearance indexing and max-merge."""

    def __init__(self):
        self.labels = {}
        self.weights = {}
        self.self_loops = 0

    def node(self, label):
        if label not in self.labels:
            self.labels[label] = len(self.labels)
        return self.labels[label]

    def add(self, a, b, w, lineno):
        if not (math.isfinite(w) and w > 0):
            raise GraphValidationError(f"line {lineno}: weight must be > 0, got {w}")
        if a == b:
            self.self_loops += 1
            return
        u, v = self.node(a), self.node(b)
        key = (min(u, v), max(u, v))
        # dict keeps first-insertion order, so edge order follows the file
        if key not in self.weights or w > self.weights[key]:
            self.weights[key] = w

    def build(self, path):
        if not self.weights:
            raise GraphFormatError(f"{path}: no edges")
        if self.self_loops:
            log.warning("%s: dropped %d self-loop row(s)", path, self.self_loops)
        edges = [(u, v, w) for (u, v), w in self.weights.items()]
        return Graph(list(self.labels), edges)


def _parse_weight(text, lineno):
    try:
        return float(text)
    except ValueError:
        raise GraphFormatError(f"non-numeric weight {text!r}", line=lineno) from None


def _data_lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def _read_generic(path):
    builder = _Builder()
    for lineno, line in _data_lines(path):
        fields = [f.strip() for f in line.split("\t")]
        if len(fields) not in (2, 3) or not fields[0] or not fields[1]:
            raise GraphFormatError(
                f"expected 2 or 3 tab-separated columns, got {len(fields)}", line=lineno
            )
        w = _parse_weight(fields[2], lineno) if len(fields) == 3 else 1.0
        builder.add(fields[0], fields[1], w, lineno)
    return builder.build(path)


def _split_string_row(line):
    # native STRING downloads are space separated, exports from the web UI are tabbed
    return [f.strip() for f in (line.split("\t") if "\t" in line else line.split())]


def _read_string(path):
    builder = _Builder()
    header = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            # some exports comment out the header as "#protein1 ..."
            if line.startswith("#") and (header is not None or "protein1" not in line):
                continue
            fields = _split_string_row(line)
            if header is None:
                header = [f.lstrip("#") for f in fields]
                try:
                    cols = [header.index(c) for c in ("protein1", "protein2", "combined_score")]
                except ValueError:
                    raise GraphFormatError(
                        "header must name protein1, protein2 and combined_score", line=lineno
                    ) from None
                continue
            if len(fields) != len(header):
                raise GraphFormatError(
                    f"expected {len(header)} columns, got {len(fields)}", line=lineno
                )
            a, b, score = (fields[c] for c in cols)
            score = _parse_weight(score, lineno)
            if not 0 <= score <= 1000:
                raise GraphValidationError(
                    f"line {lineno}: combined_score {score} outside 0..1000"
                )
            builder.add(a, b, score / 1000.0, lineno)
    return builder.build(path)


def load_edge_list(path, format="generic-tsv"):
    """Read an edge list into a :class:`Graph`.

    Labels are indexed in order of first appearance. Repeated node pairs keep
    the largest weight; self-loop rows are skipped and their count logged.

    Raises
    ------
    GraphFormatError
        Malformed row (with its line number) or a file without edges.
    GraphValidationError
        A weight that is not strictly positive.
    """
    path = Path(path)
    if format == "generic-tsv":
        return _read_generic(path)
    if format == "string-tsv":
        return _read_string(path)
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def write_edge_list(graph, path):
    """Write ``graph`` as generic TSV with explicit weights."""
    with open(path, "w", encoding="utf-8") as fh:
        for u, v, w in graph.edges:
            fh.write(f"{graph.labels[u]}\t{graph.labels[v]}\t{w!r}\n")


def to_json_dict(graph):
    if isinstance(graph, GeometricGraph):
        out = to_json_dict(graph.graph)
        out["coords"] = [[float(x), float(y)] for x, y in graph.coords]
        return out
    return {
        "nodes": list(graph.labels),
        "edges": [[u, v, w] for u, v, w in graph.edges],
    }


def from_json_dict(data):
    try:
        nodes = data["nodes"]
        edges = []
        for e in data["edges"]:
            u, v, w = e
            edges.append((min(u, v), max(u, v), w))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad graph JSON: {exc}") from None
    graph = Graph(nodes, edges)
    if "coords" in data:
        return GeometricGraph(graph, np.asarray(data["coords"], dtype=float))
    return graph


def save_json(graph, path):
    """Write a Graph or GeometricGraph as JSON (deterministic bytes)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(graph), fh, separators=(",", ":"))
        fh.write("\n")


def load_json(path):
    """Read JSON written by :func:`save_json`; returns Graph or GeometricGraph."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: {exc.msg}", line=exc.lineno) from None
    return from_json_dict(data)


def as_graph(g):
    """Return the plain :class:`Graph` behind ``g``."""
    return g.graph if isinstance(g, GeometricGraph) else g


def degree(graph, v):
    """Number of edges incident to node ``v``."""
    graph = as_graph(graph)
    if not 0 <= v < graph.n:
        raise IndexError(f"node index {v} out of range for n={graph.n}")
    return sum(1 for a, b, _ in graph.edges if a == v or b == v)


def connected_components(graph):
    """Partition node indices by reachability.

    Each part is a sorted list; parts are ordered by their smallest member.
    """
    graph = as_graph(graph)
    adj = graph.neighbors()
    comp = [-1] * graph.n
    parts = []
    for start in range(graph.n):
        if comp[start] >= 0:
            continue
        comp[start] = len(parts)
        members = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if comp[v] < 0:
                    comp[v] = comp[start]
                    members.append(v)
                    queue.append(v)
        parts.append(sorted(members))
    return parts
