"""Reading clusters off a converged flow matrix."""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .errors import GraphFormatError


@dataclass(frozen=True)
class Clustering:
    """A hard partition of ``range(n)``.

    ``clusters`` are sorted tuples ordered by their smallest member;
    ``assignment[v]`` is the index of the cluster holding ``v``.
    """

    clusters: tuple
    assignment: tuple

    @classmethod
    def from_groups(cls, groups, n=None):
        groups = [tuple(sorted(int(v) for v in g)) for g in groups]
        if any(not g for g in groups):
            raise ValueError("empty cluster")
        groups.sort(key=lambda g: g[0])
        members = [v for g in groups for v in g]
        n = len(members) if n is None else n
        if sorted(members) != list(range(n)):
            raise ValueError("clusters must be disjoint and cover every node")
        assignment = [0] * n
        for cid, g in enumerate(groups):
            for v in g:
                assignment[v] = cid
        return cls(tuple(groups), tuple(assignment))

    @classmethod
    def from_assignment(cls, assignment):
        groups = {}
        for v, c in enumerate(assignment):
            groups.setdefault(c, []).append(v)
        return cls.from_groups(groups.values(), n=len(assignment))

    @property
    def n(self):
        return len(self.assignment)

    def __len__(self):
        return len(self.clusters)

    def sizes(self):
        return [len(c) for c in self.clusters]

    def permuted(self, perm):
        """Clustering of the relabelled graph (old node ``i`` -> ``perm[i]``)."""
        return Clustering.from_groups([[perm[v] for v in c] for c in self.clusters], self.n)


@dataclass(frozen=True)
class SizeHistogram:
    """``bins`` are ``(cluster size, number of clusters)`` pairs, sizes ascending."""

    bins: tuple

    @property
    def total_nodes(self):
        return sum(f * c for f, c in self.bins)


def extract_clusters(m):
    """Attractor-based clustering of a (converged) flow matrix.

    Rows with a positive diagonal entry are attractors; each claims the
    columns where its row is positive. Attractors claiming a common column
    are merged transitively, so every claimed node ends up in exactly one
    group. Nodes no attractor claims become singletons.
    """
    csc = m.csc
    n = m.n
    attractor = csc.diagonal() > 0
    groups = DisjointSet(np.flatnonzero(attractor).tolist())
    owner = [None] * n
    for j in range(n):
        rows = csc.indices[csc.indptr[j]:csc.indptr[j + 1]]
        rows = rows[attractor[rows]]
        if rows.size == 0:
            continue
        first = int(rows[0])
        for i in rows[1:]:
            groups.merge(first, int(i))
        owner[j] = first
    members = {}
    singles = []
    for j, a in enumerate(owner):
        if a is None:
            singles.append([j])
        else:
            members.setdefault(groups[a], []).append(j)
    return Clustering.from_groups([*members.values(), *singles], n)


def size_histogram(clustering):
    counts = Counter(clustering.sizes())
    return SizeHistogram(tuple(sorted(counts.items())))


def write_histogram_csv(hist, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["size", "count"])
        writer.writerows(hist.bins)


def write_clusters_tsv(clustering, labels, path):
    """Rows ``cluster_id<TAB>label`` sorted by (cluster id, label)."""
    labels = list(labels)
    if len(labels) != clustering.n:
        raise ValueError(f"{len(labels)} labels for {clustering.n} nodes")
    rows = sorted((clustering.assignment[v], labels[v]) for v in range(clustering.n))
    with open(path, "w", encoding="utf-8") as fh:
        for cid, label in rows:
            fh.write(f"{cid}\t{label}\n")


def read_clusters_tsv(path, labels):
    """Parse a clusters TSV against the node ``labels`` of its graph.

    Every label must appear exactly once; unknown labels are rejected.
    """
    index = {lab: i for i, lab in enumerate(labels)}
    assignment = [None] * len(index)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise GraphFormatError("expected cluster_id<TAB>label", line=lineno)
            try:
                cid = int(fields[0])
            except ValueError:
                raise GraphFormatError(f"bad cluster id {fields[0]!r}", line=lineno) from None
            label = fields[1].strip()
            if label not in index:
                raise GraphFormatError(f"unknown node label {label!r}", line=lineno)
            v = index[label]
            if assignment[v] is not None:
                raise GraphFormatError(f"node {label!r} listed twice", line=lineno)
            assignment[v] = cid
    missing = [lab for lab, v in index.items() if assignment[v] is None]
    if missing:
        raise GraphFormatError(f"{len(missing)} node(s) missing from clusters file, e.g. {missing[0]!r}")
    return Clustering.from_assignment(assignment)
