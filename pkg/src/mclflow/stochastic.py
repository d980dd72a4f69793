"""Sparse column-stochastic matrices and the MCL operators acting on them.

Every operator returns a new :class:`StochasticMatrix` in canonical form:
compressed sparse columns, sorted row indices, no stored zeros, and each
column renormalised to sum to one. Renormalising after every step keeps
floating-point drift at round-off level instead of letting it compound
across iterations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ParameterError
from .graph import as_graph

COLUMN_SUM_TOL = 1e-12


@dataclass(frozen=True)
class PruneParams:
    """Entries strictly below ``threshold`` are removed by :func:`prune`."""

    threshold: float = 1e-5

    def __post_init__(self):
        if not 0 <= self.threshold < 1:
            raise ParameterError(f"prune threshold must be in [0, 1), got {self.threshold}")


class StochasticMatrix:
    """Immutable column-stochastic matrix backed by a CSC array.

    Construct through :func:`from_graph` or :meth:`from_dense`; the raw
    constructor trusts its input to already be canonical.
    """

    __slots__ = ("_csc",)

    def __init__(self, csc):
        csc.data.setflags(write=False)
        self._csc = csc

    @classmethod
    def from_sparse(cls, matrix):
        """Canonicalise and column-normalise any non-negative sparse matrix."""
        return cls(_normalize(sp.csc_array(matrix, dtype=float)))

    @classmethod
    def from_dense(cls, array):
        array = np.asarray(array, dtype=float)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ValueError("expected a square 2-D array")
        return cls.from_sparse(sp.csc_array(array))

    @classmethod
    def identity(cls, n):
        return cls(sp.identity(n, format="csc", dtype=float))

    @property
    def n(self):
        return self._csc.shape[0]

    @property
    def nnz(self):
        return self._csc.nnz

    @property
    def csc(self):
        """The underlying CSC array (read-only data; do not mutate)."""
        return self._csc

    def column(self, j):
        """``(rows, values)`` of column ``j``."""
        lo, hi = self._csc.indptr[j], self._csc.indptr[j + 1]
        return self._csc.indices[lo:hi], self._csc.data[lo:hi]

    def column_sums(self):
        return np.add.reduceat(self._csc.data, self._csc.indptr[:-1]) if self.nnz else np.zeros(0)

    def toarray(self):
        return self._csc.toarray()

    def permuted(self, perm):
        """``P @ M @ P.T`` where ``P`` sends index ``i`` to ``perm[i]``."""
        perm = np.asarray(perm)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return StochasticMatrix(_canonical(self._csc[inv][:, inv]))

    def check(self):
        """Raise AssertionError unless the stochastic invariants hold."""
        m = self._csc
        assert np.all(np.isfinite(m.data)), "non-finite entry"
        assert np.all(m.data > 0), "stored zero or negative entry"
        assert np.all(m.data <= 1 + COLUMN_SUM_TOL), "entry above 1"
        for j in range(self.n):
            rows = m.indices[m.indptr[j]:m.indptr[j + 1]]
            assert np.all(np.diff(rows) > 0), f"column {j} rows not strictly increasing"
        assert np.all(np.diff(m.indptr) > 0), "empty column"
        sums = self.column_sums()
        assert np.all(np.abs(sums - 1.0) <= COLUMN_SUM_TOL), "column sum off 1"

    def __eq__(self, other):
        if not isinstance(other, StochasticMatrix):
            return NotImplemented
        a, b = self._csc, other._csc
        return (
            a.shape == b.shape
            and np.array_equal(a.indptr, b.indptr)
            and np.array_equal(a.indices, b.indices)
            and np.array_equal(a.data, b.data)
        )

    __hash__ = None

    def __repr__(self):
        return f"StochasticMatrix(n={self.n}, nnz={self.nnz})"


def _canonical(m):
    m = sp.csc_array(m, dtype=float, copy=True)
    m.eliminate_zeros()
    m.sum_duplicates()
    m.sort_indices()
    return m


def _normalize(m):
    """Canonical form with each column divided by its sum."""
    m = _canonical(m)
    counts = np.diff(m.indptr)
    if np.any(counts == 0):
        raise ValueError("matrix has an empty column")
    sums = np.add.reduceat(m.data, m.indptr[:-1])
    m.data /= np.repeat(sums, counts)
    return m


def _same_dim(a, b):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def from_graph(graph, self_loop_weight=1.0):
    """Column-normalised adjacency of ``graph`` with a self-loop on every node."""
    graph = as_graph(graph)
    if graph.n == 0:
        raise ValueError("cannot build a flow matrix for an empty graph")
    if not self_loop_weight > 0:
        raise ParameterError(f"self_loop_weight must be > 0, got {self_loop_weight}")
    adj = graph.adjacency() + self_loop_weight * sp.identity(graph.n, format="csr")
    return StochasticMatrix(_normalize(adj))


def multiply(a, b):
    """Sparse product ``a @ b`` with renormalised columns."""
    _same_dim(a, b)
    return StochasticMatrix(_normalize(a.csc @ b.csc))


def expand(m, e):
    """``m`` raised to the integer power ``e`` (at least 2).

    Uses repeated left multiplication ``m @ (m @ (... m))`` and renormalises
    once at the end.
    """
    if int(e) != e or e < 2:
        raise ParameterError(f"expansion exponent must be an integer >= 2, got {e}")
    base = m.csc
    out = base
    for _ in range(int(e) - 1):
        out = base @ out
    return StochasticMatrix(_normalize(out))


def _rates(m, r):
    rates = np.asarray(r, dtype=float)
    if rates.ndim == 0:
        rates = np.full(m.n, float(rates))
    if rates.shape != (m.n,):
        raise ParameterError(f"inflation vector must have length {m.n}, got {rates.shape}")
    if not np.all(np.isfinite(rates)) or np.any(rates < 1):
        raise ParameterError("inflation rates must be finite and >= 1")
    return rates


def inflate(m, r):
    """Raise column ``j`` entrywise to ``r[j]`` and renormalise.

    ``r`` is a scalar or a length-``n`` vector of per-column rates, each >= 1.
    """
    rates = _rates(m, r)
    if np.all(rates == 1):
        return m
    csc = m.csc.copy()
    csc.data = np.power(csc.data, np.repeat(rates, np.diff(csc.indptr)))
    return StochasticMatrix(_normalize(csc))


def prune(m, params=PruneParams()):
    """Drop entries below the threshold, keeping each column's largest entry.

    A column that would lose every entry retains its (first) maximum, so the
    result stays column-stochastic.
    """
    tau = params.threshold
    csc = m.csc
    if tau == 0 or not np.any(csc.data < tau):
        return m
    keep = csc.data >= tau
    counts = np.diff(csc.indptr)
    starts = csc.indptr[:-1]
    emptied = np.flatnonzero(np.add.reduceat(keep.astype(np.int64), starts) == 0)
    for j in emptied:
        lo, hi = csc.indptr[j], csc.indptr[j + 1]
        keep[lo + int(np.argmax(csc.data[lo:hi]))] = True
    col_of = np.repeat(np.arange(m.n), counts)
    out = sp.csc_array(
        (csc.data[keep], (csc.indices[keep], col_of[keep])), shape=csc.shape
    )
    return StochasticMatrix(_normalize(out))


def density_pct(m):
    """Percentage of stored entries: ``100 * nnz / n**2``."""
    return 100.0 * m.nnz / (m.n * m.n)


def max_change(a, b):
    """Largest absolute entrywise difference, absent entries counting as zero."""
    _same_dim(a, b)
    diff = abs(a.csc - b.csc)
    return float(diff.max()) if diff.nnz else 0.0


def write_dense_csv(m, path, max_n=64):
    """Debug dump of ``m`` as dense CSV; refused for ``n > max_n``."""
    if m.n > max_n:
        raise ValueError(f"dense dump limited to n <= {max_n}, got n={m.n}")
    with open(path, "w", encoding="utf-8") as fh:
        for row in m.toarray():
            fh.write(",".join(repr(float(x)) for x in row) + "\n")
