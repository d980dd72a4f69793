"""The three Markov clustering pipelines and their per-iteration metrics.

``A1_mcl``
    Classic MCL: expand by ``e``, prune, inflate by a global ``r``.
``A2_rmcl``
    Regularized MCL: the expansion is replaced by right-multiplication with
    the fixed canonical flow matrix of the input graph.
``A3_variable_inflation``
    MCL where each column gets its own inflation rate derived from the
    normalised entropy of that column before expansion.
"""

from __future__ import annotations

import csv
import enum
import time
from dataclasses import dataclass, field

import numpy as np

from . import stochastic as sm
from .errors import ParameterError
from .graph import as_graph


class AlgorithmKind(enum.Enum):
    A1_mcl = "mcl"
    A2_rmcl = "rmcl"
    A3_variable_inflation = "vimcl"

    @classmethod
    def parse(cls, name):
        """Accept CLI names (``mcl``), member names (``A1_mcl``) or members."""
        if isinstance(name, cls):
            return name
        for kind in cls:
            if name in (kind.value, kind.name):
                return kind
        raise ParameterError(f"unknown algorithm {name!r}")


# Operator order applied after the expand/regularize step.
PRUNE_THEN_INFLATE = "prune-inflate"
INFLATE_THEN_PRUNE = "inflate-prune"
STEP_ORDERS = (PRUNE_THEN_INFLATE, INFLATE_THEN_PRUNE)


@dataclass(frozen=True)
class MclConfig:
    algorithm: AlgorithmKind = AlgorithmKind.A1_mcl
    expansion: int = 6
    inflation: float = 3.0
    prune: sm.PruneParams = field(default_factory=sm.PruneParams)
    epsilon: float = 1e-6
    max_iter: int = 100
    self_loop_weight: float = 1.0
    variable_inflation_range: tuple = (1.5, 3.0)
    step_order: str = PRUNE_THEN_INFLATE
    check_invariants: bool = False

    def __post_init__(self):
        object.__setattr__(self, "algorithm", AlgorithmKind.parse(self.algorithm))
        if isinstance(self.prune, (int, float)):
            object.__setattr__(self, "prune", sm.PruneParams(float(self.prune)))
        if int(self.expansion) != self.expansion or self.expansion < 2:
            raise ParameterError(f"expansion must be an integer >= 2, got {self.expansion}")
        if not (np.isfinite(self.inflation) and self.inflation >= 1):
            raise ParameterError(f"inflation must be >= 1, got {self.inflation}")
        if not (np.isfinite(self.epsilon) and self.epsilon > 0):
            raise ParameterError(f"epsilon must be > 0, got {self.epsilon}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ParameterError(f"max_iter must be a positive integer, got {self.max_iter}")
        if not self.self_loop_weight > 0:
            raise ParameterError(f"self_loop_weight must be > 0, got {self.self_loop_weight}")
        _check_range(self.variable_inflation_range)
        object.__setattr__(
            self, "variable_inflation_range", tuple(map(float, self.variable_inflation_range))
        )
        if self.step_order not in STEP_ORDERS:
            raise ParameterError(f"step_order must be one of {STEP_ORDERS}")


@dataclass(frozen=True)
class IterationMetrics:
    """One row of the convergence trace.

    Row 0 describes the initial flow matrix (build time, its density, and a
    change of 0). Row ``k`` describes the ``k``-th update.
    """

    iteration: int
    time_s: float
    density_pct: float
    change: float


@dataclass(frozen=True)
class RunResult:
    final_matrix: sm.StochasticMatrix
    metrics: list
    converged: bool
    iterations_used: int


def _check_range(rng):
    try:
        lo, hi = rng
    except (TypeError, ValueError):
        raise ParameterError("variable inflation range must be a (lo, hi) pair") from None
    if not (1 <= lo <= hi) or not np.isfinite(hi):
        raise ParameterError(f"variable inflation range needs 1 <= lo <= hi, got {rng}")
    return float(lo), float(hi)


def variable_inflation_rates(m, rate_range=(1.5, 3.0)):
    """Per-column inflation rates scaled by normalised column entropy.

    A column with ``k > 1`` nonzeros ``p_i`` gets
    ``lo + (hi - lo) * H`` where ``H = -sum(p_i ln p_i) / ln k`` lies in
    [0, 1]; single-entry columns get ``lo``. Flat columns are therefore
    inflated hardest.
    """
    lo, hi = _check_range(rate_range)
    csc = m.csc
    counts = np.diff(csc.indptr)
    p = csc.data
    plogp = np.add.reduceat(p * np.log(p), csc.indptr[:-1])
    rates = np.full(m.n, lo)
    multi = counts > 1
    entropy = -plogp[multi] / np.log(counts[multi])
    rates[multi] = lo + (hi - lo) * np.clip(entropy, 0.0, 1.0)
    return rates


def _update(m, m0, config):
    kind = config.algorithm
    if kind is AlgorithmKind.A2_rmcl:
        flow = sm.multiply(m, m0)
        rates = config.inflation
    elif kind is AlgorithmKind.A3_variable_inflation:
        rates = variable_inflation_rates(m, config.variable_inflation_range)
        flow = sm.expand(m, config.expansion)
    else:
        flow = sm.expand(m, config.expansion)
        rates = config.inflation
    if config.step_order == PRUNE_THEN_INFLATE:
        stages = [flow, sm.prune(flow, config.prune)]
        stages.append(sm.inflate(stages[-1], rates))
    else:
        stages = [flow, sm.inflate(flow, rates)]
        stages.append(sm.prune(stages[-1], config.prune))
    return stages


def run(graph, config=None, observer=None):
    """Iterate the configured pipeline on ``graph`` until convergence.

    Stops once the largest entrywise change between consecutive iterates is
    at most ``config.epsilon``, or after ``config.max_iter`` updates.

    ``observer``, if given, is called as ``observer(iteration, stage, matrix)``
    for the initial matrix (stage ``"initial"``) and after every operator
    (stages ``"expand"``/``"regularize"``, ``"prune"``, ``"inflate"``).
    """
    config = config or MclConfig()
    graph = as_graph(graph)
    if graph.n == 0:
        raise ValueError("cannot cluster an empty graph")

    t0 = time.perf_counter()
    m0 = sm.from_graph(graph, config.self_loop_weight)
    metrics = [IterationMetrics(0, time.perf_counter() - t0, sm.density_pct(m0), 0.0)]
    if config.check_invariants:
        m0.check()
    if observer:
        observer(0, "initial", m0)

    first = "regularize" if config.algorithm is AlgorithmKind.A2_rmcl else "expand"
    names = [first, *config.step_order.split("-")]
    m = m0
    converged = False
    for k in range(1, config.max_iter + 1):
        t0 = time.perf_counter()
        stages = _update(m, m0, config)
        nxt = stages[-1]
        change = sm.max_change(nxt, m)
        elapsed = time.perf_counter() - t0
        metrics.append(IterationMetrics(k, elapsed, sm.density_pct(nxt), change))
        if config.check_invariants:
            for stage in stages:
                stage.check()
        if observer:
            for name, stage in zip(names, stages):
                observer(k, name, stage)
        m = nxt
        if change <= config.epsilon:
            converged = True
            break
    return RunResult(m, metrics, converged, len(metrics) - 1)


METRICS_HEADER = ("iteration", "time_s", "density_pct", "change")


def write_metrics_csv(result, path):
    """Write the metrics trace with full round-trip float precision."""
    metrics = result.metrics if isinstance(result, RunResult) else result
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(METRICS_HEADER)
        for row in metrics:
            writer.writerow(
                [row.iteration, repr(row.time_s), repr(row.density_pct), repr(row.change)]
            )


def read_metrics_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != METRICS_HEADER:
            raise ValueError(f"unexpected metrics header {header}")
        return [
            IterationMetrics(int(i), float(t), float(d), float(c)) for i, t, d, c in reader
        ]
