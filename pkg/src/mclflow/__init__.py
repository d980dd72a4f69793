"""Markov clustering (MCL, regularized MCL, variable-inflation MCL) on sparse
column-stochastic matrices, with graph I/O, random geometric graphs and the
Dunn index."""

from .clusters import Clustering, SizeHistogram, extract_clusters, size_histogram
from .engine import AlgorithmKind, IterationMetrics, MclConfig, RunResult, run, variable_inflation_rates
from .errors import (
    DunnUndefinedError,
    GraphFormatError,
    GraphValidationError,
    MclflowError,
    ParameterError,
)
from .graph import GeometricGraph, Graph, connected_components, degree, load_edge_list
from .stochastic import PruneParams, StochasticMatrix
from .synth import RggParams, generate_rgg, sweep_sizes
from .validation import DunnResult, EuclideanDistance, HopDistance, dunn_index, pairwise_distance

__version__ = "0.1.0"

__all__ = [
    "AlgorithmKind",
    "Clustering",
    "DunnResult",
    "DunnUndefinedError",
    "EuclideanDistance",
    "GeometricGraph",
    "Graph",
    "GraphFormatError",
    "GraphValidationError",
    "HopDistance",
    "IterationMetrics",
    "MclConfig",
    "MclflowError",
    "ParameterError",
    "PruneParams",
    "RggParams",
    "RunResult",
    "SizeHistogram",
    "StochasticMatrix",
    "connected_components",
    "degree",
    "dunn_index",
    "extract_clusters",
    "generate_rgg",
    "load_edge_list",
    "pairwise_distance",
    "run",
    "size_histogram",
    "sweep_sizes",
    "variable_inflation_rates",
]
