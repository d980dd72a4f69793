"""``mclflow`` command line: cluster, generate, validate, sweep.

Exit statuses: 0 success, 1 input/IO error, 2 parameter error,
3 clustering finished without converging (outputs are still written).
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import graph as gm
from .clusters import (
    extract_clusters,
    read_clusters_tsv,
    size_histogram,
    write_clusters_tsv,
    write_histogram_csv,
)
from .engine import AlgorithmKind, MclConfig, run, write_metrics_csv
from .errors import DunnUndefinedError, GraphFormatError, GraphValidationError, ParameterError
from .stochastic import PruneParams, density_pct, write_dense_csv
from .synth import RggParams, generate_rgg, sweep_sizes
from .validation import EuclideanDistance, HopDistance, dunn_index, format_float

EXIT_OK, EXIT_INPUT, EXIT_PARAM, EXIT_NOT_CONVERGED = 0, 1, 2, 3

FORMAT_ALIASES = {"tsv": "generic-tsv", "string": "string-tsv", "json": "json"}
SUMMARY_HEADER = (
    "n", "seed", "algorithm", "iterations", "converged",
    "final_density_pct", "n_clusters", "dunn", "total_time_s",
)
DENSE_DUMP_MAX_N = 64


class _ParserError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2) itself; raise so main() owns the exit path
    def error(self, message):
        raise _ParserError(f"{self.prog}: error: {message}")


def _float_pair(text):
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}") from None
    return lo, hi


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def parse_sizes(text):
    """``start:stop:step`` (inclusive) or an explicit comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ParameterError(f"size range must be start:stop:step, got {text!r}")
        try:
            start, stop, step = (int(p) for p in parts)
        except ValueError:
            raise ParameterError(f"non-integer size range {text!r}") from None
        return sweep_sizes(start, stop, step)
    try:
        sizes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"bad size list {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise ParameterError(f"sizes must be positive, got {text!r}")
    return sizes


def _add_mcl_flags(p):
    p.add_argument("--expansion", type=int, default=6)
    p.add_argument("--inflation", type=float, default=3.0)
    p.add_argument("--prune", type=float, default=1e-5, help="prune threshold")
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--self-loop", type=float, default=1.0, help="self-loop weight")
    p.add_argument("--vi-range", type=_float_pair, default=(1.5, 3.0),
                   help="LO,HI inflation range for vimcl")


def _config(args, algorithm):
    return MclConfig(
        algorithm=AlgorithmKind.parse(algorithm),
        expansion=args.expansion,
        inflation=args.inflation,
        prune=PruneParams(args.prune),
        epsilon=args.epsilon,
        max_iter=args.max_iter,
        self_loop_weight=args.self_loop,
        variable_inflation_range=args.vi_range,
    )


def build_parser():
    parser = _Parser(prog="mclflow", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cluster", help="cluster a graph file")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=sorted(FORMAT_ALIASES), default="tsv")
    p.add_argument("--algorithm", choices=[k.value for k in AlgorithmKind], default="mcl")
    _add_mcl_flags(p)
    p.add_argument("--out-clusters")
    p.add_argument("--out-metrics")
    p.add_argument("--out-histogram")
    p.add_argument("--dump-matrix", help=f"debug: final matrix as dense CSV (n <= {DENSE_DUMP_MAX_N})")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("generate", help="write a random geometric graph as JSON")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--radius", type=float, default=0.3)
    p.add_argument("--metric", type=float, default=2.0, help="Minkowski exponent")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="Dunn index of a clusters file")
    p.add_argument("--clusters", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--graph-format", choices=["auto", *sorted(FORMAT_ALIASES)], default="auto")
    p.add_argument("--distance", choices=["hop", "euclidean"], default="hop")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sweep", help="generate/cluster/validate over a size x seed x algorithm grid")
    p.add_argument("--sizes", default="150:250:25")
    p.add_argument("--algorithms", default="mcl,rmcl,vimcl")
    p.add_argument("--seeds", type=_int_list, default=[1, 2, 3, 4, 5])
    p.add_argument("--radius", type=float, default=0.3)
    p.add_argument("--metric", type=float, default=2.0)
    p.add_argument("--distance", choices=["hop", "euclidean"], default="euclidean")
    p.add_argument("--jobs", type=int, default=int(os.environ.get("MCLFLOW_JOBS", "1")))
    p.add_argument("--out-dir", required=True)
    _add_mcl_flags(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def _load_graph(path, fmt):
    fmt = FORMAT_ALIASES.get(fmt, fmt)
    if fmt == "auto":
        fmt = "json" if str(path).endswith(".json") else "generic-tsv"
    if fmt == "json":
        return gm.load_json(path)
    return gm.load_edge_list(path, fmt)


def cmd_cluster(args):
    config = _config(args, args.algorithm)
    g = _load_graph(args.input, args.format)
    graph = gm.as_graph(g)
    if args.dump_matrix and graph.n > DENSE_DUMP_MAX_N:
        raise ParameterError(f"--dump-matrix supports n <= {DENSE_DUMP_MAX_N}, graph has {graph.n}")
    result = run(graph, config)
    clustering = extract_clusters(result.final_matrix)
    if args.out_clusters:
        write_clusters_tsv(clustering, graph.labels, args.out_clusters)
    if args.out_metrics:
        write_metrics_csv(result, args.out_metrics)
    if args.out_histogram:
        write_histogram_csv(size_histogram(clustering), args.out_histogram)
    if args.dump_matrix:
        write_dense_csv(result.final_matrix, args.dump_matrix, DENSE_DUMP_MAX_N)
    print(
        f"clusters={len(clustering)} iterations={result.iterations_used} "
        f"converged={str(result.converged).lower()} "
        f"density_final={format_float(density_pct(result.final_matrix))}"
    )
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def cmd_generate(args):
    params = RggParams(args.nodes, args.radius, args.metric, args.seed)
    gm.save_json(generate_rgg(params), args.out)
    return EXIT_OK


def _backend(g, distance):
    if distance == "euclidean":
        if not isinstance(g, gm.GeometricGraph):
            raise GraphFormatError("euclidean distance needs a graph JSON with coords")
        return EuclideanDistance(g.coords)
    return HopDistance(g)


def cmd_validate(args):
    g = _load_graph(args.graph, args.graph_format)
    clustering = read_clusters_tsv(args.clusters, gm.as_graph(g).labels)
    backend = _backend(g, args.distance)
    result = dunn_index(clustering, backend)
    print(result.csv_row(len(clustering)))
    return EXIT_OK


def _run_cell(cell):
    """One (n, seed, algorithm) sweep cell; returns its summary row."""
    n, seed, algorithm, config, rgg, distance, out_dir, write_graph = cell
    t0 = time.perf_counter()
    g = generate_rgg(RggParams(n, rgg[0], rgg[1], seed))
    if write_graph:
        gm.save_json(g, out_dir / f"graph_n{n}_s{seed}.json")
    result = run(g, config)
    clustering = extract_clusters(result.final_matrix)
    stem = f"n{n}_s{seed}_{algorithm}"
    write_clusters_tsv(clustering, g.graph.labels, out_dir / f"clusters_{stem}.tsv")
    write_metrics_csv(result, out_dir / f"metrics_{stem}.csv")
    try:
        dunn = format_float(dunn_index(clustering, _backend(g, distance)).value)
    except DunnUndefinedError:
        dunn = "nan"
    return [
        n, seed, algorithm, result.iterations_used, str(result.converged).lower(),
        format_float(density_pct(result.final_matrix)), len(clustering), dunn,
        repr(time.perf_counter() - t0),
    ]


def cmd_sweep(args):
    sizes = parse_sizes(args.sizes)
    algorithms = [AlgorithmKind.parse(a.strip()).value for a in args.algorithms.split(",") if a.strip()]
    if not algorithms or not args.seeds:
        raise ParameterError("sweep needs at least one algorithm and one seed")
    if args.jobs < 1:
        raise ParameterError(f"--jobs must be >= 1, got {args.jobs}")
    configs = {a: _config(args, a) for a in algorithms}
    for n in sizes:
        RggParams(n, args.radius, args.metric, args.seeds[0])
    for s in args.seeds:
        RggParams(1, args.radius, args.metric, s)

    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise OSError(f"cannot write to {out_dir}: {exc}") from None

    cells = [
        (n, seed, a, configs[a], (args.radius, args.metric), args.distance, out_dir,
         a == algorithms[0])
        for n in sizes for seed in args.seeds for a in algorithms
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_run_cell, cells))
    else:
        rows = [_run_cell(c) for c in cells]

    with open(out_dir / "summary.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        writer.writerows(rows)
    return EXIT_OK


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ParserError as exc:
        print(exc, file=sys.stderr)
        return EXIT_PARAM
    if args.verbose:
        logging.getLogger().setLevel(logging.INFO)
    try:
        return args.func(args)
    except (ParameterError, DunnUndefinedError) as exc:
        print(f"mclflow: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (GraphFormatError, GraphValidationError, OSError) as exc:
        print(f"mclflow: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
