import itertools
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mclflow.graph import Graph  # noqa: E402


def clique_union(*sizes):
    """Disjoint union of complete graphs, labelled n0, n1, ..."""
    edges, offset = [], 0
    for k in sizes:
        edges += [(offset + a, offset + b, 1.0) for a, b in itertools.combinations(range(k), 2)]
        offset += k
    return Graph([f"n{i}" for i in range(offset)], edges)


def path_graph(n):
    return Graph([f"p{i}" for i in range(n)], [(i, i + 1, 1.0) for i in range(n - 1)])


def random_graph(seed, n_max=30, weighted=False):
    """Erdos-Renyi style graph with a seeded size and density."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, n_max + 1))
    p = rng.uniform(0.05, 0.5)
    edges = []
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < p:
            w = float(rng.uniform(0.1, 2.0)) if weighted else 1.0
            edges.append((a, b, w))
    return Graph([f"g{i}" for i in range(n)], edges)


@pytest.fixture
def two_triangles():
    return clique_union(3, 3)


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write


# ---- acceptance reporting: one pass/fail line per criterion ----

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "failed": []})
    if call.excinfo is not None:
        entry["ok"] = False
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] else "FAIL"
        extra = "" if entry["ok"] else f"  ({', '.join(entry['failed'])})"
        terminalreporter.write_line(f"[{status}] criterion {number}: {entry['title']}{extra}")
