from __future__ import annotations

import functools

import numpy as np
import pytest

from distchrom.errors import OracleTimeout
from distchrom.graphs import Graph, LeeParams, build_cycle, build_hypercube, build_lee_graph, graph_power
from distchrom.oracle import exact_chromatic_number, exact_independence_number

SWEEP_BUDGET = 20.0


def complete_graph(n: int) -> Graph:
    return Graph(np.ones((n, n), dtype=np.uint8) - np.eye(n, dtype=np.uint8), name=f"K{n}")


def path_graph(n: int) -> Graph:
    a = np.zeros((n, n), dtype=np.uint8)
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = 1
    return Graph(a, name=f"P{n}")


def lee(n: int, q: int) -> Graph:
    return build_cycle(q) if n == 1 else build_lee_graph(LeeParams(n, q))


def corpus(max_vertices: int = 125) -> list[tuple[str, Graph, tuple]]:
    """(name, graph, key) for Q_n with n <= 4 and G(n, q) with q^n <= max_vertices."""
    out = [(f"Q{n}", build_hypercube(n), ("qn", n)) for n in range(2, 5)]
    for n in (1, 2, 3):
        q = 3
        while q**n <= max_vertices:
            out.append((f"G({n},{q})", lee(n, q), ("lee", n, q)))
            q += 1
    return out


@functools.lru_cache(maxsize=None)
def oracle_chi(key: tuple, t: int) -> tuple[str, int, int]:
    """('exact', chi, chi) or ('timeout', proven lower, upper), cached across test modules."""
    g = build_hypercube(key[1]) if key[0] == "qn" else lee(key[1], key[2])
    try:
        value, _ = exact_chromatic_number(graph_power(g, t), SWEEP_BUDGET)
        return "exact", value, value
    except OracleTimeout as exc:
        return "timeout", exc.lower, exc.upper


@functools.lru_cache(maxsize=None)
def oracle_alpha(key: tuple, t: int) -> tuple[str, int, int]:
    g = build_hypercube(key[1]) if key[0] == "qn" else lee(key[1], key[2])
    try:
        value, _ = exact_independence_number(graph_power(g, t), SWEEP_BUDGET)
        return "exact", value, value
    except OracleTimeout as exc:
        return "timeout", exc.lower, exc.upper


# --- acceptance reporting ---------------------------------------------------

_CRITERIA: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.skipped:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "seconds": 0.0, "detail": ""})
    if report.failed:
        entry["ok"] = False
    if report.when == "call":
        entry["seconds"] += report.duration
        entry["detail"] = "; ".join(str(v) for k, v in item.user_properties if k == "detail")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        line = f"{'PASS' if e['ok'] else 'FAIL'}  criterion {number:>2}: {e['title']} ({e['seconds']:.1f} s)"
        if e["detail"]:
            line += f" [{e['detail']}]"
        terminalreporter.write_line(line)
