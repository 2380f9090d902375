"""Brute-force chi_t and alpha_t for small graphs.

Graphs are handled as lists of Python-int bitsets. Coloring is exact
k-colorability backtracking (DSATUR branching, forward checking) tried for
k = lower, lower + 1, ... where the lower bound comes from a greedy clique.
The independence number is a maximum clique search on the complement with
greedy-coloring upper bounds. Both searches are deterministic and honour a
wall-clock budget; on expiry they raise ``OracleTimeout`` with the proven
(lower, upper) bracket.
"""
from __future__ import annotations

import math
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InvalidParameterError, OracleTimeout
from .graphs import Graph, graph_power

DEFAULT_BUDGET = 60.0
MAX_COLOR_VERTICES = 700
MAX_INDEPENDENCE_VERTICES = 2000
_CHECK_EVERY = 256


def default_budget() -> float:
    raw = os.environ.get("DISTCHROM_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return float(raw)
    except ValueError as exc:
        raise InvalidParameterError(f"DISTCHROM_BUDGET must be a number, got {raw!r}") from exc


@dataclass(frozen=True)
class ColoringWitness:
    colors: tuple[int, ...]
    color_count: int


def check_coloring(g: Graph, colors: Sequence[int]) -> bool:
    """Independent validity check: adjacent vertices differ, every vertex colored."""
    if len(colors) != g.vertex_count or any(c < 0 for c in colors):
        return False
    rows, cols = g.adjacency.nonzero()
    return all(colors[u] != colors[v] for u, v in zip(rows.tolist(), cols.tolist()))


def check_independent(g: Graph, vertices: Sequence[int]) -> bool:
    vs = list(vertices)
    return len(set(vs)) == len(vs) and not g.adjacency[vs][:, vs].any()


def _bitsets(g: Graph) -> list[int]:
    masks = []
    for row in g.adjacency:
        m = 0
        for v in row.nonzero()[0].tolist():
            m |= 1 << v
        masks.append(m)
    return masks


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Clock:
    def __init__(self, budget: Optional[float]):
        self.deadline = None if budget is None else time.monotonic() + budget
        self.ticks = 0

    def expired(self) -> bool:
        self.ticks += 1
        if self.deadline is None or self.ticks % _CHECK_EVERY:
            return False
        return time.monotonic() > self.deadline


class _Expired(Exception):
    pass


def _greedy_clique(adj: list[int]) -> list[int]:
    """Largest clique found by greedy growth from every start vertex."""
    n = len(adj)
    top = max(bin(a).count("1") for a in adj) + 1
    best: list[int] = []
    for s in range(n):
        clique, cand = [s], adj[s]
        while cand:
            v = max(_bits(cand), key=lambda u: (bin(adj[u] & cand).count("1"), -u))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
        if len(best) == top:
            break
    return best


def _dsatur(adj: list[int]) -> list[int]:
    n = len(adj)
    colors = [-1] * n
    seen = [0] * n  # bitmask of neighbor colors
    deg = [bin(a).count("1") for a in adj]
    for _ in range(n):
        v = max(
            (u for u in range(n) if colors[u] < 0),
            key=lambda u: (bin(seen[u]).count("1"), deg[u], -u),
        )
        c = 0
        while seen[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in _bits(adj[v]):
            seen[u] |= 1 << c
    return colors


def greedy_chi_upper(g: Graph, t: int = 1) -> int:
    """Colors used by DSATUR on G^t."""
    h = g if t == 1 else graph_power(g, t)
    return max(_dsatur(_bitsets(h))) + 1


def _k_colorable(adj: list[int], k: int, clock: _Clock, clique: Sequence[int] = ()) -> Optional[list[int]]:
    n = len(adj)
    full = (1 << k) - 1
    dom = [full] * n
    colors = [-1] * n
    deg = [bin(a).count("1") for a in adj]
    # any coloring can be relabelled so that the clique gets colors 0, 1, ...
    for c, v in enumerate(clique):
        colors[v] = c
        for u in _bits(adj[v]):
            dom[u] &= ~(1 << c)
    if any(colors[v] < 0 and not dom[v] for v in range(n)):
        return None

    def pick(used: int) -> int:
        # fewest options first; new color counts as one option
        allowed = (1 << min(used + 1, k)) - 1
        best, best_key = -1, None
        for v in range(n):
            if colors[v] < 0:
                key = (bin(dom[v] & allowed).count("1"), -deg[v], v)
                if best_key is None or key < best_key:
                    best, best_key = v, key
        return best

    def rec(done: int, used: int) -> bool:
        if clock.expired():
            raise _Expired
        if done == n:
            return True
        v = pick(used)
        options = dom[v] & ((1 << min(used + 1, k)) - 1)
        for c in _bits(options):
            bit = 1 << c
            colors[v] = c
            touched = []
            ok = True
            for u in _bits(adj[v]):
                if colors[u] < 0 and dom[u] & bit:
                    dom[u] &= ~bit
                    touched.append(u)
                    if not dom[u]:
                        ok = False
                        break
            if ok and rec(done + 1, max(used, c + 1)):
                return True
            for u in touched:
                dom[u] |= bit
            colors[v] = -1
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, n + 500))
    try:
        return list(colors) if rec(len(clique), len(clique)) else None
    finally:
        sys.setrecursionlimit(limit)


def exact_chromatic_number(
    g: Graph, budget: Optional[float] = None, lower_hint: int = 0, counting: bool = True
) -> tuple[int, ColoringWitness]:
    """Chromatic number with an optimal coloring.

    The starting lower bound is the larger of a greedy clique, ``lower_hint``
    and, if ``counting`` is set and the independence number can be found in a
    quarter of the budget, ceil(|V| / alpha).
    Raises OracleTimeout(lower, upper, witness) if the budget runs out.
    """
    n = g.vertex_count
    if n > MAX_COLOR_VERTICES:
        raise InvalidParameterError(f"{n} vertices exceeds the coloring cap {MAX_COLOR_VERTICES}")
    if budget is None:
        budget = default_budget()
    start = time.monotonic()
    adj = _bitsets(g)
    best = _dsatur(adj)
    upper = max(best) + 1
    clique = _greedy_clique(adj)
    lower = max(len(clique), lower_hint, 1)
    if counting and lower < upper:
        try:
            alpha = exact_independence_number(g, budget / 4)[0]
            lower = max(lower, -(-n // alpha))
        except OracleTimeout:
            pass
    clock = _Clock(budget - (time.monotonic() - start))
    k = lower
    try:
        while k < upper:
            found = _k_colorable(adj, k, clock, clique)
            if found is not None:
                best, upper = found, k
                break
            k += 1
    except _Expired:
        raise OracleTimeout(
            f"coloring search exceeded {budget:g} s", k, upper, ColoringWitness(tuple(best), upper)
        ) from None
    witness = ColoringWitness(tuple(best), upper)
    if not check_coloring(g, witness.colors):
        raise AssertionError("coloring search produced an invalid witness")
    return upper, witness


def _max_clique(adj: list[int], clock: _Clock, seed: list[int]) -> list[int]:
    """Branch and bound with greedy coloring bounds (Tomita-style)."""
    best = list(seed)

    def color_order(cand: int) -> list[tuple[int, int]]:
        # greedy-color cand; returns (vertex, color bound) ascending in bound
        out = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
                out.append((v, color))
        return out

    def expand(clique: list[int], cand: int):
        nonlocal best
        if clock.expired():
            raise _Expired
        order = color_order(cand)
        for v, bound in reversed(order):
            if len(clique) + bound <= len(best):
                return
            clique.append(v)
            nxt = cand & adj[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best):
                best = list(clique)
            clique.pop()
            cand &= ~(1 << v)

    expand([], (1 << len(adj)) - 1)
    return best


def exact_independence_number(g: Graph, budget: Optional[float] = None) -> tuple[int, list[int]]:
    """Maximum independent set; returns (size, sorted vertices)."""
    n = g.vertex_count
    if n > MAX_INDEPENDENCE_VERTICES:
        raise InvalidParameterError(f"{n} vertices exceeds the independence cap {MAX_INDEPENDENCE_VERTICES}")
    if budget is None:
        budget = default_budget()
    adj = _bitsets(g)
    everyone = (1 << n) - 1
    comp = [everyone & ~a & ~(1 << v) for v, a in enumerate(adj)]
    # greedy seed: minimum-degree-first maximal independent set
    seed, free = [], everyone
    for v in sorted(range(n), key=lambda u: (bin(adj[u]).count("1"), u)):
        if free >> v & 1:
            seed.append(v)
            free &= ~adj[v] & ~(1 << v)
    clock = _Clock(budget)
    try:
        found = _max_clique(comp, clock, seed)
    except _Expired:
        colors = _dsatur(comp)
        raise OracleTimeout(
            f"independence search exceeded {budget:g} s", len(seed), max(colors) + 1, sorted(seed)
        ) from None
    found = sorted(found)
    if not check_independent(g, found):
        raise AssertionError("independence search produced a dependent set")
    return len(found), found


def chi_t_exact(g: Graph, t: int, budget: Optional[float] = None) -> int:
    return exact_chromatic_number(graph_power(g, t), budget)[0]


def alpha_t_exact(g: Graph, t: int, budget: Optional[float] = None) -> int:
    return exact_independence_number(graph_power(g, t), budget)[0]


def ratio_lower(g: Graph, t: int, budget: Optional[float] = None) -> int:
    """ceil(|V| / alpha_t): the counting lower bound on chi_t."""
    return math.ceil(g.vertex_count / alpha_t_exact(g, t, budget))
