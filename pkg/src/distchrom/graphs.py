"""Graph families (cycles, hypercubes, Lee graphs), products, powers and metrics.

Graphs are stored as dense symmetric 0/1 adjacency matrices. The largest graph
this package handles is G(4, 6) with 1296 vertices, so dense storage keeps the
eigensolvers and power computations simple.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from os import PathLike
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidParameterError

#: Distance reported for vertex pairs in different components.
UNREACHABLE = np.iinfo(np.int64).max


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..vertex_count-1``.

    ``labels`` optionally attaches a coordinate vector to every vertex (used by
    the hypercube and Lee families, ordered lexicographically).
    """

    adjacency: np.ndarray
    labels: Optional[tuple[tuple[int, ...], ...]] = None
    name: str = field(default="graph")

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=np.uint8)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] == 0:
            raise InvalidParameterError("adjacency must be a non-empty square matrix")
        if not np.array_equal(adj, adj.T):
            raise InvalidParameterError("adjacency must be symmetric")
        if np.any(np.diag(adj)):
            raise InvalidParameterError("adjacency must have a zero diagonal")
        if np.any(adj > 1):
            raise InvalidParameterError("adjacency must be 0/1")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        if self.labels is not None:
            labels = tuple(tuple(int(x) for x in lab) for lab in self.labels)
            if len(labels) != adj.shape[0]:
                raise InvalidParameterError("label count must equal vertex count")
            if len(set(labels)) != len(labels):
                raise InvalidParameterError("labels must be pairwise distinct")
            object.__setattr__(self, "labels", labels)

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1).astype(np.int64)

    def is_regular(self) -> bool:
        deg = self.degrees()
        return bool(np.all(deg == deg[0]))

    def neighbors(self, u: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[u])

    def index_of(self, label: Sequence[int]) -> int:
        if self.labels is None:
            raise InvalidParameterError("graph has no vertex labels")
        return self.labels.index(tuple(label))

    def __repr__(self):
        return f"Graph({self.name!r}, vertices={self.vertex_count}, edges={self.edge_count})"


def build_cycle(q: int) -> Graph:
    """The q-cycle C_q, vertex i adjacent to (i +- 1) mod q."""
    if q < 3:
        raise InvalidParameterError(f"cycle needs q >= 3, got {q}")
    adj = np.zeros((q, q), dtype=np.uint8)
    idx = np.arange(q)
    adj[idx, (idx + 1) % q] = 1
    adj[(idx + 1) % q, idx] = 1
    return Graph(adj, labels=tuple((i,) for i in range(q)), name=f"C{q}")


def build_hypercube(n: int) -> Graph:
    """Q_n on binary vectors, edges between vectors at Hamming distance 1."""
    if n < 1:
        raise InvalidParameterError(f"hypercube needs n >= 1, got {n}")
    size = 1 << n
    idx = np.arange(size)
    adj = np.zeros((size, size), dtype=np.uint8)
    for bit in range(n):
        adj[idx, idx ^ (1 << bit)] = 1
    # vertex index read as a binary number, most significant coordinate first
    labels = tuple(tuple((v >> (n - 1 - k)) & 1 for k in range(n)) for v in range(size))
    return Graph(adj, labels=labels, name=f"Q{n}")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product; vertex (u, v) gets index ``u * |H| + v``."""
    ng, nh = g.vertex_count, h.vertex_count
    adj = np.kron(g.adjacency, np.eye(nh, dtype=np.uint8)) + np.kron(
        np.eye(ng, dtype=np.uint8), h.adjacency
    )
    gl = g.labels or tuple((u,) for u in range(ng))
    hl = h.labels or tuple((v,) for v in range(nh))
    labels = tuple(a + b for a in gl for b in hl)
    return Graph(adj, labels=labels, name=f"{g.name}x{h.name}")


@dataclass(frozen=True)
class LeeParams:
    """Length ``n`` and alphabet size ``q`` of the Lee space A_q^n."""

    n: int
    q: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"n must be >= 1, got {self.n}")
        if self.q < 2:
            raise InvalidParameterError(f"q must be >= 2, got {self.q}")

    @property
    def size(self) -> int:
        return self.q**self.n


def build_lee_graph(params: LeeParams) -> Graph:
    """G(n, q), the n-fold Cartesian power of C_q; q = 2 gives Q_n."""
    n, q = params.n, params.q
    if q == 2:
        g = build_hypercube(n)
        return Graph(g.adjacency, labels=g.labels, name=f"G({n},2)")
    cycle = build_cycle(q)
    g = cycle
    for _ in range(n - 1):
        g = cartesian_product(g, cycle)
    return Graph(g.adjacency, labels=g.labels, name=f"G({n},{q})")


def all_pairs_distances(g: Graph) -> np.ndarray:
    """Geodesic distance matrix; unreachable pairs hold ``UNREACHABLE``.

    Runs a level-synchronous breadth-first search from every vertex at once.
    """
    n = g.vertex_count
    adj = g.adjacency.astype(np.float32)
    dist = np.full((n, n), UNREACHABLE, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    seen = np.eye(n, dtype=bool)
    frontier = np.eye(n, dtype=np.float32)
    level = 0
    while frontier.any():
        level += 1
        frontier = ((frontier @ adj) > 0) & ~seen
        dist[frontier] = level
        seen |= frontier
        frontier = frontier.astype(np.float32)
    return dist


def diameter(g: Graph) -> int:
    dist = all_pairs_distances(g)
    if np.any(dist == UNREACHABLE):
        return UNREACHABLE
    return int(dist.max())


def is_connected(g: Graph) -> bool:
    return not np.any(all_pairs_distances(g)[0] == UNREACHABLE)


def graph_power(g: Graph, t: int) -> Graph:
    """G^t: u ~ v iff 0 < d_G(u, v) <= t."""
    if t < 1:
        raise InvalidParameterError(f"power needs t >= 1, got {t}")
    if t == 1:
        return g
    dist = all_pairs_distances(g)
    adj = ((dist > 0) & (dist <= t)).astype(np.uint8)
    return Graph(adj, labels=g.labels, name=f"{g.name}^{t}")


def lee_distance(u: Sequence[int], v: Sequence[int], q: int) -> int:
    """Sum over coordinates of min(|u_i - v_i|, q - |u_i - v_i|)."""
    if len(u) != len(v):
        raise InvalidParameterError("vectors must have equal length")
    total = 0
    for a, b in zip(u, v):
        if not (0 <= a < q and 0 <= b < q):
            raise InvalidParameterError(f"coordinate out of range for q={q}")
        diff = abs(a - b)
        total += min(diff, q - diff)
    return total


def lee_distance_matrix(points: np.ndarray, others: np.ndarray, q: int) -> np.ndarray:
    """Vectorised Lee distances between rows of ``points`` and ``others``."""
    diff = np.abs(points[:, None, :] - others[None, :, :])
    return np.minimum(diff, q - diff).sum(axis=2)


def lee_space(n: int, q: int) -> np.ndarray:
    """All vectors of A_q^n in lexicographic order, shape (q^n, n)."""
    return np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64).reshape(-1, n)


def read_edge_list(path: str | PathLike) -> Graph:
    """Parse ``p <vertex_count>`` followed by ``e <u> <v>`` lines (0-based)."""
    n = None
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                if parts[0] == "p" and len(parts) == 2 and n is None:
                    n = int(parts[1])
                elif parts[0] == "e" and len(parts) == 3 and n is not None:
                    edges.append((int(parts[1]), int(parts[2])))
                else:
                    raise ValueError
            except ValueError:
                raise InvalidParameterError(f"{path}:{lineno}: malformed line {line!r}") from None
    if n is None or n < 1:
        raise InvalidParameterError(f"{path}: missing 'p <vertex_count>' header")
    adj = np.zeros((n, n), dtype=np.uint8)
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise InvalidParameterError(f"{path}: bad edge ({u}, {v})")
        adj[u, v] = adj[v, u] = 1
    return Graph(adj, name=str(path))


def write_edge_list(g: Graph, path: str | PathLike) -> None:
    rows, cols = np.nonzero(np.triu(g.adjacency))
    with open(path, "w") as fh:
        fh.write(f"p {g.vertex_count}\n")
        for u, v in zip(rows, cols):
            fh.write(f"e {u} {v}\n")
