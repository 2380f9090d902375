"""Adjacency spectra and closed-walk counts.

Closed forms are provided for cycles, hypercubes and Lee graphs; arbitrary
graphs go through a dense symmetric eigensolver. Eigenvalues that are integers
(every hypercube eigenvalue, and cycle eigenvalues 2cos(2*pi*l/q) whenever the
angle is a multiple of pi/3 or pi/2) are kept as Python ``int`` so downstream
bounds can be evaluated in exact rational arithmetic.
"""
from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameterError, NumericFailureError
from .graphs import Graph, LeeParams

DEFAULT_TOL = 1e-10
MAX_SWEEPS = 100


def grouping_tolerance(scale: float) -> float:
    """Merge threshold for cosine-sum eigenvalues of a graph with spectral radius ``scale``."""
    return 1e-8 * max(1.0, float(scale))


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues (strictly descending) with multiplicities."""

    values: tuple
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.multiplicities) or not self.values:
            raise InvalidParameterError("values and multiplicities must be non-empty and aligned")
        if any(m <= 0 for m in self.multiplicities):
            raise InvalidParameterError("multiplicities must be positive")
        if any(a <= b for a, b in zip(self.values, self.values[1:])):
            raise InvalidParameterError("values must be strictly descending")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple]) -> "Spectrum":
        pairs = sorted(pairs, key=lambda p: p[0], reverse=True)
        return cls(tuple(v for v, _ in pairs), tuple(int(m) for _, m in pairs))

    @classmethod
    def from_eigenvalues(cls, eigenvalues: Sequence[float], tol: float | None = None) -> "Spectrum":
        """Group a raw eigenvalue list into (value, multiplicity) pairs."""
        eig = np.sort(np.asarray(eigenvalues, dtype=float))[::-1]
        if tol is None:
            tol = grouping_tolerance(np.abs(eig).max())
        return cls.from_pairs(_group_sorted([(float(v), 1) for v in eig], tol))

    @property
    def d(self) -> int:
        """Number of distinct eigenvalues minus one."""
        return len(self.values) - 1

    @property
    def vertex_count(self) -> int:
        return sum(self.multiplicities)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Rational) for v in self.values)

    @property
    def largest(self):
        return self.values[0]

    @property
    def smallest(self):
        return self.values[-1]

    def pairs(self) -> list[tuple]:
        return list(zip(self.values, self.multiplicities))

    def power_sum(self, k: int):
        """Sum of m_i * theta_i^k, i.e. the trace of A^k."""
        return sum(m * v**k for v, m in self.pairs())

    def contains(self, value: float, tol: float = 1e-6) -> bool:
        return any(abs(v - value) <= tol for v in self.values)

    def eigenvalues(self) -> np.ndarray:
        """Full eigenvalue list (with repetition), descending."""
        return np.repeat(np.array(self.values, dtype=float), self.multiplicities)

    def to_json(self) -> str:
        return json.dumps(self.as_records())

    def as_records(self) -> list[dict]:
        return [{"value": float(f"{float(v):.12g}"), "multiplicity": m} for v, m in self.pairs()]

    @classmethod
    def from_json(cls, text: str) -> "Spectrum":
        return cls.from_pairs((r["value"], r["multiplicity"]) for r in json.loads(text))

    def __str__(self):
        return "{" + ", ".join(f"{float(v):.6g}:{m}" for v, m in self.pairs()) + "}"


def _group_sorted(pairs: list[tuple], tol: float) -> list[tuple]:
    """Merge consecutive descending values closer than ``tol`` (weighted mean)."""
    out = []
    for v, m in pairs:
        if out and abs(out[-1][2] - v) <= tol:
            total, mult, first = out[-1]
            out[-1] = (total + v * m, mult + m, first)
        else:
            out.append((v * m, m, v))
    return [(total / mult, mult) for total, mult, _ in out]


def _group(pairs: Iterable[tuple], tol: float) -> list[tuple]:
    exact = defaultdict(int)
    inexact = []
    for v, m in pairs:
        if isinstance(v, Rational):
            exact[v] += m
        else:
            inexact.append((v, m))
    if not inexact:
        return sorted(exact.items(), reverse=True)
    merged = sorted([(float(v), m) for v, m in exact.items()] + inexact, reverse=True)
    grouped = _group_sorted(merged, tol)
    # snap clusters that contain an exact value back onto it
    snapped = []
    for v, m in grouped:
        hit = [e for e in exact if abs(e - v) <= tol]
        snapped.append((hit[0], m) if hit else (v, m))
    return snapped


def hypercube_spectrum(n: int) -> Spectrum:
    """Eigenvalues n - 2l with multiplicity C(n, l), as exact integers."""
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    return Spectrum(tuple(n - 2 * l for l in range(n + 1)), tuple(math.comb(n, l) for l in range(n + 1)))


def _cycle_eigenvalue(l: int, q: int):
    frac = Fraction(l, q)
    if frac.denominator in (1, 2, 3, 4, 6):
        # rational cosine values (Niven): angle is a multiple of pi/3 or pi/2
        return int(round(2 * math.cos(2 * math.pi * frac)))
    return 2 * math.cos(2 * math.pi * l / q)


def cycle_spectrum(q: int) -> Spectrum:
    """Spectrum of C_q: 2cos(2*pi*l/q) for l = 1..q."""
    if q < 3:
        raise InvalidParameterError(f"cycle needs q >= 3, got {q}")
    pairs = [(_cycle_eigenvalue(l, q), 1) for l in range(1, q + 1)]
    return Spectrum.from_pairs(_group(pairs, grouping_tolerance(2)))


def sumset_spectrum(a: Spectrum, b: Spectrum, tol: float) -> Spectrum:
    """Spectrum of a Cartesian product: all sums, multiplicities multiplied."""
    pairs = [(u + v, mu * mv) for u, mu in a.pairs() for v, mv in b.pairs()]
    return Spectrum.from_pairs(_group(pairs, tol))


def lee_spectrum(params: LeeParams) -> Spectrum:
    """Spectrum of G(n, q) as the n-fold sumset of the cycle spectrum."""
    n, q = params.n, params.q
    if q == 2:
        return hypercube_spectrum(n)
    base = cycle_spectrum(q)
    tol = grouping_tolerance(2 * n)
    spec = base
    for _ in range(n - 1):
        spec = sumset_spectrum(spec, base, tol)
    return spec


def jacobi_eigenvalues(matrix: np.ndarray, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by the cyclic Jacobi rotation method.

    Sweeps over all off-diagonal pairs until the off-diagonal Frobenius norm
    drops below ``tol``; raises NumericFailureError after ``max_sweeps``.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(a.diagonal())))
        if off < tol:
            return np.sort(a.diagonal())[::-1]
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if abs(apr) < 1e-300:
                    continue
                theta = (a[r, r] - a[p, p]) / (2.0 * apr)
                if abs(theta) > 1e150:
                    t = 1.0 / (2.0 * theta)  # theta^2 would overflow
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_r = a[:, r].copy()
                a[:, p] = c * col_p - s * col_r
                a[:, r] = s * col_p + c * col_r
                row_p = a[p, :].copy()
                row_r = a[r, :].copy()
                a[p, :] = c * row_p - s * row_r
                a[r, :] = s * row_p + c * row_r
    raise NumericFailureError(f"Jacobi did not converge in {max_sweeps} sweeps")


def numeric_spectrum(g: Graph, tol: float = DEFAULT_TOL, method: str = "lapack") -> Spectrum:
    """Numerically computed spectrum, grouped into multiplicities.

    ``method="jacobi"`` uses the in-house cyclic Jacobi solver (fine up to a
    few hundred vertices); ``"lapack"`` defers to ``numpy.linalg.eigvalsh``.
    """
    adj = g.adjacency.astype(float)
    if method == "jacobi":
        eig = jacobi_eigenvalues(adj, tol=tol)
    elif method == "lapack":
        eig = np.linalg.eigvalsh(adj)
    else:
        raise InvalidParameterError(f"unknown eigensolver {method!r}")
    return Spectrum.from_eigenvalues(eig)


def hypercube_walk_count(n: int, i: int) -> int:
    """Closed walks of length i at any vertex of Q_n: 2^-n * sum_j C(n,j)(n-2j)^i."""
    if n < 1 or i < 0:
        raise InvalidParameterError("need n >= 1 and i >= 0")
    total = sum(math.comb(n, j) * (n - 2 * j) ** i for j in range(n + 1))
    value = Fraction(total, 2**n)
    assert value.denominator == 1
    return int(value)


@dataclass(frozen=True, eq=False)
class WalkDiagonal:
    """Row u, column i holds (A^i)_{uu} for i = 0..t."""

    per_vertex: np.ndarray

    @property
    def t(self) -> int:
        return self.per_vertex.shape[1] - 1

    @property
    def vertex_count(self) -> int:
        return self.per_vertex.shape[0]

    def is_constant(self, upto: int | None = None) -> bool:
        cols = self.per_vertex if upto is None else self.per_vertex[:, : upto + 1]
        return bool(np.all(cols == cols[0]))

    def distinct_rows(self) -> np.ndarray:
        return np.unique(self.per_vertex, axis=0)

    def column_max(self, i: int) -> int:
        return int(self.per_vertex[:, i].max())


def walk_diagonal(g: Graph, t: int) -> WalkDiagonal:
    """Diagonals of A^0..A^t, computed in floating point and rounded (counts are integers)."""
    if t < 1:
        raise InvalidParameterError(f"t must be >= 1, got {t}")
    a = g.adjacency.astype(float)
    n = g.vertex_count
    out = np.zeros((n, t + 1), dtype=np.int64)
    out[:, 0] = 1
    powers = [np.eye(n), a]
    # diag(A^i) = rowsum(A^h * A^(i-h)) with h = ceil(i/2); only powers up to ceil(t/2) needed
    for _ in range(2, (t + 1) // 2 + 1):
        powers.append(powers[-1] @ a)
    for i in range(1, t + 1):
        h = (i + 1) // 2
        out[:, i] = np.rint((powers[h] * powers[i - h]).sum(axis=1)).astype(np.int64)
    return WalkDiagonal(out)


def walk_regular_diagonal(spectrum: Spectrum, t: int) -> WalkDiagonal:
    """Walk diagonal of a walk-regular graph from its spectrum alone.

    Every vertex sees trace(A^i) / |V| closed walks; values are rounded to the
    nearest integer since they count walks.
    """
    n = spectrum.vertex_count
    row = []
    for i in range(t + 1):
        trace = spectrum.power_sum(i)
        row.append(int(round(float(trace) / n)))
    return WalkDiagonal(np.broadcast_to(np.array(row, dtype=np.int64), (n, t + 1)))


def is_partially_walk_regular(g: Graph, t: int) -> bool:
    return walk_diagonal(g, t).is_constant()
