"""Number theory and coding theory for Lee codes.

Covers the -1 eigenvalue test for G(n, q) (a numerical-monoid membership of
2n+1), the existence criterion for perfect Lee codes of minimum distance 3,
and brute-force code validation on A_q^n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from os import PathLike
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidParameterError
from .graphs import Graph, all_pairs_distances, lee_distance_matrix, lee_space

MAX_SPACE = 10**6


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs, primes increasing."""

    factors: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    @property
    def radical(self) -> int:
        return math.prod(self.primes)


def factorize(m: int) -> Factorization:
    """Trial division; intended for m up to about 10^6."""
    if m < 2:
        raise InvalidParameterError(f"factorize needs m >= 2, got {m}")
    factors = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(tuple(factors))


def radical(m: int) -> int:
    return 1 if m == 1 else factorize(m).radical


def monoid_contains(target: int, generators: Iterable[int]) -> bool:
    """Is ``target`` a non-negative integer combination of ``generators``?"""
    gens = sorted(set(g for g in generators if g > 0))
    if target < 0:
        return False
    reach = np.zeros(target + 1, dtype=bool)
    reach[0] = True
    for g in gens:
        for v in range(g, target + 1):
            if reach[v - g]:
                reach[v] = True
    return bool(reach[target])


def w_prime_generators(q: int) -> list[int]:
    """Generators of the monoid that 2n+1 must lie in for -1 to be an eigenvalue of G(n, q).

    These are the prime factors of q. For even q the 2 stays in: with an odd
    prime p | q the cycle eigenvalues include +-2 and a +1 built from (p-1)/2
    terms, so e.g. G(2, 6) has 1 + (-2) = -1. Using 4 in place of 2 would
    miss such n.
    """
    return factorize(q).primes


def w_prime_membership(n: int, q: int) -> bool:
    """True iff -1 is an eigenvalue of G(n, q), i.e. 2n+1 is in <p_1..p_r>."""
    if n < 1 or q < 2:
        raise InvalidParameterError("need n >= 1 and q >= 2")
    return monoid_contains(2 * n + 1, w_prime_generators(q))


def minus_one_is_eigenvalue(n: int, q: int) -> bool:
    return w_prime_membership(n, q)


def minus_one_threshold(q: int, factorization: Factorization | None = None) -> int:
    """Integer T such that -1 is an eigenvalue of G(n, q) for every n > T.

    Only defined when q has at least two distinct prime factors.
    """
    fac = factorization or factorize(q)
    if len(fac.factors) < 2:
        raise InvalidParameterError(f"q={q} is a prime power; no threshold exists")
    p1, p2 = fac.primes[0], fac.primes[1]
    if q % 2 == 0:
        return (-1 + (2 * p1 - 1) * (p2 - 1)) // 2
    return (-1 + (p1 - 1) * (p2 - 1)) // 2


@dataclass(frozen=True)
class PerfectCodeVerdict:
    exists: bool
    radical_divides_q: bool
    divides_q_power: bool
    radical_of_2n_plus_1: int

    def __bool__(self):
        return self.exists

    def as_dict(self) -> dict:
        return {
            "exists": self.exists,
            "radical_of_2n_plus_1": self.radical_of_2n_plus_1,
            "radical_divides_q": self.radical_divides_q,
            "2n_plus_1_divides_q_pow_n": self.divides_q_power,
        }


def perfect_code_exists(n: int, q: int) -> PerfectCodeVerdict:
    """Existence of a perfect (n, M, 3)_q Lee code: rad(2n+1) divides q."""
    if n < 1 or q < 2:
        raise InvalidParameterError("need n >= 1 and q >= 2")
    rad = radical(2 * n + 1)
    by_radical = q % rad == 0
    by_power = pow(q, n, 2 * n + 1) == 0
    if by_radical != by_power:
        raise AssertionError(f"criteria disagree for n={n}, q={q}")
    return PerfectCodeVerdict(by_radical, by_radical, by_power, rad)


@dataclass(frozen=True)
class LeeCode:
    n: int
    q: int
    codewords: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, q: int, codewords: Iterable[Sequence[int]]):
        words = tuple(tuple(int(x) for x in w) for w in codewords)
        if len(set(words)) != len(words):
            raise InvalidParameterError("codewords must be pairwise distinct")
        for w in words:
            if len(w) != n or any(not 0 <= x < q for x in w):
                raise InvalidParameterError(f"codeword {w} not in A_{q}^{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "codewords", words)

    def __len__(self):
        return len(self.codewords)

    def array(self) -> np.ndarray:
        return np.array(self.codewords, dtype=np.int64).reshape(-1, self.n)


def code_min_distance(code: LeeCode) -> int:
    if len(code) < 2:
        raise InvalidParameterError("minimum distance needs at least two codewords")
    d = lee_distance_matrix(code.array(), code.array(), code.q)
    np.fill_diagonal(d, np.iinfo(np.int64).max)
    return int(d.min())


def _nearest_two(code: LeeCode, chunk: int = 4096) -> tuple[np.ndarray, np.ndarray]:
    """Smallest and second-smallest distance to the code, for every point of A_q^n."""
    space = lee_space(code.n, code.q)
    words = code.array()
    first = np.empty(len(space), dtype=np.int64)
    second = np.full(len(space), np.iinfo(np.int64).max, dtype=np.int64)
    for start in range(0, len(space), chunk):
        d = lee_distance_matrix(space[start : start + chunk], words, code.q)
        if d.shape[1] >= 2:
            part = np.partition(d, 1, axis=1)
            first[start : start + chunk] = part[:, 0]
            second[start : start + chunk] = part[:, 1]
        else:
            first[start : start + chunk] = d[:, 0]
    return first, second


def packing_and_covering_radius(code: LeeCode) -> tuple[float, int]:
    """(packing radius, covering radius) by enumerating A_q^n.

    A single codeword has unbounded packing radius (reported as ``inf``).
    """
    if len(code) < 1:
        raise InvalidParameterError("empty code")
    if code.q**code.n > MAX_SPACE:
        raise InvalidParameterError(f"q^n = {code.q ** code.n} exceeds the enumeration cap {MAX_SPACE}")
    first, second = _nearest_two(code)
    covering = int(first.max())
    # balls of radius r are disjoint iff no point is within r of two codewords
    packing = math.inf if len(code) < 2 else int(second.min()) - 1
    return packing, covering


def is_perfect_code(code: LeeCode) -> bool:
    packing, covering = packing_and_covering_radius(code)
    return packing == covering


def independent_set_to_code(g: Graph, vertices: Iterable[int], t: int) -> LeeCode:
    """Turn a distance-t independent set of a labeled Lee graph into a Lee code."""
    if g.labels is None:
        raise InvalidParameterError("graph must carry Lee labels")
    verts = sorted(set(int(v) for v in vertices))
    if len(verts) < 2:
        raise InvalidParameterError("a Lee code needs at least two codewords")
    dist = all_pairs_distances(g)
    sub = dist[np.ix_(verts, verts)]
    np.fill_diagonal(sub, np.iinfo(np.int64).max)
    if sub.min() <= t:
        raise InvalidParameterError(f"vertex set is not distance-{t} independent")
    labels = [g.labels[v] for v in verts]
    q = max(max(lab) for lab in g.labels) + 1
    return LeeCode(len(labels[0]), q, labels)


def read_code(path: str | PathLike) -> LeeCode:
    """First line ``n q``, then one codeword per line."""
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise InvalidParameterError(f"{path}: header must be 'n q'")
    try:
        n, q = int(lines[0][0]), int(lines[0][1])
        words = [[int(x) for x in row] for row in lines[1:]]
    except ValueError as exc:
        raise InvalidParameterError(f"{path}: non-integer entry") from exc
    return LeeCode(n, q, words)


def write_code(code: LeeCode, path: str | PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(f"{code.n} {code.q}\n")
        for w in code.codewords:
            fh.write(" ".join(map(str, w)) + "\n")
