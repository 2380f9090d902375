"""Linear programs that optimise the Ratio-type bound.

``lp_general_ratio`` searches, for every vertex u and non-principal eigenvalue
theta_l, for the degree-t polynomial maximising p(theta_0) - p(theta_l) under
the normalisation W(p) - lambda(p) = 1, with W attained at u and lambda at
theta_l. ``minor_polynomial`` computes a t-minor polynomial of a
t-partially walk-regular graph: point values x_i = p(theta_i) >= 0 with
x_0 = 1 and degree <= t, minimising the trace of p(A). ``minor_lp`` states
that program with vanishing divided differences; it is solved in the
equivalent coefficient form from ``coefficient_lp``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from os import PathLike
from typing import Optional

from .bounds import EPS, RatioCertificate, eval_ratio_general, exact_ceil
from .errors import BoundInapplicableError, DegenerateCaseError
from .graphs import Graph
from .polynomial import Polynomial
from .simplex import LPProblem, Status, solve_lp, write_lp
from .spectra import Spectrum, WalkDiagonal, numeric_spectrum, walk_diagonal

STRICT_EPS = 1e-7
LP_FLOOR_SLACK = 1e-7


def general_ratio_lp(
    spectrum: Spectrum, walk_diag: WalkDiagonal, u: int, ell: int, t: int, eps=STRICT_EPS
) -> LPProblem:
    """Build the LP for vertex ``u`` and eigenvalue index ``ell`` (1 <= ell <= d)."""
    theta = spectrum.values
    D = walk_diag.per_vertex
    d = spectrum.d
    pw = lambda x: [x**i for i in range(t + 1)]  # noqa: E731
    t0, tl = pw(theta[0]), pw(theta[ell])
    lp = LPProblem(
        objective=[a - b for a, b in zip(t0, tl)],
        sense="max",
        bounds=[(None, None)] * (t + 1),
        names=[f"a{i}" for i in range(t + 1)],
    )
    du = [int(x) for x in D[u, : t + 1]]
    seen = {tuple(du)}
    for v in range(walk_diag.vertex_count):
        dv = tuple(int(x) for x in D[v, : t + 1])
        if dv in seen:
            continue  # identical rows give identical (or vacuous) constraints
        seen.add(dv)
        lp.add([a - b for a, b in zip(dv, du)], "<=", 0)
    lp.add([a - b for a, b in zip(du, tl)], "=", 1)
    for j in range(1, d + 1):
        tj = pw(theta[j])
        lp.add([a - b for a, b in zip(t0, tj)], ">=", eps)
        if j != ell:
            lp.add([a - b for a, b in zip(tj, tl)], ">=", 0)
    return lp


@dataclass(frozen=True)
class GeneralRatioResult:
    certificate: RatioCertificate
    vertex: int
    ell: int
    lp_objective: object
    problem: LPProblem


def lp_general_ratio(
    g: Graph, t: int, spectrum: Optional[Spectrum] = None, exact: Optional[bool] = None
) -> GeneralRatioResult:
    """Best general Ratio-type bound over polynomials of degree <= t.

    Solves one LP per (vertex, eigenvalue) pair. Vertices sharing the same
    closed-walk profile give the same LP, so for a t-partially walk-regular
    graph only d programs are solved. Ties keep the lowest (u, ell).
    """
    if t < 1:
        raise BoundInapplicableError("t must be >= 1")
    spectrum = spectrum or numeric_spectrum(g)
    if spectrum.d < 2:
        raise BoundInapplicableError("need at least 3 distinct eigenvalues")
    if exact is None:
        exact = spectrum.exact
    eps = Fraction(1, 10**7) if exact else STRICT_EPS
    wd = walk_diagonal(g, max(t, 2))
    D = wd.per_vertex
    representatives = {}
    for u in range(g.vertex_count):
        representatives.setdefault(tuple(D[u, : t + 1]), u)
    best = None
    for u in sorted(representatives.values()):
        for ell in range(1, spectrum.d + 1):
            lp = general_ratio_lp(spectrum, wd, u, ell, t, eps)
            sol = solve_lp(lp, exact=exact)
            if sol.status != Status.OPTIMAL:
                continue
            p = Polynomial(sol.values)
            try:
                cert = eval_ratio_general(spectrum, wd, p)
            except BoundInapplicableError:
                continue
            if best is None or cert.bound_plain > best.certificate.bound_plain + (0 if exact else EPS):
                best = GeneralRatioResult(cert, u, ell, sol.objective_value, lp)
    if best is None:
        raise BoundInapplicableError("every LP subproblem was infeasible")
    return best


def divided_difference_coefficients(theta, m: int) -> list:
    """Coefficients c_j with f[theta_0..theta_m] = sum_j c_j x_j, from the recursion.

    f[theta_i..theta_j] = (f[theta_{i+1}..theta_j] - f[theta_i..theta_{j-1}]) / (theta_j - theta_i)
    with f[theta_i] = x_i, expanded as vectors over x_0..x_m.
    """
    exact = all(isinstance(v, (int, Fraction)) for v in theta[: m + 1])
    zero = Fraction(0) if exact else 0.0
    level = []
    for i in range(m + 1):
        vec = [zero] * (m + 1)
        vec[i] = zero + 1
        level.append(vec)
    for span in range(1, m + 1):
        nxt = []
        for i in range(m + 1 - span):
            j = i + span
            denom = (Fraction(theta[j]) - Fraction(theta[i])) if exact else (theta[j] - theta[i])
            nxt.append([(b - a) / denom for a, b in zip(level[i], level[i + 1])])
        level = nxt
    return level[0]


def minor_lp(spectrum: Spectrum, t: int) -> LPProblem:
    """LP over x_1..x_d: minimise sum m_i x_i with f[theta_0..theta_m] = 0 for m = t+1..d."""
    d = spectrum.d
    if t >= d:
        raise DegenerateCaseError(
            f"t={t} >= d={d}: G^t is complete for t >= diameter, no minor polynomial LP"
        )
    lp = LPProblem(
        objective=list(spectrum.multiplicities[1:]),
        sense="min",
        names=[f"x{i}" for i in range(1, d + 1)],
    )
    for m in range(t + 1, d + 1):
        coeffs = divided_difference_coefficients(spectrum.values, m)
        row = list(coeffs[1:]) + [0] * (d - m)
        lp.add(row, "=", -coeffs[0])
    return lp


@dataclass(frozen=True)
class MinorPolynomial:
    point_values: tuple
    trace_value: object
    polynomial: Polynomial
    spectrum: Spectrum
    t: int

    @property
    def problem(self) -> LPProblem:
        """The same program in divided-difference form, over the point values."""
        return minor_lp(self.spectrum, self.t)


def coefficient_lp(spectrum: Spectrum, t: int) -> LPProblem:
    """The minor-polynomial LP over the coefficients c_0..c_t of p instead of its point values.

    x_i = p(theta_i) ranges over exactly the vectors the divided-difference
    constraints allow, so both programs share their optimum. This one has
    t+1 free variables and d+1 rows, which keeps exact arithmetic cheap.
    """
    theta, mult = spectrum.values, spectrum.multiplicities
    rows = [[v**k for k in range(t + 1)] for v in theta]
    objective = [sum(mult[i] * rows[i][k] for i in range(1, len(theta))) for k in range(t + 1)]
    lp = LPProblem(objective, "min", bounds=[(None, None)] * (t + 1), names=[f"c{k}" for k in range(t + 1)])
    lp.add(rows[0], "=", 1)
    for row in rows[1:]:
        lp.add(row, ">=", 0)
    return lp


def rationalize(spectrum: Spectrum) -> Spectrum:
    """Same spectrum with every float eigenvalue replaced by its exact binary value."""
    if spectrum.exact:
        return spectrum
    return Spectrum(tuple(Fraction(v) for v in spectrum.values), spectrum.multiplicities)


def minor_polynomial(
    spectrum: Spectrum, t: int, exact: bool = True, budget: Optional[float] = None
) -> MinorPolynomial:
    """Solve the minor-polynomial LP and return point values, trace and the polynomial.

    By default float eigenvalues are taken at their exact binary value and
    the program is solved over the rationals; in double precision the
    high-order divided differences lose most of their digits.
    """
    if t >= spectrum.d:
        raise DegenerateCaseError(
            f"t={t} >= d={spectrum.d}: G^t is complete for t >= diameter, no minor polynomial LP"
        )
    if exact:
        spectrum = rationalize(spectrum)
    sol = solve_lp(coefficient_lp(spectrum, t), exact=exact, budget=budget)
    if sol.status != Status.OPTIMAL:
        raise BoundInapplicableError(f"minor polynomial LP is {sol.status.value}")
    poly = Polynomial(sol.values)
    x = tuple(poly(v) for v in spectrum.values)
    trace = sum(m * v for m, v in zip(spectrum.multiplicities, x))
    return MinorPolynomial(x, trace, poly, spectrum, t)


def _lp_floor(x, exact_input: bool) -> int:
    # a Fraction trace from rationalized float eigenvalues still carries their rounding
    if exact_input:
        return math.floor(x)
    return math.floor(x + LP_FLOOR_SLACK)


def lp_minor_certificate(
    spectrum: Spectrum, t: int, vertex_count: Optional[int] = None, budget: Optional[float] = None
) -> RatioCertificate:
    """Ratio-type certificate built from a t-minor polynomial (p(theta_0) = 1, lambda = 0)."""
    n = vertex_count or spectrum.vertex_count
    mp = minor_polynomial(spectrum, t, budget=budget)
    trace = mp.trace_value
    inner = _lp_floor(trace, spectrum.exact)
    plain = Fraction(n) / trace if isinstance(trace, Fraction) else n / trace
    W = trace / n
    if inner <= 0:
        return RatioCertificate(mp.polynomial, 1, W, 0, plain, n, n, True, "floor(trace) = 0")
    bound_floor = Fraction(n, inner)
    return RatioCertificate(mp.polynomial, 1, W, 0, plain, bound_floor, math.ceil(bound_floor), False)


def lp_minor_bound(
    spectrum: Spectrum, t: int, vertex_count: Optional[int] = None, budget: Optional[float] = None
) -> int:
    """ceil(|V| / floor(trace p_t(A))) for the t-minor polynomial p_t."""
    return lp_minor_certificate(spectrum, t, vertex_count, budget).bound_ceiled


def dump_lp(problem: LPProblem, path: str | PathLike) -> None:
    write_lp(problem, path)
