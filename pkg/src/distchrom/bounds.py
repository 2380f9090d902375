"""Ratio-type eigenvalue lower bounds on the distance-t chromatic number.

Two evaluators work for any polynomial: the general bound

    chi_t >= (p(l1) - lambda(p)) / (W(p) - lambda(p))

and its regular-graph strengthening

    chi_t >= n / floor(n (W(p) - lambda(p)) / (p(l1) - lambda(p))),

where W(p) is the largest diagonal entry of p(A) and lambda(p) the smallest
value of p on the non-principal eigenvalues. On top of those sit the closed
forms for t = 2, 3, the hypercube t = 4, 5 family and the Johnson-type
bounds of Ngo, Du and Graham.

Arithmetic stays exact (``int``/``Fraction``) whenever the spectrum is; float
spectra use a 1e-9 slack on eigenvalue thresholds, floors and ceilings.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Optional

from .errors import BoundInapplicableError, InvalidParameterError, NotRegularError
from .graphs import LeeParams
from .polynomial import Polynomial
from .spectra import Spectrum, WalkDiagonal, hypercube_spectrum, hypercube_walk_count

EPS = 1e-9


class Method(str, enum.Enum):
    CLOSED_T2_GENERAL = "closed_t2_general"
    CLOSED_T2_REGULAR = "closed_t2_regular"
    CLOSED_T3_REGULAR = "closed_t3_regular"
    NGO_LOWER = "ngo_lower"
    NGO_UPPER = "ngo_upper"
    HYPERCUBE_T45 = "hypercube_t45"
    LP_GENERAL = "lp_general"
    LP_MINOR = "lp_minor"
    LEE_THEOREM = "lee_theorem"


def _is_exact(*xs) -> bool:
    return all(isinstance(x, Rational) for x in xs)


def _div(a, b):
    if _is_exact(a, b):
        return Fraction(a) / Fraction(b)
    return float(a) / float(b)


def exact_floor(x) -> int:
    """Floor with float dust absorbed upward (10.9999999999 -> 11)."""
    if isinstance(x, Rational):
        return math.floor(x)
    return math.floor(x + EPS)


def exact_ceil(x) -> int:
    """Ceiling with float dust absorbed downward (7.0000000001 -> 7)."""
    if isinstance(x, Rational):
        return math.ceil(x)
    return math.ceil(x - EPS)


def _index_at_or_below(values, threshold) -> Optional[int]:
    """Index of the largest value <= threshold (1e-9 slack), or None."""
    for i, v in enumerate(values):
        if v <= threshold + EPS:
            return i
    return None


@dataclass(frozen=True)
class RatioCertificate:
    """A polynomial together with every quantity the Ratio-type bound needs."""

    polynomial: Polynomial
    p_lambda1: object
    W_p: object
    lambda_p: object
    bound_plain: object
    bound_floor: Optional[object] = None
    bound_ceiled: int = 0
    degenerate: bool = False
    note: str = ""

    @property
    def value(self) -> int:
        return self.bound_ceiled

    def as_dict(self) -> dict:
        return {
            "polynomial_coefficients": [float(c) for c in self.polynomial.coefficients],
            "W_p": float(self.W_p),
            "lambda_p": float(self.lambda_p),
            "plain": float(self.bound_plain),
            "floor_enhanced": None if self.bound_floor is None else float(self.bound_floor),
        }


def lambda_of(spectrum: Spectrum, p: Polynomial):
    """min p(theta) over non-principal eigenvalues (theta_0 counts again if repeated)."""
    values = list(spectrum.values[1:])
    if spectrum.multiplicities[0] > 1:
        values.append(spectrum.values[0])
    if not values:
        raise BoundInapplicableError("graph has a single eigenvalue")
    return min(p(v) for v in values)


def w_of(walk_diag: WalkDiagonal, p: Polynomial):
    """max over vertices of (p(A))_uu, read off the walk diagonal."""
    if p.degree > walk_diag.t:
        raise InvalidParameterError(f"polynomial degree {p.degree} exceeds walk depth {walk_diag.t}")
    best = None
    for row in walk_diag.distinct_rows():
        val = sum(c * int(row[i]) for i, c in enumerate(p.coefficients))
        if best is None or val > best:
            best = val
    return best


def _certificate(p, p_l1, W, lam, vertex_count=None, note="") -> RatioCertificate:
    if not p_l1 - lam > (0 if _is_exact(p_l1, lam) else EPS):
        raise BoundInapplicableError("need p(lambda_1) > lambda(p)")
    plain = _div(p_l1 - lam, W - lam)
    bound_floor = None
    degenerate = False
    ceiled = exact_ceil(plain)
    if vertex_count is not None:
        inner = exact_floor(_div(vertex_count * (W - lam), p_l1 - lam))
        if inner <= 0:
            # alpha_t >= 1 always, so the fractional bound is vacuous: report |V|
            bound_floor = vertex_count
            degenerate = True
        else:
            bound_floor = Fraction(vertex_count, inner)
        ceiled = max(ceiled, exact_ceil(bound_floor))
    return RatioCertificate(p, p_l1, W, lam, plain, bound_floor, ceiled, degenerate, note)


def eval_ratio_general(spectrum: Spectrum, walk_diag: WalkDiagonal, p: Polynomial) -> RatioCertificate:
    """General Ratio-type bound for an arbitrary polynomial of degree <= t."""
    return _certificate(p, p(spectrum.largest), w_of(walk_diag, p), lambda_of(spectrum, p))


def _check_regular(spectrum: Spectrum, walk_diag: WalkDiagonal) -> None:
    if walk_diag.t >= 2:
        regular = walk_diag.is_constant(upto=2)
    else:
        regular = abs(spectrum.largest - _div(spectrum.power_sum(2), spectrum.vertex_count)) <= EPS
    if not regular:
        raise NotRegularError("walk diagonal is not constant: graph is not regular")


def eval_ratio_regular(
    spectrum: Spectrum, walk_diag: WalkDiagonal, p: Polynomial, vertex_count: int
) -> RatioCertificate:
    """Ratio-type bound with the floor strengthening available for regular graphs."""
    _check_regular(spectrum, walk_diag)
    return _certificate(
        p, p(spectrum.largest), w_of(walk_diag, p), lambda_of(spectrum, p), vertex_count
    )


def _quadratic_pick(spectrum: Spectrum, threshold) -> tuple:
    if spectrum.d < 2:
        raise BoundInapplicableError("need at least 3 distinct eigenvalues")
    i = _index_at_or_below(spectrum.values, threshold)
    if i is None or i == 0:
        raise BoundInapplicableError("no eigenvalue below the selection threshold")
    return spectrum.values[i], spectrum.values[i - 1]


def chi2_closed_general(spectrum: Spectrum, max_degree: int) -> RatioCertificate:
    """Best general Ratio-type bound for t = 2.

    Takes theta_i as the largest eigenvalue <= -max_degree/theta_0 and
    p(x) = x^2 - (theta_i + theta_{i-1}) x, giving
    (theta_0 - theta_i)(theta_0 - theta_{i-1}) / (max_degree + theta_i theta_{i-1}).
    """
    theta0 = spectrum.largest
    threshold = -_div(max_degree, theta0)
    ti, tprev = _quadratic_pick(spectrum, threshold)
    p = Polynomial([0, -(ti + tprev), 1])
    return _certificate(p, p(theta0), max_degree, lambda_of(spectrum, p))


def chi2_closed_regular(spectrum: Spectrum, vertex_count: int) -> RatioCertificate:
    """Optimal t = 2 bound for a regular graph (theta_i = largest eigenvalue <= -1)."""
    theta0 = spectrum.largest
    ti, tprev = _quadratic_pick(spectrum, -1)
    p = Polynomial([0, -(ti + tprev), 1])
    return _certificate(p, p(theta0), theta0, lambda_of(spectrum, p), vertex_count)


def chi3_closed_regular(spectrum: Spectrum, delta3, vertex_count: int) -> RatioCertificate:
    """Optimal t = 3 bound for a regular graph.

    ``delta3`` is the largest diagonal entry of A^3. theta_s is the largest
    eigenvalue <= -(theta_0^2 + theta_0 theta_d - delta3) / (theta_0 (theta_d + 1))
    and the polynomial is (x - theta_s)(x - theta_{s-1})(x - theta_d).
    """
    if spectrum.d < 3:
        raise BoundInapplicableError("need at least 4 distinct eigenvalues")
    theta0, thetad = spectrum.largest, spectrum.smallest
    if abs(thetad + 1) <= EPS:
        raise BoundInapplicableError("smallest eigenvalue is -1: selection threshold divides by zero")
    threshold = -_div(theta0**2 + theta0 * thetad - delta3, theta0 * (thetad + 1))
    s = _index_at_or_below(spectrum.values, threshold)
    if s is None or s == 0:
        raise BoundInapplicableError("no eigenvalue below the selection threshold")
    ts, tprev = spectrum.values[s], spectrum.values[s - 1]
    p = Polynomial.from_roots([ts, tprev, thetad])
    e1 = ts + tprev + thetad
    e3 = ts * tprev * thetad
    W = delta3 - theta0 * e1 - e3  # (A)_uu = 0, (A^2)_uu = theta_0
    return _certificate(p, p(theta0), W, lambda_of(spectrum, p), vertex_count)


def _cumulative_binomial(n: int, k: int) -> int:
    return sum(math.comb(n, i) for i in range(k + 1))


def _johnson_expression(n: int, s: int) -> Fraction:
    frac_part = Fraction(n - s, s + 1) - (n - s) // (s + 1)
    return _cumulative_binomial(n, s) + Fraction(math.comb(n, s), n // (s + 1)) * frac_part


class NgoBounds(NamedTuple):
    lower: int
    upper: int
    lower_plain: int
    expression: Fraction


def ngo_bounds(n: int, t: int) -> NgoBounds:
    """Johnson-type lower and dyadic upper bounds on chi_t(Q_n).

    ``lower_plain`` is the ceiling of the displayed expression ``E``;
    ``lower`` additionally uses that alpha_t is an integer, i.e.
    2^n / floor(2^n / E), which is the value the published tables list.
    """
    if not 1 <= t <= n:
        raise InvalidParameterError(f"need 1 <= t <= n, got n={n}, t={t}")
    s = t // 2
    if t % 2 == 0:
        expr = _johnson_expression(n, s)
        upper = 2 ** (_cumulative_binomial(n - 1, t - 1).bit_length() - 1 + 1)
    else:
        expr = 2 * _johnson_expression(n - 1, s)
        upper = 2 ** (_cumulative_binomial(n - 2, t - 2).bit_length() - 1 + 2)
    size = 2**n
    lower = math.ceil(Fraction(size, size // expr)) if expr <= size else size
    return NgoBounds(lower, upper, math.ceil(expr), expr)


def _t45_m(n: int, t: int) -> int:
    k = n + 3 - t
    return math.floor((math.sqrt(k) + k) / 2 - math.ceil((n + 4 - t) / 2))


def t45_roots(n: int, t: int) -> list[int]:
    m = _t45_m(n, t)
    if t == 4:
        if n % 2 == 0:
            return [-(2 * m + 4), -(2 * m + 2), 2 * m, 2 * m + 2]
        return [-(2 * m + 5), -(2 * m + 3), 2 * m + 1, 2 * m + 3]
    if n % 2 == 0:
        return [-n, -(2 * m + 4), -(2 * m + 2), 2 * m + 2, 2 * m + 4]
    return [-n, -(2 * m + 3), -(2 * m + 1), 2 * m + 1, 2 * m + 3]


def hypercube_t45_bound(n: int, t: int) -> RatioCertificate:
    """Closed-form Ratio-type bound on chi_4(Q_n) and chi_5(Q_n).

    The polynomial has its roots in adjacent eigenvalue pairs, so it is
    non-negative on the spectrum and lambda(p) = 0. ``bound_plain`` is
    p(n) / sum_i a_i b_i; ``bound_ceiled`` comes from the floor-enhanced form.
    """
    if t not in (4, 5):
        raise InvalidParameterError(f"t must be 4 or 5, got {t}")
    if n < t:
        raise InvalidParameterError(f"need n >= t, got n={n}, t={t}")
    p = Polynomial.from_roots(t45_roots(n, t))
    walks = [hypercube_walk_count(n, i) for i in range(t + 1)]
    W = sum(a * b for a, b in zip(walks, p.coefficients))
    lam = lambda_of(hypercube_spectrum(n), p)
    return _certificate(p, p(n), W, lam, 2**n, note=f"m={_t45_m(n, t)}")


def hypercube_exact_range(n: int, t: int) -> Optional[int]:
    """chi_t(Q_n) = 2^(n-1) whenever 2(n-1)/3 <= t <= n-1, else None."""
    if n < 2:
        raise InvalidParameterError(f"need n >= 2, got {n}")
    if 2 * (n - 1) <= 3 * t and t <= n - 1:
        return 2 ** (n - 1)
    return None


def lee_chi2_theorem_bound(params: LeeParams) -> int:
    """Closed-form chi_2 lower bound on G(n, q) for q >= 4.

    2n+3 for G(1,5); 2n+1 if -1 is an eigenvalue of G(n, q); 2n+2 otherwise.
    """
    from .leecodes import minus_one_is_eigenvalue

    n, q = params.n, params.q
    if q < 4:
        raise BoundInapplicableError(f"theorem needs q >= 4, got q={q}")
    if (n, q) == (1, 5):
        return 2 * n + 3
    return 2 * n + 1 if minus_one_is_eigenvalue(n, q) else 2 * n + 2


@dataclass(frozen=True)
class BoundReport:
    graph_id: str
    t: int
    method: Method
    value: int
    certificate: Optional[RatioCertificate] = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.value < 1:
            raise InvalidParameterError("bound value must be >= 1")

    def as_dict(self) -> dict:
        out = {"graph": self.graph_id, "t": self.t, "method": Method(self.method).value, "value": self.value}
        cert = self.certificate.as_dict() if self.certificate else {
            "polynomial_coefficients": None, "W_p": None, "lambda_p": None, "plain": None, "floor_enhanced": None,
        }
        out.update(cert)
        if self.certificate is not None and self.certificate.degenerate:
            out["degenerate"] = True
        out.update(self.extra)
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)
