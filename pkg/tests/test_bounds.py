import json
import math
from fractions import Fraction

import pytest

from conftest import path_graph
from distchrom import bounds as B
from distchrom.errors import BoundInapplicableError, InvalidParameterError, NotRegularError
from distchrom.graphs import LeeParams, build_cycle
from distchrom.polynomial import Polynomial
from distchrom.spectra import (
    Spectrum,
    cycle_spectrum,
    hypercube_spectrum,
    hypercube_walk_count,
    lee_spectrum,
    numeric_spectrum,
    walk_diagonal,
    walk_regular_diagonal,
)


def qwalks(n: int, t: int):
    return walk_regular_diagonal(hypercube_spectrum(n), t)


def lee_spec(n, q):
    return lee_spectrum(LeeParams(n, q))


class TestEvaluators:
    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_quadratic_on_even_hypercube(self, n):
        s = hypercube_spectrum(n)
        # largest eigenvalue <= -n/n = -1 is -2, its predecessor 0
        p = Polynomial([0, 2, 1])
        cert = B.eval_ratio_general(s, qwalks(n, 2), p)
        assert cert.bound_plain == n + 2

    def test_linear_polynomial(self):
        s = cycle_spectrum(5)
        cert = B.eval_ratio_general(s, walk_diagonal(build_cycle(5), 1), Polynomial([0, 1]))
        assert cert.W_p == 0
        theta0, thetad = float(s.largest), float(s.smallest)
        assert float(cert.bound_plain) == pytest.approx((theta0 - thetad) / -thetad)

    def test_q7_quartic(self):
        p = Polynomial.from_roots([-5, -3, 1, 3])
        general = B.eval_ratio_general(hypercube_spectrum(7), qwalks(7, 4), p)
        assert general.bound_plain == 36
        assert general.W_p == sum(c * hypercube_walk_count(7, i) for i, c in enumerate(p.coefficients))
        regular = B.eval_ratio_regular(hypercube_spectrum(7), qwalks(7, 4), p, 128)
        assert regular.bound_ceiled == 43

    def test_regular_examples(self):
        assert B.chi2_closed_regular(hypercube_spectrum(4), 16).bound_ceiled == 8
        assert B.chi3_closed_regular(hypercube_spectrum(5), 0, 32).bound_ceiled == 16

    def test_regular_rejects_irregular(self):
        g = path_graph(4)
        with pytest.raises(NotRegularError):
            B.eval_ratio_regular(numeric_spectrum(g), walk_diagonal(g, 2), Polynomial([0, 0, 1]), 4)

    def test_precondition(self):
        with pytest.raises(BoundInapplicableError):
            B.eval_ratio_general(hypercube_spectrum(3), qwalks(3, 2), Polynomial([0, -1]))

    def test_degree_exceeds_walk_depth(self):
        with pytest.raises(InvalidParameterError):
            B.eval_ratio_general(hypercube_spectrum(3), qwalks(3, 2), Polynomial([0, 0, 0, 1]))

    def test_zero_inner_floor_is_degenerate(self):
        cert = B._certificate(Polynomial([0, 1]), 10, Fraction(1, 2), 0, vertex_count=4)
        assert cert.degenerate and cert.bound_floor == 4 and cert.bound_ceiled == 20

    def test_floor_dominates_plain(self):
        for s, n in [(hypercube_spectrum(k), 2**k) for k in range(2, 12)] + [
            (lee_spec(m, q), q**m) for m in (1, 2, 3) for q in range(3, 9)
        ]:
            try:
                cert = B.chi2_closed_regular(s, n)
            except BoundInapplicableError:
                continue
            assert cert.bound_floor >= cert.bound_plain - 1e-12
            assert cert.bound_ceiled >= math.ceil(cert.bound_plain - 1e-9)


class TestClosedT2:
    @pytest.mark.parametrize("n", range(2, 13))
    def test_general_hypercube(self, n):
        cert = B.chi2_closed_general(hypercube_spectrum(n), n)
        assert cert.bound_plain == (n + 2 if n % 2 == 0 else n + 1)

    def test_c5(self):
        assert B.chi2_closed_general(cycle_spectrum(5), 2).bound_ceiled == 5

    def test_needs_three_eigenvalues(self):
        k3 = Spectrum((2, -1), (1, 2))
        with pytest.raises(BoundInapplicableError):
            B.chi2_closed_general(k3, 2)

    @pytest.mark.parametrize("spec, n, expected", [
        (hypercube_spectrum(8), 256, 11),
        (lee_spec(3, 3), 27, 9),
        (lee_spec(4, 5), 625, 10),
    ], ids=["Q8", "G33", "G45"])
    def test_regular(self, spec, n, expected):
        assert B.chi2_closed_regular(spec, n).bound_ceiled == expected

    def test_sandwich_around_minus_one(self):
        """theta_i in [-2,-1], theta_{i-1} in (-1,0]: plain in (k+1, k+2], or k+1 when theta_i = -1."""
        checked = 0
        for n in (1, 2, 3):
            for q in range(3, 11):
                s = lee_spec(n, q)
                k = 2 * n
                try:
                    cert = B.chi2_closed_regular(s, q**n)
                except BoundInapplicableError:
                    continue
                vals = [float(v) for v in s.values]
                i = min(j for j, v in enumerate(vals) if v <= -1 + 1e-9)
                if vals[i] < -2 - 1e-9 or not -1 + 1e-9 < vals[i - 1] <= 1e-9:
                    continue
                plain = float(cert.bound_plain)
                if abs(vals[i] + 1) <= 1e-9:
                    assert plain == pytest.approx(k + 1)
                else:
                    assert k + 1 < plain <= k + 2 + 1e-9
                checked += 1
        assert checked > 5


class TestClosedT3:
    @pytest.mark.parametrize("n, expected", [(3, 8), (6, 13)])
    def test_hypercube(self, n, expected):
        assert B.chi3_closed_regular(hypercube_spectrum(n), 0, 2**n).bound_ceiled == expected

    def test_g35(self):
        assert B.chi3_closed_regular(lee_spec(3, 5), 0, 125).bound_ceiled == 16

    def test_errors(self):
        with pytest.raises(BoundInapplicableError):
            B.chi3_closed_regular(hypercube_spectrum(2), 0, 4)
        with pytest.raises(BoundInapplicableError, match="-1"):
            B.chi3_closed_regular(Spectrum((3, 1, 0, -1), (1, 1, 1, 1)), 0, 4)


class TestNgo:
    def test_examples(self):
        ngo = B.ngo_bounds(8, 2)
        assert ngo.lower_plain == 10
        assert B.ngo_bounds(9, 3).lower_plain == 20
        assert B.ngo_bounds(9, 4).lower == 52
        assert B.ngo_bounds(10, 5).lower == 103

    @pytest.mark.parametrize("n, t", [(6, 2), (7, 3), (9, 4), (11, 5)])
    def test_lower_below_upper(self, n, t):
        ngo = B.ngo_bounds(n, t)
        assert ngo.lower_plain <= ngo.lower <= ngo.upper

    def test_range(self):
        with pytest.raises(InvalidParameterError):
            B.ngo_bounds(4, 5)
        with pytest.raises(InvalidParameterError):
            B.ngo_bounds(4, 0)


class TestHypercubeT45:
    @pytest.mark.parametrize("n, t, expected", [(7, 4, 43), (6, 4, 32), (10, 5, 114)])
    def test_examples(self, n, t, expected):
        assert B.hypercube_t45_bound(n, t).bound_ceiled == expected

    def test_q7_plain_vs_floor(self):
        cert = B.hypercube_t45_bound(7, 4)
        assert cert.bound_plain == 36 and cert.bound_ceiled == 43

    @pytest.mark.parametrize("t", [4, 5])
    @pytest.mark.parametrize("n", range(5, 16))
    def test_nonnegative_on_spectrum(self, n, t):
        cert = B.hypercube_t45_bound(n, t)
        assert cert.lambda_p == 0
        roots = set(B.t45_roots(n, t))
        for theta in hypercube_spectrum(n).values[1:]:
            value = cert.polynomial(theta)
            assert value >= 0
            assert (value == 0) == (theta in roots)

    def test_errors(self):
        with pytest.raises(InvalidParameterError):
            B.hypercube_t45_bound(3, 4)
        with pytest.raises(InvalidParameterError):
            B.hypercube_t45_bound(8, 3)


class TestMisc:
    def test_exact_range(self):
        assert B.hypercube_exact_range(3, 2) == 4
        assert B.hypercube_exact_range(4, 3) == 8
        assert B.hypercube_exact_range(10, 2) is None
        with pytest.raises(InvalidParameterError):
            B.hypercube_exact_range(1, 1)

    def test_lee_theorem(self):
        assert B.lee_chi2_theorem_bound(LeeParams(3, 7)) == 7
        assert B.lee_chi2_theorem_bound(LeeParams(3, 4)) == 8
        assert B.lee_chi2_theorem_bound(LeeParams(1, 5)) == 5
        with pytest.raises(BoundInapplicableError):
            B.lee_chi2_theorem_bound(LeeParams(3, 3))

    def test_report_json(self):
        cert = B.chi2_closed_regular(hypercube_spectrum(8), 256)
        report = B.BoundReport("Q8", 2, B.Method.CLOSED_T2_REGULAR, cert.bound_ceiled, cert)
        data = json.loads(report.to_json())
        assert data["value"] == 11 and data["method"] == "closed_t2_regular"
        for key in ("graph", "t", "polynomial_coefficients", "W_p", "lambda_p", "plain", "floor_enhanced"):
            assert key in data
        with pytest.raises(InvalidParameterError):
            B.BoundReport("Q8", 2, B.Method.NGO_LOWER, 0)

    def test_float_threshold_slack(self):
        # G(1,6) has -1 as a float eigenvalue; it must count as <= -1
        s = lee_spec(1, 6)
        cert = B.chi2_closed_regular(s, 6)
        assert cert.bound_ceiled == B.chi2_closed_regular(Spectrum((2, 1, -1, -2), (1, 2, 2, 1)), 6).bound_ceiled

    def test_exact_helpers(self):
        assert B.exact_floor(10.9999999999) == 11
        assert B.exact_ceil(7.0000000001) == 7
        assert B.exact_floor(Fraction(21, 2)) == 10
