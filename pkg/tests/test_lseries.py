"""Exact q-series layer and L-value routes for the curve y^2 = x^3 - x."""

import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforms.lseries import (
    QSeries,
    ap_point_count,
    curve_coefficients,
    eta_expansion,
    eta_quotient,
    eta_value,
    fk_function,
    lvalue,
    lvalue_intermediate,
)
from zetaforms.number_core import primes_in

L1 = mp.mpf("0.655514388573029953")
L2 = mp.mpf("0.917050635318654989")
L3 = mp.mpf("0.982680147836119177")


def small_series(draw_lead: bool = False):
    lead = st.fractions(min_value=-2, max_value=2, max_denominator=24)
    coeffs = st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=12)
    if draw_lead:
        return st.builds(lambda l, c: QSeries(l, tuple(c)), lead, coeffs)
    return st.builds(lambda c: QSeries(Fraction(0), tuple(c)), coeffs)


class TestQSeries:
    def test_multiplication_truncates_to_shorter_factor(self):
        a = QSeries(Fraction(0), (1, 1, 1, 1, 1))
        b = QSeries(Fraction(1, 2), (1, 2))
        prod = a * b
        assert prod.lead == Fraction(1, 2)
        assert prod.coeffs == (1, 3)

    def test_coefficient_beyond_truncation_raises(self):
        a = QSeries(Fraction(0), (1, 2, 3))
        assert a.coefficient(2) == 3
        with pytest.raises(ValueError):
            a.coefficient(3)

    def test_coefficient_off_lattice_is_zero(self):
        a = QSeries(Fraction(1, 3), (5, 7))
        assert a.coefficient(Fraction(1, 3)) == 5
        assert a.coefficient(Fraction(1, 2)) == 0
        assert a.coefficient(0) == 0

    def test_division_requires_unit_leading_behaviour(self):
        a = QSeries(Fraction(0), (1, 2, 1))
        zero_lead = QSeries(Fraction(0), (0, 1, 0))
        with pytest.raises(ValueError):
            a / zero_lead

    def test_division_must_be_exact(self):
        a = QSeries(Fraction(0), (1, 1, 0))
        b = QSeries(Fraction(0), (2, 0, 0))
        with pytest.raises(ArithmeticError):
            a / b

    def test_power_matches_repeated_product(self):
        a = QSeries(Fraction(1, 24), (1, -1, -1, 0, 0, 1))
        assert a**3 == a * a * a
        one = a**0
        assert one.lead == 0 and one.coeffs[0] == 1

    @given(small_series(), small_series())
    @settings(max_examples=80, deadline=None)
    def test_multiplication_commutes(self, a, b):
        assert a * b == b * a

    @given(small_series(), small_series(), small_series())
    @settings(max_examples=60, deadline=None)
    def test_multiplication_associates(self, a, b, c):
        left = (a * b) * c
        right = a * (b * c)
        assert left == right

    @given(small_series(draw_lead=True), small_series(draw_lead=True))
    @settings(max_examples=80, deadline=None)
    def test_division_inverts_multiplication(self, a, b):
        if b.coeffs[0] == 0:
            with pytest.raises(ValueError):
                (a * b) / b
            return
        recovered = (a * b) / b
        n = recovered.order
        assert recovered.lead == a.lead
        assert recovered.coeffs == a.coeffs[:n]

    def test_eval_matches_horner_by_hand(self):
        a = QSeries(Fraction(1, 2), (2, -3))
        q = mp.mpf("0.25")
        assert abs(a.eval_at(q) - mp.sqrt(q) * (2 - 3 * q)) < 1e-15


class TestEtaExpansion:
    def test_pentagonal_start(self):
        e = eta_expansion(1, 16)
        assert e.lead == Fraction(1, 24)
        assert e.coeffs == (1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1)

    def test_multiplier_rescales_support(self):
        e = eta_expansion(3, 31)
        assert e.lead == Fraction(3, 24)
        assert e.coeffs[0] == 1 and e.coeffs[3] == -1 and e.coeffs[6] == -1
        assert all(e.coeffs[j] == 0 for j in range(31) if j % 3)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            eta_expansion(0, 5)
        with pytest.raises(ValueError):
            eta_expansion(2, 0)

    def test_quotient_recovers_factor(self):
        order = 48
        e4 = eta_expansion(4, order)
        e8 = eta_expansion(8, order)
        prod = e4 * e8
        assert prod / e8 == QSeries(e4.lead, e4.coeffs)


class TestCurveCoefficients:
    def test_weight_two_form_expansion(self):
        f = eta_quotient(((4, 2), (8, 2)), 32)
        assert f.lead == 1
        # begins q - 2 q^5 - 3 q^9 + 6 q^13 + ...
        assert f.coefficient(1) == 1
        assert f.coefficient(5) == -2
        assert f.coefficient(9) == -3
        assert f.coefficient(13) == 6

    def test_support_lives_on_one_mod_four(self):
        a = curve_coefficients(400)
        assert all(a[n] == 0 for n in range(1, 401) if n % 4 != 1)

    def test_point_count_examples(self):
        assert ap_point_count(3) == 0
        assert ap_point_count(5) == -2
        with pytest.raises(ValueError):
            ap_point_count(2)
        with pytest.raises(ValueError):
            ap_point_count(9)

    def test_inert_primes_vanish(self):
        for p in primes_in(3, 200):
            if p % 4 == 3:
                assert ap_point_count(p) == 0

    def test_counts_match_expansion_to_five_hundred(self):
        a = curve_coefficients(500)
        for p in primes_in(3, 500):
            assert ap_point_count(p) == a[p], p

    def test_multiplicative_on_coprime_indices(self):
        a = curve_coefficients(512)
        for m in range(2, 24):
            for n in range(2, 512 // m + 1):
                if math.gcd(m, n) == 1:
                    assert a[m * n] == a[m] * a[n], (m, n)

    def test_prime_power_recursion(self):
        # a_{p^2} = a_p^2 - p for the good odd primes
        a = curve_coefficients(512)
        for p in (3, 5, 7, 11, 13, 17, 19):
            assert a[p * p] == a[p] ** 2 - p


class TestEtaValue:
    def test_involution_identity(self):
        assert abs(eta_value(mp.mpf(1) / 2) - mp.sqrt(2) * eta_value(2)) < 1e-12

    def test_fixed_point_of_quarter_involution(self):
        # eta(i/4) = 2 eta(4i) by applying the rule twice through eta(i)
        assert abs(eta_value(mp.mpf(1) / 4) - 2 * eta_value(4)) < 1e-12

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            eta_value(0)


class TestFkFunction:
    def test_combination_matches_first_lvalue(self):
        assert abs(2 * fk_function(1, Fraction(5, 4), 1e-8) - L1) < 1e-6

    def test_combination_matches_second_lvalue(self):
        combo = fk_function(2, Fraction(5, 4), 1e-8) + fk_function(2, Fraction(3, 4), 1e-8)
        assert abs(combo - L2) < 1e-6

    def test_combination_matches_third_lvalue(self):
        combo = (
            fk_function(3, Fraction(5, 4), 1e-9)
            + 2 * fk_function(3, Fraction(3, 4), 1e-9)
            + fk_function(3, Fraction(1, 4), 1e-9)
        )
        assert abs(combo - L3) < 1e-8

    def test_divergent_parameters_rejected(self):
        with pytest.raises(ValueError):
            fk_function(1, Fraction(1, 4))
        with pytest.raises(ValueError):
            fk_function(2, Fraction(3, 4) - Fraction(3, 4))
        with pytest.raises(ValueError):
            fk_function(4, Fraction(5, 4))


class TestLValue:
    def test_first_value_closed_form(self):
        v = lvalue(1, "integral", 1e-10)
        ref = gamma_quarter_reference()
        assert abs(v - ref) < 1e-10
        assert abs(v - L1) < 1e-10

    def test_second_value_integral(self):
        assert abs(lvalue(2, "integral", 1e-8) - L2) < 1e-8

    def test_third_value_integral(self):
        assert abs(lvalue(3, "integral", 1e-8) - L3) < 1e-8

    def test_second_value_hypergeometric(self):
        assert abs(lvalue(2, "hypergeometric", 1e-6) - L2) < 1e-6

    def test_third_value_hypergeometric(self):
        assert abs(lvalue(3, "hypergeometric", 1e-6) - L3) < 1e-6

    def test_dirichlet_oracle_is_coarse_but_honest(self):
        for k, ref in ((2, L2), (3, L3)):
            v = lvalue(k, "dirichlet_oracle", 1e-3)
            assert abs(v - ref) < 1e-3

    def test_dirichlet_rejects_first_value(self):
        with pytest.raises(ValueError):
            lvalue(1, "dirichlet_oracle", 1e-3)

    def test_dirichlet_rejects_tight_tolerance(self):
        with pytest.raises(ValueError):
            lvalue(2, "dirichlet_oracle", 1e-6)

    def test_rejects_unknown_route_and_order(self):
        with pytest.raises(ValueError):
            lvalue(4, "integral")
        with pytest.raises(ValueError):
            lvalue(2, "euler_product")
        with pytest.raises(ValueError):
            lvalue(2, "integral", 0.0)


class TestIntermediateRepresentations:
    def test_second_value_eta_integrals(self):
        assert abs(lvalue_intermediate(2, 1e-6) - L2) < 1e-6

    def test_third_value_eta_integral(self):
        assert abs(lvalue_intermediate(3, 1e-6) - L3) < 1e-6

    def test_rejects_first_value(self):
        with pytest.raises(ValueError):
            lvalue_intermediate(1)


class TestModularDictionary:
    def test_hypergeometric_uniformization(self):
        # x = 4 eta(2it)^4 eta(8it)^8 / eta(4it)^12 and
        # phi = eta(4it)^10 / (eta(2it)^4 eta(8it)^4) satisfy
        # 2F1(1/2,1/2;1;x^2) = phi on the imaginary axis
        with mp.workdps(30):
            for t in (mp.mpf(1) / 2, mp.mpf(1), mp.mpf(2)):
                e2 = eta_value(2 * t)
                e4 = eta_value(4 * t)
                e8 = eta_value(8 * t)
                x = 4 * e2**4 * e8**8 / e4**12
                phi = e4**10 / (e2**4 * e8**4)
                assert abs(mp.hyp2f1(mp.mpf(1) / 2, mp.mpf(1) / 2, 1, x**2) - phi) < 1e-10


def gamma_quarter_reference() -> mp.mpf:
    with mp.workdps(40):
        return +(mp.gamma(mp.mpf(1) / 4) ** 2 / (8 * mp.sqrt(2 * mp.pi)))
