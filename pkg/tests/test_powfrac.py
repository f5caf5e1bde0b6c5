"""Pade pairs of the binomial tail series and fractional-power certificates."""

import math
import random
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforms.analysis_core import StepFunction
from zetaforms.number_core import IntPolynomial, binomial, primes_upto
from zetaforms.powfrac import (
    TARGETS,
    binomial_series_value,
    certificate_pow,
    determinant_identity,
    lambda_indicator,
    pade_pair,
    phi_exponents,
    phi_pointwise,
    phi_prime_pointwise,
    phi_profile,
    power_distance,
    remainder_value,
)
from zetaforms.powfrac import _floor_exponent, _floor_exponent_prime

F = Fraction

# shared prime content for small parameter sets, both exponent variants
PHI_TABLE = {
    (9, 19, 9): (11, 11),
    (18, 38, 18): (851, 851),
    (27, 57, 27): (12617, 12617),
    (5, 15, 6): (143, 13),
    (1, 2, 1): (1, 1),
    (2, 5, 3): (5, 1),
}

# support of the carry profile for the (9,19,9) direction; right endpoints
# are genuine profile breakpoints, so interval membership is half-open
SUPPORT_32 = (
    (F(2, 37), F(1, 18)), (F(3, 37), F(1, 10)), (F(4, 37), F(1, 9)),
    (F(6, 37), F(1, 6)), (F(7, 37), F(1, 5)), (F(8, 37), F(2, 9)),
    (F(10, 37), F(5, 18)), (F(11, 37), F(3, 10)), (F(12, 37), F(1, 3)),
    (F(14, 37), F(7, 18)), (F(16, 37), F(4, 9)), (F(18, 37), F(1, 2)),
    (F(20, 37), F(5, 9)), (F(22, 37), F(3, 5)), (F(24, 37), F(2, 3)),
    (F(28, 37), F(7, 9)), (F(32, 37), F(8, 9)), (F(36, 37), F(1, 1)),
)

CONSTANTS = {
    "3/2": {
        "c0": 3.28973907, "c1": 35.48665992, "c2": 4.46695926,
        "condition": -0.07860790, "delta": 0.00027320432,
        "base": F(5803, 10000), "divisor": 57, "pade_beta": 19,
    },
    "4/3": {
        "c0": 3.23464237, "c1": 24.57344160, "c2": 3.26150726,
        "condition": -0.02686489, "delta": 0.00297022,
        "base": F(4914, 10000), "divisor": 30, "pade_beta": 15,
    },
    "5/4": {
        "c0": -7.61986619, "c1": 37.89752250, "c2": 3.81459621,
        "condition": -0.44833952, "delta": 0.00839425,
        "base": F(5152, 10000), "divisor": 63, "pade_beta": 18,
    },
}


def random_parameters(rng, b_max=40, n_max=None):
    b = rng.randint(2, b_max)
    a = rng.randint(1, b // 2)
    n = rng.randint(0, b if n_max is None else min(b, n_max))
    return a, b, n


def pochhammer(x, k):
    out = F(1)
    for i in range(k):
        out *= x + i
    return out


class TestPadePair:
    def test_first_pair_example(self):
        pair = pade_pair(1, 2, 1)
        assert pair.Q == IntPolynomial([4, -2])
        assert pair.P == IntPolynomial([0, -6])

    def test_zeroth_pair_example(self):
        pair = pade_pair(1, 2, 0)
        assert pair.Q == IntPolynomial([1])
        assert not pair.P

    def test_degree_and_root_invariants(self):
        rng = random.Random(101)
        for _ in range(25):
            a, b, n = random_parameters(rng, b_max=24, n_max=10)
            pair = pade_pair(a, b, n)
            assert pair.Q.degree == n
            assert pair.P.degree <= n
            assert pair.P(0) == 0

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            pade_pair(0, 2, 1)
        with pytest.raises(ValueError):
            pade_pair(3, 5, 1)
        with pytest.raises(ValueError):
            pade_pair(1, 2, 3)
        with pytest.raises(ValueError):
            pade_pair(1, 2, -1)

    def test_matches_terminating_hypergeometric_route(self):
        # independent evaluation of Q through rising factorials
        rng = random.Random(7)
        for _ in range(12):
            a, b, n = random_parameters(rng, b_max=18, n_max=7)
            pair = pade_pair(a, b, n)
            x = F(rng.randint(-9, 9), rng.randint(1, 9))
            expected = binomial(a + b + n, a + b) * sum(
                pochhammer(F(-n), mu) * pochhammer(F(a + n), mu) * x**mu
                / (pochhammer(F(a + b + 1), mu) * math.factorial(mu))
                for mu in range(n + 1)
            )
            assert pair.Q(x) == expected


class TestDeterminant:
    def test_example_at_order_zero(self):
        lo = pade_pair(1, 2, 0)
        hi = pade_pair(1, 2, 1)
        assert hi.Q * lo.P - lo.Q * hi.P == IntPolynomial([0, 6])
        assert determinant_identity(1, 2, 0)

    def test_fifty_random_parameter_sets(self):
        rng = random.Random(23)
        for _ in range(50):
            a, b, n = random_parameters(rng, b_max=40, n_max=None)
            n = min(n, b - 1, 9)
            assert determinant_identity(a, b, n)

    def test_sign_alternation(self):
        for n in range(6):
            lo = pade_pair(2, 8, n)
            hi = pade_pair(2, 8, n + 1)
            wronskian = hi.Q * lo.P - lo.Q * hi.P
            assert wronskian.degree == 1
            coeff = wronskian.coeffs[1]
            assert coeff > 0 if n % 2 == 0 else coeff < 0

    def test_rejects_degenerate_shift(self):
        with pytest.raises(ValueError):
            determinant_identity(1, 2, 2)


class TestRemainder:
    def test_exact_rational_value(self):
        value = remainder_value(1, 2, 1, F(1, 9), tol=1e-12)
        assert abs(value - F(153, 256)) < mp.mpf("1e-20")

    def test_tail_series_value(self):
        # Q(9) F(1/9) - P(9) with F(1/9) = 1953/512 reproduces the remainder
        assert abs(binomial_series_value(1, 2, F(1, 9)) - F(1953, 512)) < mp.mpf("1e-20")

    def test_z_zero_degenerations(self):
        assert remainder_value(2, 5, 0, 0) == binomial(7, 5)
        assert remainder_value(2, 5, 3, 0) == 0

    def test_rejects_z_outside_unit_disk(self):
        with pytest.raises(ValueError):
            remainder_value(1, 2, 1, 1)
        with pytest.raises(ValueError):
            remainder_value(1, 2, 1, F(-3, 2))
        with pytest.raises(ValueError):
            binomial_series_value(1, 2, F(9, 8))

    @pytest.mark.parametrize("params", [(2, 5, 3), (3, 8, 4)])
    @pytest.mark.parametrize("z", [F(1, 9), F(-1, 8)])
    def test_defect_identity(self, params, z):
        a, b, n = params
        pair = pade_pair(a, b, n)
        w = 1 / z
        fval = binomial_series_value(a, b, z, tol=1e-30)
        rval = remainder_value(a, b, n, z, tol=1e-25)
        qv = sum(c * w**i for i, c in enumerate(pair.Q.coeffs))
        pv = sum(c * w**i for i, c in enumerate(pair.P.coeffs))
        with mp.workdps(40):
            defect = (qv.numerator / mp.mpf(qv.denominator)) * fval - (
                pv.numerator / mp.mpf(pv.denominator)
            ) - rval
            assert abs(defect) < 1e-12 * (1 + abs(rval))


class TestExponents:
    def test_frozen_phi_values(self):
        for (a, b, n), (phi, phi_prime) in PHI_TABLE.items():
            data = phi_exponents(a, b, n)
            assert data["phi"] == phi
            assert data["phi_prime"] == phi_prime

    def test_divides_pair_coefficients(self):
        rng = random.Random(31)
        for _ in range(10):
            a, b, n = random_parameters(rng, b_max=26, n_max=9)
            data = phi_exponents(a, b, n)
            pair = pade_pair(a, b, n)
            assert all(c % data["phi"] == 0 for c in pair.Q.coeffs)
            assert all(c % data["phi"] == 0 for c in pair.P.coeffs)
            if n + 1 <= b:
                shifted = pade_pair(a, b, n + 1)
                assert all(
                    (n + 1) * c % data["phi_prime"] == 0 for c in shifted.Q.coeffs
                )
                assert all(
                    (n + 1) * c % data["phi_prime"] == 0 for c in shifted.P.coeffs
                )

    def test_exponents_nonnegative_and_bounded(self):
        data = phi_exponents(9, 19, 9)
        for p in data["primes"]:
            ep = data["e"][p]
            assert 0 <= ep <= 2
            best = min(
                ordp(binomial(17 + mu, mu) * binomial(37, 9 - mu), p)
                for mu in range(10)
            )
            assert ep <= best

    def test_exponent_vanishes_beyond_parameter_sum(self):
        for p in (41, 43, 53):
            assert _floor_exponent(9, 19, 9, p) == 0
            assert _floor_exponent_prime(9, 19, 9, p) == 0

    def test_one_period_suffices(self):
        a, b, n = 9, 19, 9
        for p in (7, 11, 13):
            full = min(
                (-(a + n)) // p - (-(a + n + mu)) // p - mu // p
                + (a + b + n) // p - (a + b + mu) // p - (n - mu) // p
                for mu in range(-2 * p, 3 * p)
            )
            assert _floor_exponent(a, b, n, p) == full

    @pytest.mark.parametrize("direction", [(9, 19, 9), (5, 15, 6), (3, 18, 7)])
    def test_profile_matches_exponents_prime_by_prime(self, direction):
        al, be, ga = direction
        for m in range(1, 7):
            a, b, n = al * m, be * m, ga * m
            data = phi_exponents(a, b, n)
            for p in data["primes"]:
                x = F(m, p)
                assert data["e"][p] == phi_pointwise(x, direction)
                assert data["e_prime"][p] == phi_prime_pointwise(x, direction)


def ordp(value, p):
    count = 0
    value = abs(value)
    while value and value % p == 0:
        value //= p
        count += 1
    return count


class TestLambdaIndicator:
    def test_integers(self):
        for x in (0, 1, -5, F(4, 2), F(-9, 3)):
            assert lambda_indicator(x) == 1

    def test_non_integers(self):
        for x in (F(7, 3), F(-1, 2), F(1, 18)):
            assert lambda_indicator(x) == 0

    @given(st.fractions(min_value=-50, max_value=50, max_denominator=97))
    @settings(max_examples=200, deadline=None)
    def test_matches_denominator_check(self, x):
        assert lambda_indicator(x) == (1 if x.denominator == 1 else 0)


class TestProfiles:
    def test_profile_equals_support_table(self):
        table = StepFunction.from_intervals([(lo, hi, 1) for lo, hi in SUPPORT_32])
        assert phi_profile((9, 19, 9)) == table

    def test_pointwise_matches_table_between_breakpoints(self):
        direction = (9, 19, 9)
        for lo, hi in SUPPORT_32:
            assert phi_pointwise((lo + hi) / 2, direction) == 1
        outside = [F(1, 37), F(5, 74), F(13, 74), F(27, 74), F(53, 74), F(71, 74)]
        for x in outside:
            assert phi_pointwise(x, direction) == 0

    def test_closed_right_endpoint_measure_zero(self):
        # the exact profile keeps the value 1 at the isolated endpoint 1/18,
        # while the half-open step representation drops it; the integral is
        # unaffected by the single point
        assert phi_pointwise(F(1, 18), (9, 19, 9)) == 1
        assert phi_profile((9, 19, 9)).value_at(F(1, 18)) == 0

    @pytest.mark.parametrize("direction", [(9, 19, 9), (5, 15, 6), (3, 18, 7)])
    def test_values_binary(self, direction):
        rng = random.Random(47)
        for _ in range(300):
            x = F(rng.randint(0, 2000), rng.randint(1, 2000))
            assert phi_pointwise(x, direction) in (0, 1)

    def test_prime_variant_agrees_off_exceptional_set(self):
        direction = (9, 19, 9)
        rng = random.Random(53)
        checked = 0
        while checked < 10000:
            x = F(rng.randint(0, 3000), rng.randint(1, 3000))
            if (18 * x).denominator == 1 or (10 * x).denominator == 1:
                continue
            assert phi_pointwise(x, direction) == phi_prime_pointwise(x, direction)
            checked += 1

    def test_prime_variant_differs_on_exceptional_set(self):
        direction = (9, 19, 9)
        assert phi_pointwise(F(1, 18), direction) == 1
        assert phi_prime_pointwise(F(1, 18), direction) == 0
        assert phi_pointwise(F(1, 10), direction) == 0
        assert phi_prime_pointwise(F(1, 10), direction) == 1


class TestCertificate:
    @pytest.mark.parametrize("target", sorted(TARGETS))
    def test_published_constants(self, target):
        cert = certificate_pow(target)
        want = CONSTANTS[target]
        assert abs(cert.c0 - want["c0"]) < 2e-8
        assert abs(cert.c1 - want["c1"]) < 2e-8
        assert abs(cert.c2 - want["c2"]) < 2e-8
        assert abs(cert.condition - want["condition"]) < 5e-8
        assert abs(cert.delta - want["delta"]) < 1e-8
        assert cert.base == want["base"]
        assert cert.divisor == want["divisor"]
        assert cert.pade_beta == want["pade_beta"]

    def test_three_halves_delta_close(self):
        cert = certificate_pow("3/2")
        assert abs(cert.delta - 0.00027320432) < 1e-10

    @pytest.mark.parametrize("target", sorted(TARGETS))
    def test_condition_negative_and_slack_positive(self, target):
        cert = certificate_pow(target)
        assert cert.condition < 0
        assert cert.delta > 0
        assert 0 < float(cert.base) < cert.raw_base < 1
        assert cert.raw_base - float(cert.base) < 1e-4

    def test_conclusions(self):
        assert "0.5803" in certificate_pow("3/2").conclusion
        assert "0.4914" in certificate_pow("4/3").conclusion
        assert "0.5152" in certificate_pow("5/4").conclusion

    def test_clearing_factors(self):
        assert TARGETS["3/2"].clearing == 1
        assert TARGETS["4/3"].clearing == 1
        assert TARGETS["5/4"].clearing == 3

    def test_rejects_unknown_target(self):
        with pytest.raises(ValueError):
            certificate_pow("7/6")


class TestPowerDistance:
    def test_exact_small_values(self):
        assert power_distance(F(3, 2), 1) == F(1, 2)
        assert power_distance(F(3, 2), 5) == F(13, 32)
        assert power_distance(F(3, 2), 0) == 0

    def test_three_halves_bound_directly(self):
        base = F(5803, 10000)
        for k in range(5, 61):
            assert power_distance(F(3, 2), k) > base**k

    def test_rejects_negative_exponent(self):
        with pytest.raises(ValueError):
            power_distance(F(3, 2), -1)

    @given(
        st.fractions(min_value=F(1, 10), max_value=10, max_denominator=40),
        st.integers(min_value=0, max_value=12),
    )
    @settings(max_examples=150, deadline=None)
    def test_distance_in_unit_interval(self, x, k):
        dist = power_distance(x, k)
        assert 0 <= dist <= F(1, 2)
