"""Tests for the Legendre-transform integer sequences."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforms.number_core import binomial
from zetaforms.schmidt import (
    SchmidtRow,
    c_schmidt,
    d_coeff,
    legendre_solve,
    schmidt_row,
    t_coeff,
)

FRANEL = [1, 2, 10, 56, 346, 2252]


class TestDCoeff:
    def test_diagonal_is_one(self):
        for n in range(0, 30):
            assert d_coeff(n, n) == 1

    def test_small_values(self):
        assert d_coeff(0, 0) == 1
        assert d_coeff(1, 0) == 1
        assert d_coeff(2, 0) == 2
        assert d_coeff(2, 1) == 3

    def test_above_diagonal_vanishes(self):
        assert d_coeff(3, 5) == 0
        assert d_coeff(0, 4) == 0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            d_coeff(-1, 0)
        with pytest.raises(ValueError):
            d_coeff(3, -2)

    @given(n=st.integers(min_value=0, max_value=80), k=st.integers(min_value=0, max_value=80))
    @settings(max_examples=200, deadline=None)
    def test_both_forms_agree(self, n, k):
        # d_coeff raises if its two closed forms ever differ
        value = d_coeff(n, k)
        assert value >= 0
        if k <= n:
            assert value == (2 * k + 1) * binomial(2 * n, n - k) // (n + k + 1)

    @given(st.integers(min_value=0, max_value=60))
    @settings(max_examples=60, deadline=None)
    def test_kernel_telescopes(self, n):
        # summing the kernel over k collapses the difference form
        assert sum(d_coeff(n, k) for k in range(n + 1)) == binomial(2 * n, n)


class TestLegendreSolve:
    def test_power_one_gives_ones(self):
        assert legendre_solve(1, 8) == [1] * 9

    def test_power_two_gives_franel(self):
        assert legendre_solve(2, 5) == FRANEL

    def test_franel_closed_form(self):
        solved = legendre_solve(2, 12)
        for n in range(13):
            assert solved[n] == sum(binomial(n, j) ** 3 for j in range(n + 1))

    def test_power_three_first_row_by_hand(self):
        # n=1 row: lhs = 1 + binom(1,1)^3 binom(2,1)^3 = 1 + 8 = 9,
        # subtract c_0 = 1 and divide by binom(1,1) binom(2,1) = 2
        solved = legendre_solve(3, 1)
        assert solved[0] == 1
        assert solved[1] == Fraction(9 - 1, 2) == 4

    def test_returns_exact_rationals(self):
        values = legendre_solve(4, 6)
        assert all(isinstance(v, Fraction) for v in values)
        assert all(v.denominator == 1 for v in values)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            legendre_solve(0, 5)
        with pytest.raises(ValueError):
            legendre_solve(2, -1)

    @given(
        a=st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=12),
    )
    @settings(max_examples=80, deadline=None)
    def test_inversion_kernel_recovers_triangular_solve(self, a):
        # for ANY right-hand side a_n, the alternating d-kernel inverts
        # the transform sum_k binom(n,k) binom(n+k,k) c_k = a_n
        N = len(a) - 1
        c = []
        for n in range(N + 1):
            known = sum(binomial(n, k) * binomial(n + k, k) * c[k] for k in range(n))
            c.append(Fraction(a[n] - known, binomial(2 * n, n)))
        for n in range(N + 1):
            kernel = sum(
                (-1) ** ((n - k) % 2) * d_coeff(n, k) * a[k] for k in range(n + 1)
            )
            assert Fraction(kernel, binomial(2 * n, n)) == c[n]


class TestTCoeff:
    def test_diagonal_is_one(self):
        for r in range(1, 8):
            for n in range(0, 12):
                assert t_coeff(n, n, r) == 1

    def test_power_three_closed_form(self):
        # t_{n,j} for r=3 collapses to a single factorial quotient,
        # vanishing whenever 3j < n
        for n in range(11):
            for j in range(n + 1):
                if 3 * j < n:
                    expected = 0
                else:
                    expected = math.factorial(2 * n) // (
                        math.factorial(3 * j - n) * math.factorial(n - j) ** 3
                    )
                assert t_coeff(n, j, 3) == expected

    def test_power_five_small(self):
        assert t_coeff(1, 1, 5) == 1
        # n=1, j=0: -d_{1,0} + d_{1,1} = 0
        assert t_coeff(1, 0, 5) == 0
        # n=2, j=1: -d_{2,1} binom(2,0)^5 + d_{2,2} binom(3,1)^5
        assert t_coeff(2, 1, 5) == -3 + 3**5

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            t_coeff(3, 4, 2)
        with pytest.raises(ValueError):
            t_coeff(3, -1, 2)
        with pytest.raises(ValueError):
            t_coeff(3, 1, 0)


class TestCSchmidt:
    def test_frozen_examples(self):
        assert c_schmidt(2, 3) == 68
        assert c_schmidt(1, 4) == 8
        assert c_schmidt(1, 5) == 16

    def test_strehl_terms_for_n2_r3(self):
        # the closed sum for (2,3) splits as 32 + 36 over j = 1, 2
        terms = [
            binomial(2 * j, j) ** 2 * binomial(2 * j, 2 - j) * binomial(2, j) ** 2
            for j in range(3)
        ]
        assert terms == [0, 32, 36]
        assert sum(terms) == 68

    def test_franel_values(self):
        for n, expected in enumerate(FRANEL):
            assert c_schmidt(n, 2) == expected

    def test_three_routes_agree_exactly(self):
        # c_schmidt raises unless solve, t-sum, and closed form coincide;
        # re-derive the t-sum route here so the test does not lean on the
        # module's own cross-check
        for r in range(2, 8):
            solved = legendre_solve(r, 12)
            for n in range(13):
                value = c_schmidt(n, r)
                tsum = sum(
                    binomial(2 * j, j) ** r * t_coeff(n, j, r) for j in range(n + 1)
                )
                assert tsum % binomial(2 * n, n) == 0
                assert value == tsum // binomial(2 * n, n)
                assert value == solved[n]
                assert isinstance(value, int)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            c_schmidt(-1, 3)
        with pytest.raises(ValueError):
            c_schmidt(3, 0)

    def test_franel_recursion_to_fifty(self):
        c = legendre_solve(2, 51)
        for n in range(1, 50):
            assert (n + 1) ** 2 * c[n + 1] == (7 * n * n + 7 * n + 2) * c[n] + 8 * n * n * c[n - 1]


class TestSchmidtRow:
    def test_row_contents(self):
        row = schmidt_row(2, 3)
        assert isinstance(row, SchmidtRow)
        assert row.n == 2 and row.r == 3
        assert row.c == 68
        assert row.t == (t_coeff(2, 0, 3), t_coeff(2, 1, 3), 1)

    def test_central_binomial_divides_weighted_t(self):
        for r in range(2, 8):
            for n in range(13):
                row = schmidt_row(n, r)
                central = binomial(2 * n, n)
                for j, tj in enumerate(row.t):
                    assert (binomial(2 * j, j) ** r * tj) % central == 0

    def test_t_reconstructs_c(self):
        for r in (2, 5):
            for n in range(9):
                row = schmidt_row(n, r)
                total = sum(
                    binomial(2 * j, j) ** r * tj for j, tj in enumerate(row.t)
                )
                assert total == binomial(2 * n, n) * row.c
