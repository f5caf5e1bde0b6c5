import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforms.number_core import (
    IntPolynomial,
    binomial,
    cyclotomic,
    denominator_divides,
    dn_poly_eval,
    euler_phi,
    is_prime,
    lcm_upto,
    ord_prime_factorial,
    ord_prime_rational,
    pochhammer,
    primes_upto,
    q_binomial,
    q_factorial_poly,
    q_pochhammer_ord,
)


def test_lcm_upto_small():
    assert lcm_upto(0) == 1
    assert lcm_upto(1) == 1
    assert lcm_upto(4) == 12
    assert lcm_upto(10) == 2520


def test_lcm_upto_growth_rate():
    # D_n^(1/n) -> e, so log(D_200)/200 should sit near 1.
    d200 = lcm_upto(200)
    rate = math.log(d200) / 200
    assert 0.9 < rate < 1.1


def test_lcm_upto_matches_reduce():
    acc = 1
    for k in range(1, 80):
        acc = math.lcm(acc, k)
        assert lcm_upto(k) == acc


def test_is_prime_agrees_with_sieve():
    sieve = set(primes_upto(2000))
    for n in range(2000):
        assert is_prime(n) == (n in sieve)


def test_ord_prime_factorial():
    assert ord_prime_factorial(10, 2) == 8
    assert ord_prime_factorial(0, 7) == 0
    assert ord_prime_factorial(20, 5) == 4


def test_ord_prime_factorial_rejects_composite():
    with pytest.raises(ValueError):
        ord_prime_factorial(10, 6)


@given(st.integers(min_value=0, max_value=10000))
@settings(max_examples=60, deadline=None)
def test_ord_factorial_single_term_above_sqrt(N):
    # For p > sqrt(N) the Legendre sum has one term, floor(N/p).
    for p in (101, 211, 499):
        if p * p > N:
            assert ord_prime_factorial(N, p) == N // p


def test_cyclotomic_small():
    x_minus_1 = IntPolynomial([-1, 1])
    assert cyclotomic(1) == x_minus_1
    assert cyclotomic(2) == IntPolynomial([1, 1])
    assert cyclotomic(6) == IntPolynomial([1, -1, 1])
    assert cyclotomic(12) == IntPolynomial([1, 0, -1, 0, 1])


def test_cyclotomic_degree_is_totient():
    for l in range(1, 60):
        assert cyclotomic(l).degree == euler_phi(l)


def test_cyclotomic_product_formula():
    # prod_{d | n} Phi_d = x^n - 1
    for n in range(1, 40):
        prod = IntPolynomial([1])
        for d in range(1, n + 1):
            if n % d == 0:
                prod = prod * cyclotomic(d)
        expect = [0] * (n + 1)
        expect[0], expect[n] = -1, 1
        assert prod == IntPolynomial(expect)


def test_cyclotomic_divides_iff():
    # Phi_l | x^n - 1 exactly when l | n; tested by running x^n mod Phi_l.
    for l in range(1, 101):
        phi = cyclotomic(l)
        d = phi.degree
        # rem represents x^k mod Phi_l, starting from k = 0 -> constant 1
        rem = [1] + [0] * (d - 1)
        for n in range(1, 101):
            # multiply by x
            carry = rem[-1]
            rem = [0] + rem[:-1]
            if carry:
                # subtract carry * (Phi_l - x^d), i.e. reduce x^d
                for i in range(d):
                    rem[i] -= carry * phi.coeffs[i]
            divisible = rem[0] - 1 == 0 and all(c == 0 for c in rem[1:])
            assert divisible == (n % l == 0), (l, n)


def test_cyclotomic_oracle_sympy():
    sympy = pytest.importorskip("sympy")
    x = sympy.Symbol("x")
    for l in (1, 2, 3, 4, 6, 8, 9, 10, 12, 15, 24, 30, 36, 105):
        ours = cyclotomic(l)
        theirs = sympy.Poly(sympy.cyclotomic_poly(l, x), x).all_coeffs()
        assert list(reversed(theirs)) == list(ours.coeffs)


def test_q_pochhammer_ord():
    assert q_pochhammer_ord(5, 3) == 1
    assert q_pochhammer_ord(0, 4) == 0
    assert q_pochhammer_ord(9, 3) == 3


def test_q_pochhammer_ord_integer_consistency():
    # (x;x)_5 at x=2 is -9765 = -(3^2 * 5 * 7 * 31); Phi_3(2) = 7 appears once.
    val = q_factorial_poly(5)(2)
    assert val == -9765
    assert cyclotomic(3)(2) == 7
    assert val % 7 == 0 and val % 49 != 0


def test_q_binomial_small():
    assert q_binomial(2, 1) == IntPolynomial([1, 1])
    assert q_binomial(4, 2) == IntPolynomial([1, 1, 2, 1, 1])
    assert q_binomial(3, 5) == IntPolynomial([])


def test_q_binomial_classical_limit():
    for n in range(21):
        for k in range(n + 1):
            assert q_binomial(n, k)(1) == math.comb(n, k)


def test_q_binomial_positive_palindromic():
    for n in range(31):
        for k in range(n + 1):
            poly = q_binomial(n, k)
            assert all(c >= 0 for c in poly.coeffs)
            assert poly.is_palindromic()


def test_q_binomial_pascal_recurrence():
    # [n,k]_x = [n-1,k-1]_x + x^k [n-1,k]_x
    for n in range(2, 15):
        for k in range(1, n):
            xk = IntPolynomial([0] * k + [1])
            assert q_binomial(n, k) == q_binomial(n - 1, k - 1) + xk * q_binomial(n - 1, k)


def test_q_binomial_ord_formula():
    # ord_{Phi_l} [n,k]_x = floor(n/l) - floor(k/l) - floor((n-k)/l)
    for n, k, l in [(10, 4, 3), (12, 5, 4), (9, 3, 2), (14, 7, 5)]:
        expect = n // l - k // l - (n - k) // l
        poly = q_binomial(n, k)
        phi = cyclotomic(l)
        e = 0
        while True:
            try:
                poly = poly.divexact(phi)
                e += 1
            except ValueError:
                break
        assert e == expect


def test_dn_poly_eval():
    assert dn_poly_eval(1, 2) == 1
    assert dn_poly_eval(3, 2) == 21
    with pytest.raises(ValueError):
        dn_poly_eval(3, 1)


def test_dn_poly_eval_is_lcm_of_qn_minus_1():
    for p in (2, 3, -2):
        for n in range(1, 12):
            target = 1
            for k in range(1, n + 1):
                target = math.lcm(target, abs(p**k - 1))
            assert dn_poly_eval(n, p) == target


def test_dn_poly_growth_constant():
    # log D_n(p) ~ (3/pi^2) n^2 log p
    n, p = 400, 2
    val = dn_poly_eval(n, p)
    ratio = math.log(val) / (n * n * math.log(p))
    assert abs(ratio - 3 / math.pi**2) / (3 / math.pi**2) < 0.05


def test_binomial_extension():
    assert binomial(5, 2) == 10
    assert binomial(5, -1) == 0
    assert binomial(5, 6) == 0
    assert binomial(-3, 2) == 6  # (-1)^2 binom(4,2)


def test_pochhammer_exact():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(3, 0) == 1
    assert pochhammer(-2, 4) == 0


def test_ord_prime_rational():
    assert ord_prime_rational(Fraction(8, 3), 2) == 3
    assert ord_prime_rational(Fraction(9, 4), 2) == -2


def test_denominator_divides():
    assert denominator_divides(Fraction(5, 12), 24)
    assert not denominator_divides(Fraction(5, 12), 8)
    assert denominator_divides(Fraction(5, 24), 3, p_slack=2)


def test_intpolynomial_divexact_roundtrip():
    a = IntPolynomial([2, 0, 1])
    b = IntPolynomial([-1, 3])
    assert (a * b).divexact(b) == a
    with pytest.raises(ValueError):
        IntPolynomial([1, 1]).divexact(IntPolynomial([0, 1]))
