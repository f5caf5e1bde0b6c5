"""Exact integer and rational arithmetic utilities.

Primes and p-adic valuations, the universal denominators D_n = lcm(1..n),
cyclotomic polynomials and their evaluations D_n(p) = prod_l Phi_l(p),
Gaussian (q-)binomial coefficients, and Pochhammer symbols.  Every code
path in this module is exact; no floating point is used anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rat = Union[int, Fraction]

# Deterministic Miller-Rabin witness set, proven complete below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test.

    Uses a witness set proven sufficient for n < 3.3e24, far beyond any
    index this package touches; larger inputs are rejected rather than
    answered probabilistically.
    """
    if n >= _MR_LIMIT:
        raise ValueError("input exceeds the proven deterministic witness range")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    """All primes <= n by an Eratosthenes sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, n + 1) if sieve[i]]


def primes_in(lo: int, hi: int) -> list[int]:
    """All primes p with lo < p <= hi."""
    return [p for p in primes_upto(hi) if p > lo]


def lcm_upto(n: int) -> int:
    """D_n = lcm(1, ..., n), with D_0 = 1.

    Computed as prod_{p <= n} p^floor(log_p n), the prime-power form of
    the lcm.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = 1
    for p in primes_upto(n):
        pk = p
        while pk * p <= n:
            pk *= p
        result *= pk
    return result


def ord_prime(n: int, p: int) -> int:
    """Exponent of the prime p in the integer n != 0."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    if not is_prime(p):
        raise ValueError("p must be prime")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def ord_prime_rational(q: Rat, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    return ord_prime(q.numerator, p) - ord_prime(q.denominator, p)


def ord_prime_factorial(N: int, p: int) -> int:
    """Legendre's formula: ord_p N! = sum_{i>=1} floor(N/p^i).

    For p > sqrt(N) the sum collapses to the single term floor(N/p).
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if not is_prime(p):
        raise ValueError("p must be prime")
    total = 0
    pk = p
    while pk <= N:
        total += N // pk
        pk *= p
    return total


class IntPolynomial:
    """Immutable integer-coefficient polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-v for v in self.coeffs])

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self or not other:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def scale(self, k: int) -> "IntPolynomial":
        return IntPolynomial([k * v for v in self.coeffs])

    def divexact(self, other: "IntPolynomial") -> "IntPolynomial":
        """Exact polynomial division; raises if the division leaves a remainder."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        qdeg = len(rem) - 1 - d
        if qdeg < 0:
            if not self:
                return IntPolynomial([])
            raise ValueError("not exactly divisible")
        q = [0] * (qdeg + 1)
        for i in range(qdeg, -1, -1):
            c = rem[i + d]
            if c % lead != 0:
                raise ValueError("not exactly divisible")
            q[i] = c // lead
            if q[i]:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q[i] * b
        if any(rem):
            raise ValueError("not exactly divisible")
        return IntPolynomial(q)

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction, or any ring element."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


def _x_power_minus_one(n: int) -> IntPolynomial:
    c = [0] * (n + 1)
    c[0], c[n] = -1, 1
    return IntPolynomial(c)


def _divisors(n: int) -> list[int]:
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
    return sorted(out)


@lru_cache(maxsize=None)
def cyclotomic(l: int) -> IntPolynomial:
    """Cyclotomic polynomial Phi_l, by recursive exact division of x^l - 1.

    deg Phi_l = euler_phi(l), and prod_{d | n} Phi_d = x^n - 1.
    """
    if l < 1:
        raise ValueError("index must be positive")
    poly = _x_power_minus_one(l)
    for d in _divisors(l):
        if d < l:
            poly = poly.divexact(cyclotomic(d))
    return poly


def euler_phi(n: int) -> int:
    """Euler totient, by trial factorization (inputs here are small)."""
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def q_pochhammer_ord(n: int, l: int) -> int:
    """Phi_l(x)-adic order of the q-factorial (x; x)_n = prod_{k<=n}(1 - x^k).

    Each factor 1 - x^k is divisible by Phi_l exactly when l | k, and then
    exactly once, so the order is floor(n/l).
    """
    if n < 0 or l < 1:
        raise ValueError("need n >= 0 and l >= 1")
    return n // l


def q_factorial_poly(n: int) -> IntPolynomial:
    """(x; x)_n = prod_{k=1}^{n} (1 - x^k) as an integer polynomial."""
    poly = IntPolynomial([1])
    for k in range(1, n + 1):
        c = [0] * (k + 1)
        c[0], c[k] = 1, -1
        poly = poly * IntPolynomial(c)
    return poly


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> IntPolynomial:
    """Gaussian binomial [n choose k]_x as an integer polynomial.

    Built by the stepwise product prod_i (1 - x^{n-k+i})/(1 - x^i); every
    intermediate division is exact.  Evaluation at x = 1 gives binom(n, k).
    """
    if k < 0 or k > n:
        return IntPolynomial([])
    if k > n - k:
        k = n - k
    poly = IntPolynomial([1])
    for i in range(1, k + 1):
        m = n - k + i
        num = [0] * (m + 1)
        num[0], num[m] = 1, -1
        den = [0] * (i + 1)
        den[0], den[i] = 1, -1
        poly = (poly * IntPolynomial(num)).divexact(IntPolynomial(den))
    return poly


def q_binomial_at(n: int, k: int, x: Rat) -> Rat:
    """[n choose k]_x evaluated exactly at a rational x."""
    return q_binomial(n, k)(x)


def dn_poly_eval(n: int, p: int) -> int:
    """D_n(p) = prod_{l=1}^{n} Phi_l(p), the q-analogue of lcm(1..n) at x = p.

    D_n(x) is the least common multiple of x - 1, x^2 - 1, ..., x^n - 1;
    the product over cyclotomic indices realizes it exactly.
    """
    if abs(p) <= 1:
        raise ValueError("need |p| >= 2")
    result = 1
    for l in range(1, n + 1):
        result *= cyclotomic(l)(p)
    return abs(result)


def binomial(n: int, k: int) -> int:
    """binom(n, k) with the convention 0 for k < 0 or k > n, valid for n >= 0.

    For negative upper index uses the standard extension
    binom(n, k) = (-1)^k binom(k - n - 1, k) for k >= 0.
    """
    if k < 0:
        return 0
    if n >= 0:
        if k > n:
            return 0
        return math.comb(n, k)
    return (-1) ** k * math.comb(k - n - 1, k)


def pochhammer(a: Rat, n: int) -> Rat:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), exact; (a)_0 = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc: Rat = 1
    for i in range(n):
        acc = acc * (a + i)
    return acc


def falling(a: Rat, n: int) -> Rat:
    """Falling factorial a (a-1) ... (a-n+1), exact."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc: Rat = 1
    for i in range(n):
        acc = acc * (a - i)
    return acc


def denominator_divides(value: Fraction, modulus: int, p_slack: int | None = None) -> bool:
    """Whether value * modulus is an integer, optionally up to a power of p_slack.

    With p_slack set, the p_slack-part of the denominator is discarded
    before the check ("divides up to a power of p").
    """
    den = Fraction(value).denominator
    if p_slack is not None:
        while den % p_slack == 0:
            den //= p_slack
    return modulus % den == 0


def lcm(values: Sequence[int]) -> int:
    return math.lcm(*values) if values else 1
