"""Pade pairs for shifted binomial series and fractional-power bounds.

For integers a >= 1, b >= 2a the tail series

    F(z) = sum_{v >= 0} binom(a+b+v, b) z^v

carries the fractional parts of pure powers: suitable multiples of
F(a, b; z) at z = 1/9, -1/8, -3/125 are congruent mod 1 to (3/2)^k,
(4/3)^k and (5/4)^k.  This module builds the integer Pade-style pairs
(Q_n, P_n) with Q_n F - P_n vanishing to order 2n, the common prime
content Phi of their coefficients (a periodic floor-sum minimum per
prime, matching a two-variable carry profile phi), and the saddle-point
certificate whose three rate constants C0, C1, C2 turn the pairs into
explicit lower bounds: the distance from (3/2)^k to the nearest integer
exceeds 0.5803^k for all large k, and likewise 0.4914^k for (4/3)^k and
0.5152^k for (5/4)^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Tuple, Union

import mpmath as mp

from .analysis_core import StepFunction, dps_for_tol, step_integral
from .number_core import IntPolynomial, binomial, primes_upto
from .zeta2_measure import build_profile

Rat = Union[int, Fraction]
Direction = Tuple[int, int, int]

__all__ = [
    "PadePair",
    "PowCertificate",
    "TARGETS",
    "TargetSpec",
    "binomial_series_value",
    "certificate_pow",
    "determinant_identity",
    "lambda_indicator",
    "pade_pair",
    "phi_exponents",
    "phi_pointwise",
    "phi_prime_pointwise",
    "phi_profile",
    "power_distance",
    "remainder_value",
]


def _check_params(a: int, b: int, n: int) -> None:
    if not all(isinstance(v, int) for v in (a, b, n)):
        raise ValueError("parameters must be integers")
    if a < 1 or b < 2 * a:
        raise ValueError("need 1 <= a and 2a <= b")
    if n < 0 or n > b:
        # (b-n)! appears in every closed form; past n = b the pair degenerates
        raise ValueError("need 0 <= n <= b")


def _q_coefficients(a: int, b: int, n: int) -> List[int]:
    return [
        (-1) ** (mu % 2) * binomial(a + n - 1 + mu, mu) * binomial(a + b + n, n - mu)
        for mu in range(n + 1)
    ]


def _series_remainder_coeff(q: List[int], a: int, b: int, n: int, l: int) -> int:
    # coefficient of z^l in Q_n(1/z) F(z) beyond the polynomial part
    return sum(q[n - mu] * binomial(a + b + l - mu, b) for mu in range(min(l, n) + 1))


@dataclass(frozen=True)
class PadePair:
    """Integer pair (Q, P) with Q(1/z) F(z) - P(1/z) of order z^{2n}."""

    a: int
    b: int
    n: int
    Q: IntPolynomial
    P: IntPolynomial


def pade_pair(a: int, b: int, n: int) -> PadePair:
    """Degree-n integer pair approximating the shifted binomial series.

    Q has the closed binomial coefficients; P collects the principal
    part of Q(1/z) F(z).  The construction is verified on the spot: the
    product coefficients vanish for n <= l < 2n and match the closed
    two-binomial form at the first few l >= 2n.
    """
    _check_params(a, b, n)
    q = _q_coefficients(a, b, n)
    p = [0] * (n + 1)
    for l in range(n):
        p[n - l] = _series_remainder_coeff(q, a, b, n, l)
    for l in range(n, 2 * n):
        if _series_remainder_coeff(q, a, b, n, l) != 0:
            raise ArithmeticError(f"order defect at z^{l} for {(a, b, n)}")
    for l in range(2 * n, 2 * n + 3):
        closed = binomial(a + b + l - n, a + l) * binomial(l - n, n)
        if _series_remainder_coeff(q, a, b, n, l) != closed:
            raise ArithmeticError(f"remainder coefficient mismatch at z^{l} for {(a, b, n)}")
    return PadePair(a, b, n, IntPolynomial(q), IntPolynomial(p))


def determinant_identity(a: int, b: int, n: int) -> bool:
    """Check Q_{n+1} P_n - Q_n P_{n+1} = (-1)^n binom(a+2n+1, a+n) binom(a+b+n, b-n) x."""
    _check_params(a, b, n)
    if n + 1 > b:
        raise ValueError("need n + 1 <= b for the consecutive pair")
    lo = pade_pair(a, b, n)
    hi = pade_pair(a, b, n + 1)
    sgn = -1 if n % 2 else 1
    expected = IntPolynomial(
        [0, sgn * binomial(a + 2 * n + 1, a + n) * binomial(a + b + n, b - n)]
    )
    return hi.Q * lo.P - lo.Q * hi.P == expected


def binomial_series_value(a: int, b: int, z: Rat, tol: float = 1e-15) -> mp.mpf:
    """Numeric value of F(z) = sum binom(a+b+v, b) z^v, |z| < 1."""
    z = Fraction(z)
    if abs(z) >= 1:
        raise ValueError("series requires |z| < 1")
    head = binomial(a + b, b)
    dps = dps_for_tol(tol) + len(str(head)) + 10
    with mp.workdps(dps):
        zz = mp.mpf(z.numerator) / z.denominator
        goal = mp.mpf(10) ** (-dps + 5)
        acc, term, v = mp.mpf(0), mp.mpf(head), 0
        while True:
            acc += term
            if abs(term) < goal * (1 + abs(acc)):
                return +acc
            term *= zz * (a + b + 1 + v) / (a + 1 + v)
            v += 1


def remainder_value(a: int, b: int, n: int, z: Rat, tol: float = 1e-12) -> mp.mpf:
    """Numeric value of R_n(z) = Q_n(1/z) F(z) - P_n(1/z).

    Evaluated as the hypergeometric tail series starting at z^n and
    cross-checked against the beta-kernel integral representation;
    disagreement beyond tol raises.
    """
    _check_params(a, b, n)
    z = Fraction(z)
    if abs(z) >= 1:
        raise ValueError("remainder series requires |z| < 1")
    head = binomial(a + b + n, b - n)
    pref_digits = int(
        (math.lgamma(a + b + n + 1) - math.lgamma(b - n + 1) - math.lgamma(n + 1))
        / math.log(10)
    )
    dps = dps_for_tol(tol) + pref_digits + 15
    with mp.workdps(dps):
        zz = mp.mpf(z.numerator) / z.denominator
        goal = mp.mpf(10) ** (-dps + 5)
        acc, term, v = mp.mpf(0), mp.mpf(1), 0
        while True:
            acc += term
            if abs(term) < goal * (1 + abs(acc)):
                break
            term *= zz * (a + b + n + 1 + v) * (n + 1 + v) / ((a + 2 * n + 1 + v) * (v + 1))
            v += 1
        series = head * zz**n * acc
        pref = mp.mpf(math.factorial(a + b + n)) / (
            math.factorial(a + n - 1) * math.factorial(n) * math.factorial(b - n)
        )
        integral = (
            pref
            * zz**n
            * mp.quad(
                lambda t: t**n * (1 - t) ** (a + n - 1) * (1 - zz * t) ** (-(a + b + n + 1)),
                [0, 1],
            )
        )
        if abs(series - integral) > tol * (1 + abs(series)):
            raise ArithmeticError(
                f"series/integral disagreement for remainder {(a, b, n, z)}"
            )
        return +series


def _floor_exponent(a: int, b: int, n: int, p: int) -> int:
    # minimum over one period; the summand is invariant under mu -> mu + p
    return min(
        (-(a + n)) // p - (-(a + n + mu)) // p - mu // p
        + (a + b + n) // p - (a + b + mu) // p - (n - mu) // p
        for mu in range(p)
    )


def _floor_exponent_prime(a: int, b: int, n: int, p: int) -> int:
    return min(
        (a + n + mu) // p - (a + n) // p - mu // p
        + (a + b + n) // p - (a + b + mu) // p - (n - mu) // p
        for mu in range(p)
    )


def phi_exponents(a: int, b: int, n: int) -> Dict[str, object]:
    """Shared prime content of the pair coefficients beyond sqrt(a+b+n).

    For each prime sqrt(a+b+n) < p <= a+b+n the exponent e_p (and the
    shifted variant e'_p) is an exact minimum of a floor sum over one
    period 0 <= mu < p.  Phi = prod p^{e_p} divides every coefficient of
    Q_n and P_n; (n+1)/Phi' times the shifted coefficients stays
    integral.  Both inclusions are verified before returning.
    """
    _check_params(a, b, n)
    cap = a + b + n
    floor_limit = math.isqrt(cap)
    primes = tuple(p for p in primes_upto(cap) if p > floor_limit)
    e: Dict[int, int] = {}
    e_prime: Dict[int, int] = {}
    phi = 1
    phi_prime = 1
    for p in primes:
        ep = _floor_exponent(a, b, n, p)
        epp = _floor_exponent_prime(a, b, n, p)
        if ep < 0 or epp < 0:
            raise ArithmeticError(f"negative exponent at p = {p} for {(a, b, n)}")
        e[p] = ep
        e_prime[p] = epp
        phi *= p**ep
        phi_prime *= p**epp
    for mu in range(n + 1):
        if (binomial(a + n - 1 + mu, mu) * binomial(a + b + n, n - mu)) % phi:
            raise ArithmeticError(f"Phi fails to divide coefficient mu = {mu}")
    for mu in range(n + 2):
        scaled = (n + 1) * binomial(a + n + mu, mu) * binomial(a + b + n + 1, n + 1 - mu)
        if scaled % phi_prime:
            raise ArithmeticError(f"Phi' fails the shifted coefficient mu = {mu}")
    return {"primes": primes, "e": e, "e_prime": e_prime, "phi": phi, "phi_prime": phi_prime}


def lambda_indicator(x: Rat) -> int:
    """Indicator of x being an integer, computed by both closed forms.

    1 - {x} - {-x} and 1 + floor(x) + floor(-x) are checked against each
    other on every call.
    """
    x = Fraction(x)
    fractional = 1 - (x - math.floor(x)) - (-x - math.floor(-x))
    floored = 1 + math.floor(x) + math.floor(-x)
    if fractional != floored:
        raise ArithmeticError(f"integer-indicator forms disagree at {x}")
    return floored


def _frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def _phi_hat(x: Fraction, y: Fraction, d: Direction) -> int:
    al, be, ga = d
    return int(
        -_frac(-(al + ga) * x) + _frac(-(al + ga) * x - y) + _frac(y)
        - _frac((al + be + ga) * x) + _frac((al + be) * x + y) + _frac(ga * x - y)
    )


def _phi_hat_prime(x: Fraction, y: Fraction, d: Direction) -> int:
    al, be, ga = d
    return int(
        -_frac((al + ga) * x + y) + _frac((al + ga) * x) + _frac(y)
        - _frac((al + be + ga) * x) + _frac((al + be) * x + y) + _frac(ga * x - y)
    )


def _y_probes(x: Fraction, d: Direction) -> set:
    # jump locations in y, plus a midpoint inside every gap between them
    al, be, ga = d
    cands = sorted({_frac(c * x) for c in (0, -(al + ga), -(al + be), ga)})
    probes = set(cands)
    for i, lo in enumerate(cands):
        hi = cands[i + 1] if i + 1 < len(cands) else cands[0] + 1
        probes.add(_frac(Fraction(lo + hi, 2)))
    return probes


def phi_pointwise(x: Rat, direction: Direction) -> int:
    """Carry profile min_y phi-hat(x, y) for one parameter direction."""
    x = Fraction(x)
    return min(_phi_hat(x, y, direction) for y in _y_probes(x, direction))


def phi_prime_pointwise(x: Rat, direction: Direction) -> int:
    """Shifted carry profile min_y phi-hat'(x, y); equals phi off a finite set."""
    x = Fraction(x)
    return min(_phi_hat_prime(x, y, direction) for y in _y_probes(x, direction))


@lru_cache(maxsize=None)
def phi_profile(direction: Direction, max_den: int = 74) -> StepFunction:
    """Step function of the carry profile; breakpoints have denominator <= 2 beta."""
    return build_profile(lambda x: phi_pointwise(x, direction), max_den=max_den)


@dataclass(frozen=True)
class TargetSpec:
    """Fixed data of one fractional-power target.

    alpha, beta, gamma scale the representation parameters (a, b, n);
    pade_beta scales the second series parameter actually handed to the
    pair (doubled for 5/4); clearing is the denominator of 1/z paid for
    by gamma extra prime powers; multiplier lists (coefficient, prime)
    pairs of the representation's own power factors; divisor converts
    per-step rates into per-k rates.
    """

    alpha: int
    beta: int
    gamma: int
    pade_beta: int
    z: Fraction
    divisor: int
    multiplier: Tuple[Tuple[int, int], ...]

    @property
    def clearing(self) -> int:
        return (1 / self.z).denominator


TARGETS: Mapping[str, TargetSpec] = {
    "3/2": TargetSpec(9, 19, 9, 19, Fraction(1, 9), 57, ((1, 3),)),
    "4/3": TargetSpec(5, 15, 6, 15, Fraction(-1, 8), 30, ((0, 2),)),
    "5/4": TargetSpec(3, 9, 7, 18, Fraction(-3, 125), 63, ((3, 3), (0, 5))),
}


@dataclass(frozen=True)
class PowCertificate:
    """Asymptotic certificate for one target.

    condition = C0 + gamma log(clearing) + multiplier logs - C2 must be
    negative (the scaled remainders tend to 0); the distance bound then
    holds with base = exp(-(C1 + gamma log(clearing) - C2 + delta)/divisor),
    truncated to four decimals, for every sufficiently large k.
    """

    target: str
    alpha: int
    beta: int
    gamma: int
    pade_beta: int
    z: Fraction
    c0: mp.mpf
    c1: mp.mpf
    c2: mp.mpf
    condition: mp.mpf
    divisor: int
    raw_base: mp.mpf
    base: Fraction
    delta: mp.mpf
    conclusion: str


def _critical_maximum(
    quad: Tuple[Fraction, Fraction, Fraction], value, singular: Tuple[Fraction, ...]
) -> mp.mpf:
    """Maximum of a log-linear combination over (0,1) via its critical points.

    quad holds the exact quadratic (c2, c1, c0) that the derivative's
    numerator reduces to; the boundary values are -inf, so the maximum
    sits at an interior root.
    """
    c2_, c1_, c0_ = quad
    if c2_ == 0:
        raise ArithmeticError("critical-point equation degenerated")
    disc = c1_ * c1_ - 4 * c2_ * c0_
    if disc < 0:
        raise ArithmeticError("no real critical point in (0,1)")
    sq = mp.sqrt(mp.mpf(disc.numerator) / disc.denominator)
    mid = -mp.mpf(c1_.numerator) / c1_.denominator
    den = 2 * mp.mpf(c2_.numerator) / c2_.denominator
    best = None
    for t in ((mid + sq) / den, (mid - sq) / den):
        if not 0 < t < 1:
            continue
        if any(abs(t - mp.mpf(s.numerator) / s.denominator) == 0 for s in singular):
            continue
        v = value(t)
        best = v if best is None else max(best, v)
    if best is None:
        raise ArithmeticError("no real critical point in (0,1)")
    return best


def _rate_constants(direction: Direction, z: Fraction, dps: int) -> Tuple[mp.mpf, mp.mpf]:
    """Saddle-point rates: C0 for the remainder, C1 for the pair itself."""
    al, be, ga = direction
    with mp.workdps(dps):
        s = al + be + ga
        base = (
            s * mp.log(s)
            - (al + ga) * mp.log(al + ga)
            - ga * mp.log(ga)
            - (be - ga) * mp.log(be - ga)
        )
        zz = mp.mpf(z.numerator) / z.denominator
        # d/dt [ga log t + (al+ga) log(1-t) - s log(1-zt)] = 0, cleared of poles
        quad0 = (
            ga * z + (al + ga) * z - s * z,
            -ga * (1 + z) - Fraction(al + ga) + s * z,
            Fraction(ga),
        )
        f0 = lambda t: (
            ga * mp.log(t) + (al + ga) * mp.log(1 - t) - s * mp.log(abs(1 - zz * t))
        )
        c0 = base + ga * mp.log(abs(zz)) + _critical_maximum(quad0, f0, ())
        w = 1 / z
        ww = mp.mpf(w.numerator) / w.denominator
        # d/dt [(al+ga) log t + (be-ga) log(1-t) + ga log|1 - t/z|] = 0
        quad1 = (
            (al + ga) * w + (be - ga) * w + ga * w,
            -(al + ga) * (1 + w) - Fraction(be - ga) - ga * w,
            Fraction(al + ga),
        )
        f1 = lambda t: (
            (al + ga) * mp.log(t) + (be - ga) * mp.log(1 - t) + ga * mp.log(abs(1 - ww * t))
        )
        singular = (z,) if 0 < z < 1 else ()
        c1 = base + _critical_maximum(quad1, f1, singular)
        return +c0, +c1


def certificate_pow(target: str, tol: float = 1e-12) -> PowCertificate:
    """Distance-to-integer certificate for (3/2)^k, (4/3)^k or (5/4)^k.

    Computes the three rates for the target's direction, checks that the
    scaled remainders decay (condition < 0), and truncates the resulting
    per-k base to four decimals, keeping the slack delta > 0 explicit.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {sorted(TARGETS)}")
    spec = TARGETS[target]
    direction = (spec.alpha, spec.pade_beta, spec.gamma)
    dps = dps_for_tol(tol) + 10
    c0, c1 = _rate_constants(direction, spec.z, dps)
    c2 = step_integral(phi_profile(direction), "dpsi", tol=tol)
    with mp.workdps(dps):
        clear_log = spec.gamma * mp.log(spec.clearing)
        mult_log = mp.fsum(coef * mp.log(prime) for coef, prime in spec.multiplier)
        condition = c0 + clear_log + mult_log - c2
        if condition >= 0:
            raise ArithmeticError(f"decay condition fails for target {target}")
        rate = (c1 + clear_log - c2) / spec.divisor
        raw_base = mp.e ** (-rate)
        base = Fraction(int(raw_base * 10000), 10000)
        delta = -spec.divisor * mp.log(mp.mpf(base.numerator) / base.denominator) - (
            c1 + clear_log - c2
        )
        if delta <= 0:
            raise ArithmeticError(f"truncated base is not strictly below the rate for {target}")
        conclusion = (
            f"||({target})^k|| > {float(base):.4f}^k for all sufficiently large k"
        )
        return PowCertificate(
            target=target,
            alpha=spec.alpha,
            beta=spec.beta,
            gamma=spec.gamma,
            pade_beta=spec.pade_beta,
            z=spec.z,
            c0=+c0,
            c1=+c1,
            c2=+c2,
            condition=+condition,
            divisor=spec.divisor,
            raw_base=+raw_base,
            base=base,
            delta=+delta,
            conclusion=conclusion,
        )


def power_distance(x: Rat, k: int) -> Fraction:
    """Exact distance from x^k to the nearest integer."""
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    xk = Fraction(x) ** k
    nearest = math.floor(xk + Fraction(1, 2))
    return abs(xk - nearest)
