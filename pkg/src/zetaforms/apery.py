"""Apery's rational approximations to zeta(3) and zeta(2).

Both sequences satisfy a three-term polynomial recursion run here in
exact rationals (the numerator sequences are not integers), with the
denominator sequences independently available as binomial sums.  The
linear forms u_n zeta(3) - v_n and u'_n zeta(2) - v'_n admit three
equivalent representations each: the recursion values themselves, a
hypergeometric-style series, and a multiple real integral over the unit
cube; linear_form_representations evaluates all of them and reports the
cross-route residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .analysis_core import dps_for_tol, integrate_1d, integrate_cube, zeta2_const, zeta3_const
from .number_core import binomial, lcm_upto

_WHICH = ("zeta3", "zeta2")


@dataclass(frozen=True)
class AperyPair:
    """One index of an approximation sequence: v/u approximates the target."""

    n: int
    u: int
    v: Fraction


def _check_which(which: str) -> None:
    if which not in _WHICH:
        raise ValueError(f"which must be one of {_WHICH}")


@lru_cache(maxsize=None)
def _pair_raw(n: int, which: str) -> tuple[Fraction, Fraction]:
    if n == 0:
        return (Fraction(1), Fraction(0))
    if n == 1:
        return (Fraction(5), Fraction(6)) if which == "zeta3" else (Fraction(3), Fraction(5))
    m = n - 1
    um, vm = _pair_raw(m, which)
    up, vp = _pair_raw(m - 1, which)
    if which == "zeta3":
        lead = Fraction((2 * m + 1) * (17 * m * m + 17 * m + 5))
        u = (lead * um - m**3 * up) / (m + 1) ** 3
        v = (lead * vm - m**3 * vp) / (m + 1) ** 3
    else:
        lead = Fraction(11 * m * m + 11 * m + 3)
        u = (lead * um + m**2 * up) / (m + 1) ** 2
        v = (lead * vm + m**2 * vp) / (m + 1) ** 2
    return (u, v)


def apery_zeta3(n: int) -> AperyPair:
    """Exact (u_n, v_n) with u_{n+1} driven by (2n+1)(17n^2+17n+5)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    u, v = _pair_raw(n, "zeta3")
    if u.denominator != 1:
        raise ArithmeticError(f"denominator sequence left the integers at n={n}")
    return AperyPair(n, int(u), v)


def apery_zeta2(n: int) -> AperyPair:
    """Exact (u'_n, v'_n) with u'_{n+1} driven by (11n^2+11n+3)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    u, v = _pair_raw(n, "zeta2")
    if u.denominator != 1:
        raise ArithmeticError(f"denominator sequence left the integers at n={n}")
    return AperyPair(n, int(u), v)


def u_closed_zeta3(n: int) -> int:
    """sum_k binom(n,k)^2 binom(n+k,k)^2."""
    return sum(binomial(n, k) ** 2 * binomial(n + k, k) ** 2 for k in range(n + 1))


def u_closed_zeta2(n: int) -> int:
    """sum_k binom(n,k)^2 binom(n+k,k)."""
    return sum(binomial(n, k) ** 2 * binomial(n + k, k) for k in range(n + 1))


def scaled_numerator(n: int, which: str = "zeta3"):
    """v_n cleared to an integer: D_n^3 v_n resp. D_n^2 v'_n."""
    _check_which(which)
    pair = apery_zeta3(n) if which == "zeta3" else apery_zeta2(n)
    power = 3 if which == "zeta3" else 2
    scaled = lcm_upto(n) ** power * pair.v
    if scaled.denominator != 1:
        raise ArithmeticError(f"scaled numerator not integral at n={n}")
    return int(scaled)


def linear_form_value(n: int, which: str = "zeta3", extra_bits: int = 64) -> mp.mpf:
    """u_n zeta - v_n evaluated with enough precision to survive cancellation.

    The product and the difference differ by a factor about the square of
    the recursion's dominant characteristic root, so the working precision
    scales with twice the bit length of u_n.
    """
    _check_which(which)
    pair = apery_zeta3(n) if which == "zeta3" else apery_zeta2(n)
    prec = 2 * max(pair.u.bit_length(), 1) + max(extra_bits, 32)
    with mp.workprec(prec):
        tol = mp.mpf(2) ** (-prec)
        zeta = zeta3_const(tol) if which == "zeta3" else zeta2_const(tol)
        return pair.u * zeta - mp.mpf(pair.v.numerator) / pair.v.denominator


def _nsum_tail(term, start: int, tol: float) -> mp.mpf:
    with mp.workdps(dps_for_tol(tol) + 10):
        return mp.nsum(term, [start, mp.inf], method="l")


def series_ball_zeta3(n: int, tol: float = 1e-12) -> mp.mpf:
    """n!^2 sum_nu (nu+n/2) prod(nu-j) prod(nu+n+j) / prod(nu+j)^4.

    Equals u_n zeta(3) - v_n; terms vanish for nu <= n.
    """
    fact2 = 1
    for j in range(1, n + 1):
        fact2 *= j
    fact2 *= fact2

    def term(nu) -> mp.mpf:
        nu = int(nu)
        t = Fraction(2 * nu + n, 2) * fact2
        for j in range(1, n + 1):
            t *= (nu - j) * (nu + n + j)
        for j in range(n + 1):
            t /= Fraction(nu + j) ** 4
        return mp.mpf(t.numerator) / t.denominator

    return _nsum_tail(term, n + 1, tol)


def series_gutnik_zeta3(n: int, tol: float = 1e-12) -> mp.mpf:
    """-(1/2) sum_nu d/dt (prod(t-j)/prod(t+j))^2 at t = nu.

    Equals u_n zeta(3) - v_n; the derivative is taken exactly through the
    logarithmic derivative, and terms with nu <= n vanish because the
    square vanishes to second order there.
    """

    def term(nu) -> mp.mpf:
        nu = int(nu)
        r = Fraction(1)
        for j in range(1, n + 1):
            r *= Fraction(nu - j, nu + j)
        r /= nu
        logd = sum(Fraction(1, nu - j) for j in range(1, n + 1)) - sum(
            Fraction(1, nu + j) for j in range(n + 1)
        )
        t = -r * r * logd
        return mp.mpf(t.numerator) / t.denominator

    return _nsum_tail(term, n + 1, tol)


def series_zeta2(n: int, tol: float = 1e-12) -> mp.mpf:
    """(-1)^n sum_nu n! prod(t-j) / prod(t+j)^2 at t = nu.

    Equals u'_n zeta(2) - v'_n; terms vanish for nu <= n.
    """
    fact = 1
    for j in range(1, n + 1):
        fact *= j
    sign = -1 if n % 2 else 1

    def term(nu) -> mp.mpf:
        nu = int(nu)
        t = Fraction(sign * fact)
        for j in range(1, n + 1):
            t *= nu - j
        for j in range(n + 1):
            t /= Fraction(nu + j) ** 2
        return mp.mpf(t.numerator) / t.denominator

    return _nsum_tail(term, n + 1, tol)


def euler_kernel(n: int, eps: mp.mpf) -> mp.mpf:
    """int_0^1 t^n (1-t)^n (1 - (1-eps) t)^{-(n+1)} dt, stable as eps -> 0.

    Equals B(n+1,n+1) 2F1(n+1,n+1;2n+2;1-eps); the hypergeometric argument
    sits at the logarithmic singularity, so for small eps the standard
    connection series sum_k binom(n+k,n)^2 eps^k (h_k - log eps) is used,
    with h_k = 2(psi(k+1) - psi(n+k+1)) accumulated as harmonic sums.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if eps > mp.mpf(1) / 2:
        return mp.beta(n + 1, n + 1) * mp.hyp2f1(n + 1, n + 1, 2 * n + 2, 1 - eps)
    neg_log = -mp.log(eps)
    c = mp.mpf(1)
    h = mp.mpf(0)
    for j in range(1, n + 1):
        h -= mp.mpf(2) / j
    acc = mp.mpf(0)
    epspow = mp.mpf(1)
    k = 0
    while True:
        term = c * epspow * (h + neg_log)
        acc += term
        if k > 4 and abs(term) < abs(acc) * mp.eps:
            return acc
        c *= (mp.mpf(n + 1 + k) / (k + 1)) ** 2
        h += mp.mpf(2) / (k + 1) - mp.mpf(2) / (n + k + 1)
        epspow *= eps
        k += 1
        if k > 100_000:
            raise ArithmeticError("connection series failed to converge")


def integral_zeta2(n: int, tol: float = 1e-10) -> mp.mpf:
    """(-1)^n double integral of (x(1-x)y(1-y))^n / (1-xy)^{n+1} over the square.

    The inner axis is removed exactly by the Euler integral, leaving a
    one-dimensional integrand with at worst a logarithmic endpoint.
    """
    sign = -1 if n % 2 else 1

    def f(x):
        return x**n * (1 - x) ** n * euler_kernel(n, 1 - x)

    return sign * integrate_1d(f, 0, 1, tol=tol)


def integral_zeta3(n: int, tol: float = 1e-8) -> mp.mpf:
    """Half the triple integral of (x(1-x)y(1-y)z(1-z))^n / (1-(1-xy)z)^{n+1}.

    The raw triple integral equals twice the linear form u_n zeta(3) - v_n
    (checked symbolically at n = 0, where it sums to 2 zeta(3)).  The z
    axis is removed exactly by the Euler integral; the remaining double
    integral has logarithmic edges at x = 0 and y = 0.
    """

    def f(x, y):
        return (x * (1 - x) * y * (1 - y)) ** n * euler_kernel(n, x * y)

    return integrate_cube(f, 2, tol=tol) / 2


def integral_zeta2_direct(n: int, tol: float = 1e-8) -> mp.mpf:
    """The same double integral by raw two-dimensional cubature."""
    sign = -1 if n % 2 else 1

    def f(x, y):
        return sign * (x * (1 - x) * y * (1 - y)) ** n / (1 - x * y) ** (n + 1)

    return integrate_cube(f, 2, tol=tol)


def integral_zeta3_direct(n: int, tol: float = 1e-6) -> mp.mpf:
    """The same triple integral by raw three-dimensional cubature (slow)."""

    def f(x, y, z):
        return (x * (1 - x) * y * (1 - y) * z * (1 - z)) ** n / (
            1 - (1 - x * y) * z
        ) ** (n + 1)

    return integrate_cube(f, 3, tol=tol)


def linear_form_representations(n: int, which: str = "zeta3", tol: float = 1e-7) -> dict:
    """Evaluate u_n zeta - v_n by every route and report the residuals.

    Routes: exact recursion seeded with the zeta constant, the series
    representations, and the multiple integral (with one axis removed
    exactly).  Desk scale: n <= 5.
    """
    _check_which(which)
    if n > 5:
        raise ValueError("representations are desk-scale only (n <= 5)")
    value = linear_form_value(n, which)
    series_tol = tol / 10
    if which == "zeta3":
        series = {
            "ball": series_ball_zeta3(n, tol=series_tol),
            "derivative": series_gutnik_zeta3(n, tol=series_tol),
        }
        integral = integral_zeta3(n, tol=tol / 4)
    else:
        series = {"hypergeometric": series_zeta2(n, tol=series_tol)}
        integral = integral_zeta2(n, tol=tol / 4)
    residuals = {f"series_{k}": float(abs(s - value)) for k, s in series.items()}
    residuals["integral"] = float(abs(integral - value))
    return {
        "n": n,
        "which": which,
        "value": value,
        "series": series,
        "integral": integral,
        "residuals": residuals,
        "ok": all(r <= tol for r in residuals.values()),
    }
