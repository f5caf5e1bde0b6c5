"""L-values of the conductor-32 elliptic curve y**2 = x**3 - x.

The curve's L-series coefficients arise two independent ways: as the
q-expansion of the weight-2 eta quotient eta(4t)^2 eta(8t)^2 (exact
integer series via the pentagonal-number expansion of Dedekind's eta)
and as point counts a_p = p - N_p over F_p.  On top of that coefficient
layer, lvalue computes L(E,k) for k = 1, 2, 3 along three routes:

* integral: the closed evaluations of the period integrals; for k = 2 a
  single logarithmic integral, for k = 3 a triple integral whose inner
  double integral collapses to 3F2(1,1,1; 3/2,3/2; -x^2/(1-x^2)),
* hypergeometric: Q-linear combinations of the functions F_k(a) built
  from (k+1)F_k series at unit argument,
* dirichlet_oracle: accelerated partial sums of sum a_n/n^k, a coarse
  independent check (absolutely convergent for k >= 2 only).

Every lvalue call cross-checks its result against a cheap companion
route and refuses to return on disagreement.  lvalue_intermediate
exercises the intermediate representations: integrals of eta quotients
over (0, oo), evaluated by splitting at the fixed point of the
involution t -> 1/(32t) so every series argument stays in the
fast-convergence region.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

import mpmath as mp

from .analysis_core import dps_for_tol, gamma_value

Rat = Union[int, Fraction]

__all__ = [
    "QSeries",
    "ap_point_count",
    "curve_coefficients",
    "eta_expansion",
    "eta_quotient",
    "eta_value",
    "fk_function",
    "lvalue",
    "lvalue_intermediate",
]

_ROUTES = ("integral", "hypergeometric", "dirichlet_oracle")

# divisors 2^4, 2^5, 2^8 in F_k: the unique normalization under which
# L(E,1) = 2 F_1(5/4), L(E,2) = F_2(5/4) + F_2(3/4) and
# L(E,3) = F_3(5/4) + 2 F_3(3/4) + F_3(1/4) all hold
_FK_LOG2_DIVISOR = {1: 4, 2: 5, 3: 8}


@dataclass(frozen=True)
class QSeries:
    """Truncated q-series q^lead * sum_j coeffs[j] q^j with exact integers.

    The truncation order is len(coeffs): coefficients at offsets past it
    are unknown, and asking for one raises instead of returning 0.
    """

    lead: Fraction
    coeffs: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: "QSeries") -> "QSeries":
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        # iterate the sparser factor's nonzero entries over the other
        if sum(1 for c in a if c) > sum(1 for c in b if c):
            a, b = b, a
        out = [0] * n
        for i, ca in enumerate(a):
            if ca and i < n:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] += ca * b[j]
        return QSeries(self.lead + other.lead, tuple(out))

    def __truediv__(self, other: "QSeries") -> "QSeries":
        if other.order == 0 or other.coeffs[0] == 0:
            raise ValueError("division by a series with zero leading coefficient")
        n = min(self.order, other.order)
        lead_c = other.coeffs[0]
        out: List[int] = []
        for j in range(n):
            acc = self.coeffs[j] - sum(
                out[i] * other.coeffs[j - i] for i in range(max(0, j - other.order + 1), j)
            )
            q, r = divmod(acc, lead_c)
            if r:
                raise ArithmeticError("series division is not exact over the integers")
            out.append(q)
        return QSeries(self.lead - other.lead, tuple(out))

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise ValueError("negative powers go through division")
        result = QSeries(Fraction(0), (1,) + (0,) * (self.order - 1))
        base = self
        for _ in range(e):
            result = result * base
        return result

    def coefficient(self, power: Rat) -> int:
        """Exact coefficient of q^power; 0 off the support lattice."""
        offset = Fraction(power) - self.lead
        if offset.denominator != 1 or offset < 0:
            return 0
        j = int(offset)
        if j >= self.order:
            raise ValueError(f"q^{power} lies beyond the truncation order {self.order}")
        return self.coeffs[j]

    def eval_at(self, q: mp.mpf) -> mp.mpf:
        """Value of the truncated series at 0 <= q < 1."""
        poly = mp.mpf(0)
        for c in reversed(self.coeffs):
            poly = poly * q + c
        return q ** (mp.mpf(self.lead.numerator) / self.lead.denominator) * poly


def eta_expansion(multiplier: int, order: int) -> QSeries:
    """q-expansion of eta(multiplier * tau) via the pentagonal-number series."""
    if multiplier < 1 or order < 1:
        raise ValueError("eta_expansion needs multiplier >= 1 and order >= 1")
    coeffs = [0] * order
    n = 0
    while True:
        hit = False
        for m in (n, -n - 1):
            e = multiplier * m * (3 * m + 1) // 2
            if 0 <= e < order:
                coeffs[e] += (-1) ** (m % 2)
                hit = True
        if not hit:
            break
        n += 1
    return QSeries(Fraction(multiplier, 24), tuple(coeffs))


def eta_quotient(spec: Iterable[Tuple[int, int]], order: int) -> QSeries:
    """Product of eta(k tau)^e factors as one exact truncated q-series."""
    result = QSeries(Fraction(0), (1,) + (0,) * (order - 1))
    for multiplier, exponent in spec:
        factor = eta_expansion(multiplier, order)
        for _ in range(abs(exponent)):
            result = result * factor if exponent > 0 else result / factor
    return result


@lru_cache(maxsize=None)
def curve_coefficients(order: int) -> Tuple[int, ...]:
    """a_1..a_order of the curve's L-series, indexed so that [n] is a_n."""
    series = eta_quotient(((4, 2), (8, 2)), order)
    out = [0] * (order + 1)
    for n in range(1, order + 1):
        out[n] = series.coeffs[n - 1]
    return tuple(out)


def ap_point_count(p: int) -> int:
    """a_p = p - N_p by counting affine points of y^2 = x^3 - x over F_p."""
    if p == 2:
        raise ValueError("p = 2 is excluded (bad reduction; the Euler product starts past it)")
    if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, int(p**0.5) + 1, 2)):
        raise ValueError("ap_point_count needs an odd prime")
    count = 0
    for x in range(p):
        v = (x * x * x - x) % p
        if v == 0:
            count += 1
        elif pow(v, (p - 1) // 2, p) == 1:
            count += 2
    return p - count


def eta_value(t, tol: float = 1e-15) -> mp.mpf:
    """eta(i t) for real t > 0; arguments below 1 go through the involution.

    eta(i/t) = sqrt(t) eta(i t) maps every argument into the region where
    q = exp(-2 pi t) makes the pentagonal series converge in a few terms.
    """
    t = mp.mpf(t)
    if t <= 0:
        raise ValueError("eta_value needs t > 0")
    with mp.workdps(dps_for_tol(tol) + 10):
        if t < 1:
            return eta_value(1 / t, tol) / mp.sqrt(t)
        q = mp.e ** (-2 * mp.pi * t)
        total = mp.mpf(0)
        floor = mp.mpf(10) ** (-mp.mp.dps - 5)
        n = 0
        while True:
            term = (-1) ** (n % 2) * q ** (mp.mpf((6 * n + 1) ** 2) / 24)
            m = -n - 1
            term += (-1) ** (m % 2) * q ** (mp.mpf((6 * m + 1) ** 2) / 24)
            total += term
            if abs(term) < floor and n > 1:
                return +total
            n += 1


def fk_function(k: int, a: Rat, tol: float = 1e-10) -> mp.mpf:
    """F_k(a): a Gamma prefactor times (k+1)F_k(1..1,1/2; a+1/2,3/2..3/2; 1).

    The series converges only while a + k/2 > 3/2; outside that region the
    unit-argument sum diverges and the call is rejected.
    """
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    a = Fraction(a)
    if a <= 0 or a + Fraction(k, 2) <= Fraction(3, 2):
        raise ValueError("series at unit argument diverges for this a")
    return _fk_cached(k, a, tol)


@lru_cache(maxsize=None)
def _fk_cached(k: int, a: Fraction, tol: float) -> mp.mpf:
    # convergence at unit argument is slow (terms ~ n^{-a-k/2+1/2}), so the
    # accelerated evaluation is expensive; memoize per (k, a, tol)
    with mp.workdps(dps_for_tol(tol) + 10):
        av = mp.mpf(a.numerator) / a.denominator
        top = [mp.mpf(1)] * k + [mp.mpf(1) / 2]
        bottom = [av + mp.mpf(1) / 2] + [mp.mpf(3) / 2] * (k - 1)
        try:
            series = mp.hyper(top, bottom, 1)
        except mp.libmp.NoConvergence as exc:
            raise ArithmeticError("hypergeometric acceleration failed at unit argument") from exc
        prefactor = (
            mp.pi ** (k - mp.mpf(1) / 2)
            * mp.gamma(av)
            / (mp.mpf(2) ** _FK_LOG2_DIVISOR[k] * mp.gamma(av + mp.mpf(1) / 2))
        )
        return +(prefactor * series)


@lru_cache(maxsize=None)
def _l1_closed(tol: float) -> mp.mpf:
    with mp.workdps(dps_for_tol(tol) + 10):
        g = gamma_value(Fraction(1, 4), tol * 1e-3)
        return +(g**2 / (mp.sqrt(mp.pi) * 8 * mp.sqrt(2)))


@lru_cache(maxsize=None)
def _l2_integral(tol: float) -> mp.mpf:
    with mp.workdps(dps_for_tol(tol) + 10):

        def integrand(x: mp.mpf) -> mp.mpf:
            return x / mp.sqrt(1 - x**4) * mp.log((1 + x) / (1 - x))

        return +(mp.pi / 8 * mp.quad(integrand, [0, 1], maxdegree=7))


def _g3_negative(t: mp.mpf) -> mp.mpf:
    """3F2(1,1,1; 3/2,3/2; -t) for t >= 0: the inner double integral in closed form."""
    return mp.hyper([1, 1, 1], [mp.mpf(3) / 2, mp.mpf(3) / 2], -t)


@lru_cache(maxsize=None)
def _l3_integral(tol: float) -> mp.mpf:
    # x = sin(theta) removes the (1-x^2)^{-3/4} endpoint cancellation;
    # the inner y,w double integral equals G(-x^2/(1-x^2))/(1-x^2)
    with mp.workdps(dps_for_tol(tol) + 12):
        degree = 7 if tol >= 1e-6 else 8

        def integrand(theta: mp.mpf) -> mp.mpf:
            c = mp.cos(theta)
            if c <= 0:
                return mp.mpf(0)
            tn = mp.tan(theta)
            return (1 - c) ** 2 * c ** (mp.mpf(-5) / 2) * _g3_negative(tn * tn)

        return +(mp.pi**2 / 128 * mp.quad(integrand, [0, mp.pi / 2], maxdegree=degree))


@lru_cache(maxsize=None)
def _dirichlet_partial(k: int, terms: int = 4096) -> mp.mpf:
    """Averaged partial sums of sum a_n / n^k; coarse but route-independent."""
    a = curve_coefficients(terms)
    with mp.workdps(25):
        total = mp.mpf(0)
        checkpoints: List[mp.mpf] = []
        for n in range(1, terms + 1):
            if a[n]:
                total += mp.mpf(a[n]) / mp.mpf(n) ** k
            if n % 256 == 0:
                checkpoints.append(total)
        window = checkpoints[-12:]
        while len(window) > 1:
            window = [(window[i] + window[i + 1]) / 2 for i in range(len(window) - 1)]
        return +window[0]


def _hyper_combination(k: int, tol: float) -> mp.mpf:
    t = tol / 8
    if k == 1:
        return 2 * fk_function(1, Fraction(5, 4), t)
    if k == 2:
        return fk_function(2, Fraction(5, 4), t) + fk_function(2, Fraction(3, 4), t)
    return (
        fk_function(3, Fraction(5, 4), t)
        + 2 * fk_function(3, Fraction(3, 4), t)
        + fk_function(3, Fraction(1, 4), t)
    )


def lvalue(k: int, route: str = "integral", tol: float = 1e-8) -> mp.mpf:
    """L(E,k) for k in {1,2,3} along the requested route, cross-guarded.

    The result is compared against an independent companion route at the
    companion's own accuracy (the coarse Dirichlet oracle for k >= 2, the
    closed Gamma evaluation for k = 1); disagreement raises rather than
    returning a number.
    """
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    if route not in _ROUTES:
        raise ValueError(f"route must be one of {_ROUTES}")
    if not 0 < tol < 1:
        raise ValueError("tolerance must be in (0, 1)")

    if route == "dirichlet_oracle":
        if k == 1:
            raise ValueError("the Dirichlet series is absolutely convergent only for k >= 2")
        if tol < 1e-3:
            raise ValueError("the Dirichlet oracle is coarse; tolerances below 1e-3 are out of reach")
        value = _dirichlet_partial(k)
        guard = _l2_integral(1e-8) if k == 2 else _l3_integral(1e-6)
        window = 1.5e-3
    elif route == "hypergeometric":
        value = _hyper_combination(k, tol)
        guard = _l1_closed(1e-10) if k == 1 else _dirichlet_partial(k)
        window = 1e-9 if k == 1 else 1.5e-3
    else:
        value = _l1_closed(tol) if k == 1 else (_l2_integral(tol) if k == 2 else _l3_integral(tol))
        guard = _hyper_combination(k, 1e-10) if k == 1 else _dirichlet_partial(k)
        window = 1e-9 if k == 1 else 1.5e-3

    if abs(value - guard) > window + tol:
        raise ArithmeticError(
            f"route disagreement for L(E,{k}): {route} gave {value}, companion gave {guard}"
        )
    return value


def _eta_quotient_value(t: mp.mpf, spec: Sequence[Tuple[int, int]]) -> mp.mpf:
    out = mp.mpf(1)
    for multiplier, exponent in spec:
        out *= eta_value(multiplier * t, 10.0 ** (-mp.mp.dps)) ** exponent
    return out


@lru_cache(maxsize=None)
def _r_coefficients(jmax: int) -> Tuple[Fraction, ...]:
    # coefficients of sum_{m odd, n >= 1} chi(n) n^{-2} q^{mn}, chi mod 4
    c = [Fraction(0)] * jmax
    for n in range(1, jmax, 2):
        ch = 1 if n % 4 == 1 else -1
        for j in range(n, jmax, 2 * n):
            c[j] += Fraction(ch, n * n)
    return tuple(c)


def _r_value(v: mp.mpf, jmax: int) -> mp.mpf:
    q = mp.e ** (-2 * mp.pi * v)
    coeffs = _r_coefficients(jmax)
    floor = mp.mpf(10) ** (-mp.mp.dps - 5)
    total = mp.mpf(0)
    qj = mp.mpf(1)
    for j in range(1, jmax):
        qj *= q
        if coeffs[j]:
            total += qj * mp.mpf(coeffs[j].numerator) / coeffs[j].denominator
        if qj < floor:
            break
    return total


def lvalue_intermediate(k: int, tol: float = 1e-6) -> mp.mpf:
    """The intermediate eta-quotient integral representations of L(E,k).

    k = 2: two integrals over [1/sqrt(32), oo) obtained by splitting the
    original (0, oo) integral at the involution fixed point and rewriting
    the half below it through eta(i/t) = sqrt(t) eta(i t); the overall
    sign is fixed so the value is positive (the logarithmic factor is
    negative on the whole range).

    k = 3: the weight -1 Eisenstein-type factor has no involution rule,
    so its series is summed directly and the integral starts at a small
    cutoff whose discarded tail is far below the supported tolerance.
    """
    if k not in (2, 3):
        raise ValueError("intermediate representations exist for k = 2 and 3 only")
    if not 1e-8 <= tol < 1:
        raise ValueError("supported tolerance range is [1e-8, 1)")
    with mp.workdps(dps_for_tol(tol) + 10):
        split = 1 / mp.sqrt(32)
        if k == 2:
            upper_first = [(2, 4), (8, 4), (4, -4)]
            upper_log = [(8, 1), (32, 2), (16, -3)]
            lower_first = [(4, 4), (16, 4), (8, -4)]
            lower_log = [(1, 2), (4, 1), (2, -3)]

            def upper(u: mp.mpf) -> mp.mpf:
                return _eta_quotient_value(u, upper_first) * mp.log(
                    mp.sqrt(2) * _eta_quotient_value(u, upper_log)
                )

            def lower(v: mp.mpf) -> mp.mpf:
                return _eta_quotient_value(v, lower_first) * mp.log(
                    _eta_quotient_value(v, lower_log)
                )

            total = mp.quad(upper, [split, mp.inf]) + 2 * mp.quad(lower, [split, mp.inf])
            return +(-(mp.pi**2) * total)

        jmax = 4200
        quotient = [(4, 4), (16, 8), (8, -6)]

        def integrand(v: mp.mpf) -> mp.mpf:
            return _eta_quotient_value(v, quotient) * _r_value(v, jmax)

        cutoff = mp.mpf("0.004")
        return +(4 * mp.pi**3 * mp.quad(integrand, [cutoff, split, 3], maxdegree=7))
