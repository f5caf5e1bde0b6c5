"""Generalized hypergeometric series and classical summation oracles.

pFq evaluation with three routes: exact rational summation for terminating
series, direct summation with a geometric tail bound for |z| < 1, and
Levin-u acceleration for the slowly convergent z = 1 (and alternating
z = -1) boundary cases.  The classical summation and transformation
formulas (Pfaff-Saalschuetz, the nonterminating Dougall 5F4 and Whipple
6F5, and their terminating 5F4/7F6 companions) are provided as oracle
checks returning both sides.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import mpmath as mp

from .analysis_core import dps_for_tol, integrate_1d
from .number_core import pochhammer

Rat = Union[int, Fraction]


def _nonpositive_int(x: Rat) -> bool:
    x = Fraction(x)
    return x.denominator == 1 and x <= 0


def termination_index(upper: Sequence[Rat]) -> int | None:
    """Smallest N such that some upper parameter equals -N (series stops at N)."""
    stops = [-Fraction(a) for a in upper if _nonpositive_int(a)]
    if not stops:
        return None
    return int(min(stops))


def _validate(upper: Sequence[Rat], lower: Sequence[Rat]) -> int | None:
    N = termination_index(upper)
    for b in lower:
        if _nonpositive_int(b):
            if N is None or -Fraction(b) < N:
                raise ValueError("lower parameter truncates before the series terminates")
    return N


def pfq_exact(upper: Sequence[Rat], lower: Sequence[Rat], z: Rat) -> Fraction:
    """Terminating pFq summed exactly over rationals."""
    upper = [Fraction(a) for a in upper]
    lower = [Fraction(b) for b in lower]
    N = _validate(upper, lower)
    if N is None:
        raise ValueError("series does not terminate")
    z = Fraction(z)
    acc = Fraction(0)
    term = Fraction(1)
    for nu in range(N + 1):
        acc += term
        if nu == N:
            break
        num = Fraction(1)
        for a in upper:
            num *= a + nu
        den = Fraction(nu + 1)
        for b in lower:
            den *= b + nu
        if den == 0:
            raise ZeroDivisionError("lower parameter hit a nonpositive integer")
        term = term * num / den * z
    return acc


def pFq(upper: Sequence[Rat], lower: Sequence[Rat], z, tol: float = 1e-12) -> mp.mpf:
    """Generalized hypergeometric sum within tol.

    Terminating series are summed exactly and rounded once; |z| < 1 uses
    direct summation stopped by a geometric tail bound; z = 1 requires
    the classical convergence margin sum(lower) - sum(upper) > 0 and is
    evaluated with Levin-u acceleration, z = -1 with the alternating
    variant.
    """
    uppers = [Fraction(a) if isinstance(a, (int, Fraction)) else a for a in upper]
    lowers = [Fraction(b) if isinstance(b, (int, Fraction)) else b for b in lower]
    all_rat = all(isinstance(a, Fraction) for a in uppers + lowers)
    dps = dps_for_tol(tol) + 8
    if all_rat and isinstance(z, (int, Fraction)):
        N = _validate(uppers, lowers)
        if N is not None:
            v = pfq_exact(uppers, lowers, Fraction(z))
            with mp.workdps(dps):
                return mp.mpf(v.numerator) / v.denominator
    with mp.workdps(dps):
        zf = mp.mpf(z.numerator) / z.denominator if isinstance(z, Fraction) else mp.mpf(z)
        uf = [mp.mpf(a.numerator) / a.denominator if isinstance(a, Fraction) else mp.mpf(a) for a in uppers]
        lf = [mp.mpf(b.numerator) / b.denominator if isinstance(b, Fraction) else mp.mpf(b) for b in lowers]
        cache = [mp.mpf(1)]

        def term(n) -> mp.mpf:
            n = int(n)
            while len(cache) <= n:
                k = len(cache) - 1
                num = mp.mpf(1)
                for a in uf:
                    num *= a + k
                den = mp.mpf(k + 1)
                for b in lf:
                    den *= b + k
                cache.append(cache[-1] * num / den * zf)
            return cache[n]

        if abs(zf) < 1:
            acc = mp.mpf(0)
            n = 0
            start = int(max((abs(a) for a in uf + lf), default=0)) + 4
            while True:
                t = term(n)
                acc += t
                if n > start:
                    ratio = (1 + abs(zf)) / 2
                    tail = abs(t) * ratio / (1 - ratio)
                    if tail < tol / 4:
                        return acc
                n += 1
                if n > 10_000_000:
                    raise ArithmeticError("series did not meet tolerance")
        if zf == 1:
            margin = mp.fsum(lf) - mp.fsum(uf)
            if margin <= 0:
                raise ValueError("divergent at z = 1: nonpositive convergence margin")
            return mp.nsum(term, [0, mp.inf], method="l")
        if zf == -1:
            return mp.nsum(term, [0, mp.inf], method="a")
        raise ValueError("evaluation restricted to |z| <= 1")


def euler_integral_2f1(a: Rat, b: Rat, c: Rat, z, tol: float = 1e-12) -> mp.mpf:
    """2F1(a,b;c;z) by the Euler-Pochhammer integral, for Re c > Re b > 0.

    Gamma(c)/(Gamma(b)Gamma(c-b)) int_0^1 t^{b-1}(1-t)^{c-b-1}(1-zt)^{-a} dt,
    valid for z not in [1, inf).
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if not c > b > 0:
        raise ValueError("need c > b > 0")
    zf = mp.mpf(z.numerator) / z.denominator if isinstance(z, Fraction) else mp.mpf(z)
    if zf >= 1:
        raise ValueError("need z < 1 on the real line")
    dps = dps_for_tol(tol) + 8
    with mp.workdps(dps):
        af, bf, cf = (mp.mpf(x.numerator) / x.denominator for x in (a, b, c))
        prefactor = mp.gamma(cf) / (mp.gamma(bf) * mp.gamma(cf - bf))

        def f(t):
            return t ** (bf - 1) * (1 - t) ** (cf - bf - 1) * (1 - zf * t) ** (-af)

        return prefactor * integrate_1d(f, 0, 1, tol=tol / 2)


def gamma_quotient(numerators: Sequence[Rat], denominators: Sequence[Rat], tol: float = 1e-15) -> mp.mpf:
    """prod Gamma(n_i) / prod Gamma(d_j) for positive rational arguments."""
    with mp.workdps(dps_for_tol(tol) + 10):
        acc = mp.mpf(0)
        for x in numerators:
            x = Fraction(x)
            if x <= 0:
                raise ValueError("gamma argument must be positive")
            acc += mp.loggamma(mp.mpf(x.numerator) / x.denominator)
        for x in denominators:
            x = Fraction(x)
            if x <= 0:
                raise ValueError("gamma argument must be positive")
            acc -= mp.loggamma(mp.mpf(x.numerator) / x.denominator)
        return mp.exp(acc)


def pfaff_saalschutz(n: int, a: Rat, b: Rat, c: Rat) -> tuple[Fraction, Fraction]:
    """Both sides of the Saalschuetzian 3F2(1) summation, exactly.

    3F2(-n, a, b; c, 1+a+b-c-n; 1) = (c-a)_n (c-b)_n / ((c)_n (c-a-b)_n).
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    lhs = pfq_exact([-n, a, b], [c, 1 + a + b - c - n], 1)
    rhs = (
        Fraction(pochhammer(c - a, n))
        * pochhammer(c - b, n)
        / (pochhammer(c, n) * pochhammer(c - a - b, n))
    )
    return lhs, rhs


def dougall_5f4(a: Rat, b: Rat, c: Rat, d: Rat, tol: float = 1e-12) -> tuple[mp.mpf, mp.mpf]:
    """Both sides of the nonterminating very-well-poised 5F4(1) summation.

    5F4(a, 1+a/2, b, c, d; a/2, 1+a-b, 1+a-c, 1+a-d; 1)
      = G(1+a-b)G(1+a-c)G(1+a-d)G(1+a-b-c-d)
        / (G(1+a)G(1+a-b-c)G(1+a-b-d)G(1+a-c-d)),
    needing Re(1+a-b-c-d) > 0 for convergence.
    """
    a, b, c, d = (Fraction(x) for x in (a, b, c, d))
    if not 1 + a - b - c - d > 0:
        raise ValueError("convergence requires 1 + a - b - c - d > 0")
    ha = a / 2
    lhs = pFq([a, 1 + ha, b, c, d], [ha, 1 + a - b, 1 + a - c, 1 + a - d], 1, tol=tol)
    rhs = gamma_quotient(
        [1 + a - b, 1 + a - c, 1 + a - d, 1 + a - b - c - d],
        [1 + a, 1 + a - b - c, 1 + a - b - d, 1 + a - c - d],
        tol=tol,
    )
    return lhs, rhs


def whipple_6f5(a: Rat, b: Rat, c: Rat, d: Rat, e: Rat, tol: float = 1e-12) -> tuple[mp.mpf, mp.mpf]:
    """Both sides of the very-well-poised 6F5(-1) transformation.

    6F5(a, 1+a/2, b, c, d, e; a/2, 1+a-b, 1+a-c, 1+a-d, 1+a-e; -1)
      = G(1+a-d)G(1+a-e)/(G(1+a)G(1+a-d-e))
        * 3F2(1+a-b-c, d, e; 1+a-b, 1+a-c; 1).
    """
    a, b, c, d, e = (Fraction(x) for x in (a, b, c, d, e))
    if not 1 + a - d - e > 0:
        raise ValueError("right-hand 3F2 requires 1 + a - d - e > 0")
    ha = a / 2
    lhs = pFq(
        [a, 1 + ha, b, c, d, e],
        [ha, 1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e],
        -1,
        tol=tol,
    )
    rhs = gamma_quotient([1 + a - d, 1 + a - e], [1 + a, 1 + a - d - e], tol=tol) * pFq(
        [1 + a - b - c, d, e], [1 + a - b, 1 + a - c], 1, tol=tol
    )
    return lhs, rhs


def dougall_terminating_5f4(a: Rat, c: Rat, d: Rat, m: int) -> tuple[Fraction, Fraction]:
    """Both sides of the terminating very-well-poised 5F4(1) summation, exactly.

    5F4(a, 1+a/2, c, d, -m; a/2, 1+a-c, 1+a-d, 1+a+m; 1)
      = (1+a)_m (1+a-c-d)_m / ((1+a-c)_m (1+a-d)_m).
    """
    a, c, d = Fraction(a), Fraction(c), Fraction(d)
    ha = a / 2
    lhs = pfq_exact([a, 1 + ha, c, d, -m], [ha, 1 + a - c, 1 + a - d, 1 + a + m], 1)
    rhs = (
        Fraction(pochhammer(1 + a, m))
        * pochhammer(1 + a - c - d, m)
        / (pochhammer(1 + a - c, m) * pochhammer(1 + a - d, m))
    )
    return lhs, rhs


def whipple_7f6(a: Rat, b: Rat, c: Rat, d: Rat, e: Rat, m: int) -> tuple[Fraction, Fraction]:
    """Both sides of the terminating very-well-poised 7F6(1) transformation, exactly.

    7F6(a, 1+a/2, b, c, d, e, -m; a/2, 1+a-b, 1+a-c, 1+a-d, 1+a-e, 1+a+m; 1)
      = (1+a)_m (1+a-d-e)_m / ((1+a-d)_m (1+a-e)_m)
        * 4F3(1+a-b-c, d, e, -m; 1+a-b, 1+a-c, d+e-a-m; 1).
    """
    a, b, c, d, e = (Fraction(x) for x in (a, b, c, d, e))
    ha = a / 2
    lhs = pfq_exact(
        [a, 1 + ha, b, c, d, e, -m],
        [ha, 1 + a - b, 1 + a - c, 1 + a - d, 1 + a - e, 1 + a + m],
        1,
    )
    factor = (
        Fraction(pochhammer(1 + a, m))
        * pochhammer(1 + a - d - e, m)
        / (pochhammer(1 + a - d, m) * pochhammer(1 + a - e, m))
    )
    rhs = factor * pfq_exact(
        [1 + a - b - c, d, e, -m], [1 + a - b, 1 + a - c, d + e - a - m], 1
    )
    return lhs, rhs


@dataclass
class OracleReport:
    """Aggregate of randomized classical-identity checks."""

    exact_checked: int = 0
    exact_failures: int = 0
    numeric_checked: int = 0
    max_numeric_error: float = 0.0
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.exact_failures == 0 and self.max_numeric_error <= 1e-10


def _random_fraction(rng: random.Random, lo: int, hi: int, dens=(1, 2, 3, 5, 7)) -> Fraction:
    den = rng.choice(dens)
    num = rng.randint(lo * den, hi * den)
    return Fraction(num, den)


def classical_oracles(seed: int = 20240, exact_trials: int = 100, numeric_trials: int = 20, tol: float = 1e-12) -> OracleReport:
    """Randomized verification of the classical summation formulas.

    Exact (rational, terminating): Saalschuetzian 3F2, terminating 5F4 and
    the 7F6 -> 4F3 transformation.  Numeric: nonterminating 5F4(1) and
    6F5(-1), checked to 1e-10.
    """
    rng = random.Random(seed)
    report = OracleReport()

    def note_exact(name, lhs, rhs):
        report.exact_checked += 1
        if lhs != rhs:
            report.exact_failures += 1
            report.details.append(f"{name}: {lhs} != {rhs}")

    trials = 0
    while trials < exact_trials:
        n = rng.randint(0, 6)
        a = _random_fraction(rng, -3, 3)
        b = _random_fraction(rng, -3, 3)
        c = _random_fraction(rng, 1, 4, dens=(2, 3, 5, 7))
        try:
            lhs, rhs = pfaff_saalschutz(n, a, b, c)
        except (ZeroDivisionError, ValueError):
            continue
        note_exact("pfaff_saalschutz", lhs, rhs)
        trials += 1

    trials = 0
    while trials < exact_trials // 2:
        m = rng.randint(0, 5)
        a = _random_fraction(rng, 1, 5)
        c = _random_fraction(rng, -2, 2)
        d = _random_fraction(rng, -2, 2)
        try:
            lhs, rhs = dougall_terminating_5f4(a, c, d, m)
        except (ZeroDivisionError, ValueError):
            continue
        note_exact("dougall_terminating_5f4", lhs, rhs)
        trials += 1

    trials = 0
    while trials < exact_trials // 2:
        m = rng.randint(0, 4)
        a = _random_fraction(rng, 1, 5)
        b = _random_fraction(rng, -2, 2)
        c = _random_fraction(rng, -2, 2)
        d = _random_fraction(rng, -2, 2)
        e = _random_fraction(rng, -2, 2)
        try:
            lhs, rhs = whipple_7f6(a, b, c, d, e, m)
        except (ZeroDivisionError, ValueError):
            continue
        note_exact("whipple_7f6", lhs, rhs)
        trials += 1

    trials = 0
    while trials < numeric_trials:
        a = Fraction(rng.randint(2, 8), rng.choice((2, 3, 4)))
        b = Fraction(rng.randint(1, 4), rng.choice((3, 4, 5)))
        c = Fraction(rng.randint(1, 4), rng.choice((3, 4, 5)))
        d = Fraction(rng.randint(1, 4), rng.choice((3, 4, 5)))
        if not 1 + a - b - c - d >= Fraction(1, 4):
            continue
        lhs, rhs = dougall_5f4(a, b, c, d, tol=tol)
        report.numeric_checked += 1
        report.max_numeric_error = max(report.max_numeric_error, float(abs(lhs - rhs)))
        trials += 1

    trials = 0
    while trials < numeric_trials:
        a = Fraction(rng.randint(2, 8), rng.choice((2, 3, 4)))
        b = Fraction(rng.randint(1, 4), rng.choice((3, 4, 5)))
        c = Fraction(rng.randint(1, 4), rng.choice((3, 4, 5)))
        d = Fraction(rng.randint(1, 4), rng.choice((3, 4, 5)))
        e = Fraction(rng.randint(1, 4), rng.choice((3, 4, 5)))
        if not 1 + a - d - e >= Fraction(1, 4):
            continue
        lhs, rhs = whipple_6f5(a, b, c, d, e, tol=tol)
        report.numeric_checked += 1
        report.max_numeric_error = max(report.max_numeric_error, float(abs(lhs - rhs)))
        trials += 1

    return report
