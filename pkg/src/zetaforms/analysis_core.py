"""Arbitrary-precision real and complex numerics.

Gamma/digamma/trigamma wrappers, independent Euler-Maclaurin zeta constants,
complex polynomial roots with residual bounds, tanh-sinh quadrature in one
to three dimensions, and 1-periodic integer step functions on [0,1)
integrated against the measures d(psi), d(-psi') and dx/x^2 (with cutoff).

All heavy numerics are delegated to mpmath under explicit working
precision; every public operation takes a tolerance and works at enough
digits (doubling where truncation error is not a priori bounded) so the
returned value is within that tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

import mpmath as mp

Rat = Union[int, Fraction]


def dps_for_tol(tol) -> int:
    """Working decimal digits comfortably beyond a requested tolerance.

    Accepts float or mpf; tolerances below float range are handled via the
    binary exponent rather than log10.
    """
    if not 0 < tol < 1:
        raise ValueError("tolerance must be in (0, 1)")
    t = float(tol)
    if t > 0:
        return max(20, int(-math.log10(t)) + 10)
    digits = -mp.mag(mp.mpf(tol)) * 0.30103
    return max(20, int(digits) + 10)


def _to_mpf(x) -> mp.mpf:
    """Exact conversion of int/Fraction at current precision."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def digamma(x: Rat, tol: float = 1e-15) -> mp.mpf:
    """psi(x) for rational x > 0, within tol."""
    if x <= 0:
        raise ValueError("digamma requires x > 0")
    with mp.workdps(dps_for_tol(tol) + 5):
        return mp.digamma(_to_mpf(x))


def trigamma(x: Rat, tol: float = 1e-15) -> mp.mpf:
    """psi'(x) for rational x > 0, within tol."""
    if x <= 0:
        raise ValueError("trigamma requires x > 0")
    with mp.workdps(dps_for_tol(tol) + 5):
        return mp.psi(1, _to_mpf(x))


def gamma_value(x: Rat, tol: float = 1e-15) -> mp.mpf:
    """Gamma(x) for rational x > 0, within tol."""
    if x <= 0:
        raise ValueError("gamma_value requires x > 0")
    with mp.workdps(dps_for_tol(tol) + 5):
        return mp.gamma(_to_mpf(x))


def zeta_em(s: int, tol: float = 1e-30) -> mp.mpf:
    """zeta(s) for integer s >= 2 by Euler-Maclaurin summation.

    Independent of mpmath's own zeta: direct sum to N plus the standard
    tail N^{1-s}/(s-1) + N^{-s}/2 + sum_k B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1},
    truncated when the term drops below the target (the error is bounded
    by the first omitted term).
    """
    if s < 2:
        raise ValueError("need s >= 2")
    dps = dps_for_tol(tol) + 10
    with mp.workdps(dps):
        N = max(2 * dps // 3, 10)
        acc = mp.fsum(mp.mpf(1) / mp.mpf(n) ** s for n in range(1, N))
        Nf = mp.mpf(N)
        acc += Nf ** (1 - s) / (s - 1) + Nf ** (-s) / 2
        rising = mp.mpf(s)
        k = 1
        while True:
            term = mp.bernoulli(2 * k) / mp.factorial(2 * k) * rising * Nf ** (-s - 2 * k + 1)
            acc += term
            if abs(term) < mp.mpf(10) ** (-dps):
                break
            rising *= (s + 2 * k - 1) * (s + 2 * k)
            k += 1
            if k > dps:
                break
        return acc


def zeta2_const(tol: float = 1e-30) -> mp.mpf:
    return zeta_em(2, tol)


def zeta3_const(tol: float = 1e-30) -> mp.mpf:
    return zeta_em(3, tol)


class StepFunction:
    """1-periodic piecewise-constant function on [0, 1) with rational breakpoints.

    breakpoints[0] must be 0; the function equals levels[i] on
    [breakpoints[i], breakpoints[i+1]) and levels[-1] on [breakpoints[-1], 1).
    """

    __slots__ = ("breakpoints", "levels")

    def __init__(self, breakpoints: Iterable[Rat], levels: Iterable[int]):
        bps = tuple(Fraction(b) for b in breakpoints)
        lvs = tuple(int(v) for v in levels)
        if len(bps) != len(lvs) or not bps:
            raise ValueError("need equally many breakpoints and levels, at least one")
        if bps[0] != 0:
            raise ValueError("first breakpoint must be 0")
        if any(not 0 <= b < 1 for b in bps):
            raise ValueError("breakpoints must lie in [0, 1)")
        if any(b2 <= b1 for b1, b2 in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "levels", lvs)

    def __setattr__(self, name, value):
        raise AttributeError("StepFunction is immutable")

    @classmethod
    def from_intervals(cls, intervals: Sequence[tuple[Rat, Rat, int]]) -> "StepFunction":
        """Build from disjoint (lo, hi, level) pieces inside [0, 1); 0 elsewhere."""
        pieces = sorted((Fraction(lo), Fraction(hi), int(v)) for lo, hi, v in intervals)
        bps: list[Fraction] = [Fraction(0)]
        lvs: list[int] = [0]
        for lo, hi, v in pieces:
            if hi <= lo:
                raise ValueError("empty interval")
            if lo < 0 or hi > 1:
                raise ValueError("intervals must lie inside [0, 1]")
            if lo < bps[-1] or (lo == bps[-1] and lvs[-1] != 0 and len(bps) > 1):
                raise ValueError("overlapping intervals")
            if lo == bps[-1]:
                lvs[-1] = v
            else:
                bps.append(lo)
                lvs.append(v)
            if hi < 1:
                bps.append(hi)
                lvs.append(0)
        return cls._normalized(bps, lvs)

    @classmethod
    def _normalized(cls, bps: Sequence[Fraction], lvs: Sequence[int]) -> "StepFunction":
        out_b: list[Fraction] = []
        out_l: list[int] = []
        for b, v in zip(bps, lvs):
            if out_b and out_l[-1] == v:
                continue
            out_b.append(b)
            out_l.append(v)
        return cls(out_b, out_l)

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls([Fraction(0)], [0])

    def value_at(self, x: Rat) -> int:
        """f(x), with x reduced into [0, 1) exactly (1-periodicity)."""
        x = Fraction(x)
        x -= math.floor(x)
        lo, hi = 0, len(self.breakpoints) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.breakpoints[mid] <= x:
                lo = mid
            else:
                hi = mid - 1
        return self.levels[lo]

    def _edges(self) -> list[tuple[Fraction, Fraction, int]]:
        out = []
        for i, (b, v) in enumerate(zip(self.breakpoints, self.levels)):
            hi = self.breakpoints[i + 1] if i + 1 < len(self.breakpoints) else Fraction(1)
            out.append((b, hi, v))
        return out

    def _merge(self, other: "StepFunction", op: Callable[[int, int], int]) -> "StepFunction":
        cuts = sorted(set(self.breakpoints) | set(other.breakpoints))
        lvs = [op(self.value_at(c), other.value_at(c)) for c in cuts]
        return StepFunction._normalized(cuts, lvs)

    def __add__(self, other: "StepFunction") -> "StepFunction":
        return self._merge(other, lambda a, b: a + b)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self._merge(other, lambda a, b: a - b)

    def max_with(self, other: "StepFunction") -> "StepFunction":
        return self._merge(other, max)

    def min_with(self, other: "StepFunction") -> "StepFunction":
        return self._merge(other, min)

    def scale(self, k: int) -> "StepFunction":
        return StepFunction(self.breakpoints, [k * v for v in self.levels])

    def value_set(self) -> set[int]:
        return set(self.levels)

    def __eq__(self, other) -> bool:
        if isinstance(other, StepFunction):
            return self.breakpoints == other.breakpoints and self.levels == other.levels
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.breakpoints, self.levels))

    def __repr__(self) -> str:
        parts = ", ".join(f"[{b}:{v}]" for b, v in zip(self.breakpoints, self.levels))
        return f"StepFunction({parts})"


def step_integral(
    f: StepFunction,
    measure: str,
    tol: float = 1e-12,
    cutoff: int | None = None,
) -> mp.mpf:
    """Integral of a step function against a singular reference measure.

    measure is one of:
      "dpsi"          -- integral over [0,1) of f(x) d psi(x)
      "dneg_trigamma" -- integral over [0,1) of f(x) d(-psi'(x))
      "dx_over_x2"    -- integral over [0, 1/cutoff] of f(x) dx/x^2

    The first two diverge at 0+, so f must vanish on the first interval;
    the same applies to the third whenever the first interval does not
    already cover [0, 1/cutoff].
    """
    if measure not in ("dpsi", "dneg_trigamma", "dx_over_x2"):
        raise ValueError(f"unknown measure {measure!r}")
    edges = f._edges()
    if measure == "dx_over_x2":
        if cutoff is None or cutoff <= 1:
            raise ValueError("dx_over_x2 requires an integer cutoff m >= 2 (upper limit 1/m)")
        top = Fraction(1, cutoff)
        with mp.workdps(dps_for_tol(tol) + 5):
            acc = mp.mpf(0)
            for lo, hi, v in edges:
                if v == 0 or lo >= top:
                    continue
                hi = min(hi, top)
                if lo == 0:
                    raise ValueError("nonzero level adjacent to 0 under a divergent measure")
                acc += v * (_to_mpf(1 / lo) - _to_mpf(1 / hi))
            return acc
    if cutoff is not None:
        raise ValueError("cutoff only applies to dx_over_x2")
    if f.levels[0] != 0:
        raise ValueError("nonzero level adjacent to 0 under a divergent measure")
    with mp.workdps(dps_for_tol(tol) + 5):
        M: Callable[[Fraction], mp.mpf]
        if measure == "dpsi":
            M = lambda x: mp.digamma(_to_mpf(x))
        else:
            M = lambda x: -mp.psi(1, _to_mpf(x))
        acc = mp.mpf(0)
        for lo, hi, v in edges:
            if v == 0:
                continue
            acc += v * (M(hi) - M(lo))
        return acc


@dataclass(frozen=True)
class SaddleResult:
    """A located stationary point and the objective value there."""

    root: mp.mpc
    objective_re: mp.mpf
    objective_im: mp.mpf
    residual: mp.mpf


def poly_roots(coeffs: Sequence[Rat], tol: float = 1e-20) -> list[mp.mpc]:
    """All complex roots of a polynomial with exact rational coefficients.

    Coefficients are lowest degree first.  Roots come from simultaneous
    iteration with a Newton polish at doubled precision; for real input
    the list is closed under conjugation and sorted by (Re, Im).  Each
    root's residual |p(root)| is checked against a scale-aware bound.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        raise ValueError("need degree >= 1")
    dps = dps_for_tol(tol) + 10
    with mp.workdps(2 * dps):
        highfirst = [_to_mpf(c) for c in reversed(cs)]
        roots = mp.polyroots(highfirst, maxsteps=200, extraprec=80)
        # Newton polish against the exact coefficient list
        def p(z):
            acc = mp.mpc(0)
            for c in reversed(cs):
                acc = acc * z + _to_mpf(c)
            return acc

        def dp(z):
            acc = mp.mpc(0)
            for k in range(len(cs) - 1, 0, -1):
                acc = acc * z + k * _to_mpf(cs[k])
            return acc

        polished = []
        for r in roots:
            z = mp.mpc(r)
            for _ in range(6):
                d = dp(z)
                if abs(d) == 0:
                    break
                step = p(z) / d
                z -= step
                if abs(step) < mp.mpf(10) ** (-2 * dps + 4):
                    break
            polished.append(z)
        # enforce conjugate symmetry: real roots snapped, pairs averaged
        scale = max(abs(c) for c in highfirst)
        out = []
        for z in polished:
            if abs(z.imag) < mp.mpf(10) ** (-dps):
                out.append(mp.mpc(z.real, 0))
            else:
                out.append(z)
        out.sort(key=lambda z: (z.real, z.imag))
        for z in out:
            if abs(p(z)) > scale * mp.mpf(10) ** (-dps + 6) * (1 + abs(z)) ** (len(cs) - 1):
                raise ArithmeticError("root residual exceeds tolerance")
        return out


def integrate_1d(
    f: Callable[[mp.mpf], mp.mpf],
    a,
    b,
    tol: float = 1e-10,
    max_dps: int = 120,
) -> mp.mpf:
    """Integral of f over [a, b] by tanh-sinh quadrature.

    Working precision is doubled until two successive evaluations agree
    within tol (endpoint algebraic/log singularities are what tanh-sinh
    is for; the doubling guards against optimistic internal estimates).
    """
    dps = dps_for_tol(tol)
    with mp.workdps(dps):
        prev = mp.quad(f, [_to_mpf(a), _to_mpf(b)])
    while True:
        dps *= 2
        if dps > max_dps:
            raise ArithmeticError(f"quadrature did not stabilize within tol={tol}")
        with mp.workdps(dps):
            cur = mp.quad(f, [_to_mpf(a), _to_mpf(b)])
        if abs(cur - prev) <= tol / 2:
            return cur
        prev = cur


def integrate_cube(
    f: Callable[..., mp.mpf],
    dim: int,
    tol: float = 1e-8,
    max_dps: int = 40,
) -> mp.mpf:
    """Integral of f over the unit cube of dimension dim <= 3 (tanh-sinh, nested).

    Cost grows steeply with both dimension and precision; this is meant
    for the desk-scale tolerances the package actually uses.
    """
    if not 1 <= dim <= 3:
        raise ValueError("dim must be 1, 2 or 3")
    ranges = [[mp.mpf(0), mp.mpf(1)] for _ in range(dim)]
    dps = max(10, dps_for_tol(tol) - 4)
    with mp.workdps(dps):
        prev = mp.quad(f, *ranges)
    while True:
        dps = int(dps * 1.6) + 2
        if dps > max_dps:
            raise ArithmeticError(f"cubature did not stabilize within tol={tol}")
        with mp.workdps(dps):
            cur = mp.quad(f, *ranges)
        if abs(cur - prev) <= tol / 2:
            return cur
        prev = cur
