"""Rational approximations to zeta(2) from two pole constructions.

A rational function R(t) built from three rising-factorial blocks over
one falling block has simple poles at negative integers; pairing its
partial fractions with the kernel (pi/sin pi t)^2 along a vertical
contour yields r = q zeta(2) - p with q an integer and p controlled by
two lcm denominators D_{c1} D_{c2}.  A second construction doubles the
leading parameter (kernel pi/sin 2 pi t, double poles) and produces a
companion family (q-hat, p-hat).  For the tuned integer directions
(7,6,5,8 | 0,1,2,14) and (11;3,4,5 | 2;0,10,11) the two families give
the exact same linear forms, so the shared prime content of the
coefficients can be cancelled: step functions phi, phi-hat and their
pointwise maximum measure that content per prime, shrinking the
denominator growth exponent from 17 to 17 - 8.79117698 = 8.20882302.
Together with the decay and growth rates from a cubic saddle-point
equation this certifies the irrationality measure bound
mu(zeta(2)) <= 5.09541179.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import mpmath as mp

from .analysis_core import StepFunction, dps_for_tol, poly_roots, step_integral, zeta2_const
from .number_core import binomial, lcm_upto, primes_upto

Rat = Union[int, Fraction]

# direction vectors (alpha | beta) of the tuned first construction and
# (alpha-hat | beta-hat) of the matching doubled one
FIRST_DIRECTIONS: Tuple[Tuple[int, ...], Tuple[int, ...]] = ((7, 6, 5, 8), (0, 1, 2, 14))
HATTED_DIRECTIONS: Tuple[Tuple[int, ...], Tuple[int, ...]] = ((11, 3, 4, 5), (2, 0, 10, 11))

# denominator growth slopes for the tuned directions: c2 ~ gamma1*n, c1 ~ gamma2*n
GAMMA_PAIR: Tuple[int, int] = (9, 8)

# intervals where phi-hat exceeds phi (everywhere else phi >= phi-hat)
PHI_DOMINANCE_EXCEPTIONS: Tuple[Tuple[Fraction, Fraction], ...] = (
    (Fraction(1, 5), Fraction(2, 9)),
    (Fraction(3, 7), Fraction(4, 9)),
    (Fraction(6, 7), Fraction(7, 8)),
)

__all__ = [
    "FIRST_DIRECTIONS",
    "GAMMA_PAIR",
    "HATTED_DIRECTIONS",
    "PHI_DOMINANCE_EXCEPTIONS",
    "FirstParams",
    "SecondParams",
    "Zeta2Form",
    "arithmetic_phi4",
    "build_profile",
    "certificate_zeta2",
    "coincidence_check",
    "contour_value",
    "correction_product",
    "decomposition_value",
    "first_coefficient",
    "first_form",
    "first_product_value",
    "phi_by_minimum",
    "phi_by_permutations",
    "phi_hat_pointwise",
    "second_coefficient",
    "second_form",
    "second_product_value",
]

_fact = math.factorial


# ---------------------------------------------------------------------------
# small exact-arithmetic helpers
# ---------------------------------------------------------------------------

def _poly_mul_linear(coeffs: Sequence[int], root: int) -> list:
    """coeffs(t) * (t + root), lowest degree first."""
    out = [0] * (len(coeffs) + 1)
    for i, v in enumerate(coeffs):
        out[i + 1] += v
        out[i] += root * v
    return out


def _divmod_monic(num: Sequence[int], den: Sequence[int]) -> Tuple[list, list]:
    """Quotient and remainder of integer polynomials, den monic."""
    rem = list(num)
    dd = len(den) - 1
    if len(rem) - 1 < dd:
        return [], rem
    quo = [0] * (len(rem) - dd)
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            quo[i - dd] = c
            for j in range(dd + 1):
                rem[i - dd + j] -= c * den[j]
    rem = rem[:dd]
    while rem and rem[-1] == 0:
        rem.pop()
    return quo, rem


def _eval_poly(coeffs: Sequence[Rat], x: Rat) -> Rat:
    acc = 0
    for v in reversed(coeffs):
        acc = acc * x + v
    return acc


_H2: list = [Fraction(0)]
_ALT1: list = [Fraction(0)]
_ALT2: list = [Fraction(0)]


def _h2(m: int) -> Fraction:
    """sum_{l=1}^m 1/l^2 (partial zeta(2) sum)."""
    while len(_H2) <= m:
        k = len(_H2)
        _H2.append(_H2[-1] + Fraction(1, k * k))
    return _H2[m]


def _alt1(m: int) -> Fraction:
    """sum_{l=1}^m (-1)^(l-1)/l (partial log 2 sum)."""
    while len(_ALT1) <= m:
        k = len(_ALT1)
        _ALT1.append(_ALT1[-1] + Fraction(1 if k % 2 else -1, k))
    return _ALT1[m]


def _alt2(m: int) -> Fraction:
    """sum_{l=1}^m (-1)^(l-1)/l^2 (partial zeta(2)/2 sum)."""
    while len(_ALT2) <= m:
        k = len(_ALT2)
        _ALT2.append(_ALT2[-1] + Fraction(1 if k % 2 else -1, k * k))
    return _ALT2[m]


# ---------------------------------------------------------------------------
# parameter tuples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FirstParams:
    """Integer parameters (a1..a4; b1..b4) of the simple-pole construction.

    Constraints: 1 <= b_j <= a_i < b4 for j <= 3 and all i, and
    d = sum(a) - sum(b) >= -1.  The classical requirement is d >= 0;
    d = -1 is admitted as the degenerate case with empty polynomial
    part (it covers the parameter tuple all of whose entries are equal,
    where R(t) collapses to 1/(t + a)).
    """

    a: Tuple[int, int, int, int]
    b: Tuple[int, int, int, int]

    def __post_init__(self) -> None:
        a, b = self.a, self.b
        if len(a) != 4 or len(b) != 4:
            raise ValueError("need four upper and four lower parameters")
        if any(int(v) != v for v in (*a, *b)):
            raise ValueError("parameters must be integers")
        if min(b[:3]) < 1:
            raise ValueError("lower parameters must be >= 1")
        if not all(b[j] <= min(a) for j in range(3)):
            raise ValueError("each of b1, b2, b3 must be <= every a_i")
        if not max(a) < b[3]:
            raise ValueError("b4 must exceed every a_i")
        if self.d < -1:
            raise ValueError("sum(a) - sum(b) must be >= -1")

    @classmethod
    def scaled(cls, n: int,
               directions: Tuple[Tuple[int, ...], Tuple[int, ...]] = FIRST_DIRECTIONS,
               ) -> "FirstParams":
        """Parameters along an integer direction: a = alpha*n + 1 and
        b = (beta1*n + 1, beta2*n + 1, beta3*n + 1, beta4*n + 2)."""
        alpha, beta = directions
        a = tuple(al * n + 1 for al in alpha)
        b = (beta[0] * n + 1, beta[1] * n + 1, beta[2] * n + 1, beta[3] * n + 2)
        return cls(a, b)

    @property
    def d(self) -> int:
        return sum(self.a) - sum(self.b)

    @property
    def a_star(self) -> Tuple[int, int, int, int]:
        return tuple(sorted(self.a))

    @property
    def b_star(self) -> Tuple[int, int, int]:
        return tuple(sorted(self.b[:3]))

    @property
    def pi_factor(self) -> Fraction:
        """(b4 - a4 - 1)! / ((a1-b1)! (a2-b2)! (a3-b3)!)."""
        a, b = self.a, self.b
        den = _fact(a[0] - b[0]) * _fact(a[1] - b[1]) * _fact(a[2] - b[2])
        return Fraction(_fact(b[3] - a[3] - 1), den)

    @property
    def pole_range(self) -> range:
        """Integers k with a simple pole of R at t = -k."""
        return range(self.a_star[3], self.b[3])

    @property
    def orders(self) -> Tuple[int, int]:
        """(c1, c2) with D_{c1} D_{c2} p an integer."""
        a, b = self.a, self.b
        edge = b[3] - self.a_star[1] - 1
        c1 = max(a[0] - b[0], a[1] - b[1], a[2] - b[2], edge)
        c2 = max(self.d + 1, edge)
        return c1, c2


@dataclass(frozen=True)
class SecondParams:
    """Integer parameters (a0; a1..a3 | b0; b1..b3) of the doubled construction.

    Constraints: b0 <= a0, b0 <= 2 a_j, 2 b1 <= a0, b1 <= a_j,
    a0 < 2 b2, a0 < 2 b3, a_j < b2, b3, all parameters >= 1, and the
    balance a0 + a1 + a2 + a3 = b0 + b1 + b2 + b3 - 2.
    """

    a0: int
    a: Tuple[int, int, int]
    b0: int
    b: Tuple[int, int, int]

    def __post_init__(self) -> None:
        a0, a, b0, b = self.a0, self.a, self.b0, self.b
        if len(a) != 3 or len(b) != 3:
            raise ValueError("need three paired upper and lower parameters")
        if any(int(v) != v for v in (a0, b0, *a, *b)):
            raise ValueError("parameters must be integers")
        if min(a0, b0, *a, *b) < 1:
            raise ValueError("parameters must be >= 1")
        if not (b0 <= a0 and all(b0 <= 2 * aj for aj in a)):
            raise ValueError("b0 must be <= a0 and <= 2 a_j")
        if not (2 * b[0] <= a0 and all(b[0] <= aj for aj in a)):
            raise ValueError("b1 must satisfy 2 b1 <= a0 and b1 <= a_j")
        if not (a0 < 2 * b[1] and a0 < 2 * b[2]):
            raise ValueError("b2, b3 must exceed a0/2")
        if not all(aj < b[1] and aj < b[2] for aj in a):
            raise ValueError("b2, b3 must exceed every a_j")
        if a0 + sum(a) != b0 + sum(b) - 2:
            raise ValueError("parameters must balance to sum(a) = sum(b) - 2")

    @classmethod
    def scaled(cls, n: int,
               directions: Tuple[Tuple[int, ...], Tuple[int, ...]] = HATTED_DIRECTIONS,
               ) -> "SecondParams":
        """Parameters along an integer direction: a0 = alpha0*n + 2,
        a_j = alpha_j*n + 1, b0 = beta0*n + 2, b1 = beta1*n + 1 and
        b2, b3 = beta_j*n + 2."""
        alpha, beta = directions
        return cls(alpha[0] * n + 2, tuple(al * n + 1 for al in alpha[1:]),
                   beta[0] * n + 2, (beta[1] * n + 1, beta[2] * n + 2, beta[3] * n + 2))

    @property
    def d_hat(self) -> int:
        """Sign exponent of the assembly; only its parity matters."""
        return self.b[1] + self.b[2]

    @property
    def a_star(self) -> Tuple[int, int, int]:
        return tuple(sorted(self.a))

    @property
    def b_tail_star(self) -> Tuple[int, int]:
        return tuple(sorted(self.b[1:]))

    @property
    def a0_star(self) -> int:
        return min(self.a0, 2 * self.a_star[1])

    @property
    def kernel_factor(self) -> Fraction:
        """2^(a0-b0) (b2-a2-1)! (b3-a3-1)! / ((a0-b0)! (a1-b1)!)."""
        num = 2 ** (self.a0 - self.b0) * _fact(self.b[1] - self.a[1] - 1) \
            * _fact(self.b[2] - self.a[2] - 1)
        return Fraction(num, _fact(self.a0 - self.b0) * _fact(self.a[0] - self.b[0]))

    @property
    def orders(self) -> Tuple[int, int]:
        """(c1, c2) with D_{c1} D_{c2} p-hat an integer."""
        bt = self.b_tail_star
        c1 = max(self.a0 - self.b0, self.a[0] - self.b[0],
                 bt[1] - self.a[1] - 1, bt[1] - self.a[2] - 1,
                 2 * bt[0] - self.a0_star - 2)
        c2 = 2 * bt[1] - self.a0_star - 2
        return c1, c2


# ---------------------------------------------------------------------------
# linear forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Zeta2Form:
    """Exact linear form q zeta(2) - p with its pole decomposition data.

    For the simple-pole construction simple_residues holds the integer
    residues C_k, basis_coeffs the coefficients A_l of the polynomial
    part in the shifted binomial basis, and double_residues is None.
    For the doubled construction double_residues holds the integer
    leading coefficients A_k, simple_residues the residues B_k, and
    basis_coeffs is None (the rational function vanishes to second
    order at infinity).  shift is the re-centering integer of the
    assembly (a2* or a0*); orders = (c1, c2) give the denominator
    guarantee D_{c1} D_{c2} p in Z.
    """

    q: int
    p: Fraction
    r: mp.mpf
    orders: Tuple[int, int]
    shift: int
    simple_residues: Dict[int, Fraction]
    double_residues: Optional[Dict[int, int]]
    basis_coeffs: Optional[Tuple[Fraction, ...]]
    params: Union[FirstParams, SecondParams]


def _first_multisets(params: FirstParams) -> Tuple[Counter, Counter]:
    """Cancelled numerator and denominator root multisets of R."""
    a, b = params.a, params.b
    num: Counter = Counter()
    for j in range(3):
        for root in range(b[j], a[j]):
            num[root] += 1
    den = Counter(range(a[3], b[3]))
    common = num & den
    return num - common, den - common


def _second_multisets(params: SecondParams) -> Tuple[Counter, Counter]:
    """Cancelled root multisets of the doubled product, keys Fractions."""
    num: Counter = Counter()
    for root in range(params.b0, params.a0):
        num[Fraction(root, 2)] += 1
    for root in range(params.b[0], params.a[0]):
        num[Fraction(root)] += 1
    den: Counter = Counter()
    for j in (1, 2):
        for root in range(params.a[j], params.b[j]):
            den[Fraction(root)] += 1
    common = num & den
    return num - common, den - common


def first_product_value(params: FirstParams, t: Rat) -> Fraction:
    """Exact value of the rational function R at a non-pole rational t."""
    num, den = _first_multisets(params)
    t = Fraction(t)
    acc = params.pi_factor
    for root, m in num.items():
        acc *= (t + root) ** m
    for root, m in den.items():
        if t + root == 0:
            raise ZeroDivisionError(f"t = {t} is a pole")
        acc /= (t + root) ** m
    return acc


def second_product_value(params: SecondParams, t: Rat) -> Fraction:
    """Exact value of the doubled-construction product at rational t."""
    num, den = _second_multisets(params)
    t = Fraction(t)
    acc = params.kernel_factor
    for root, m in num.items():
        acc *= (t + root) ** m
    for root, m in den.items():
        if t + root == 0:
            raise ZeroDivisionError(f"t = {t} is a pole")
        acc /= (t + root) ** m
    return acc


def first_coefficient(params: FirstParams, k: int) -> int:
    """Residue C_k of R at t = -k by the closed binomial product."""
    a, b, d = params.a, params.b, params.d
    sgn = -1 if (d + b[3] + k) % 2 else 1
    return sgn * binomial(k - b[0], k - a[0]) * binomial(k - b[1], k - a[1]) \
        * binomial(k - b[2], k - a[2]) * binomial(b[3] - a[3] - 1, k - a[3])


def second_coefficient(params: SecondParams, k: int) -> int:
    """Leading coefficient A_k at the double pole t = -k, closed form."""
    a0, a, b0, b = params.a0, params.a, params.b0, params.b
    sgn = -1 if params.d_hat % 2 else 1
    return sgn * binomial(2 * k - b0, 2 * k - a0) * binomial(k - b[0], k - a[0]) \
        * binomial(b[1] - a[1] - 1, k - a[1]) * binomial(b[2] - a[2] - 1, k - a[2])


def _form_value(q: int, p: Fraction, tol: float) -> mp.mpf:
    # working digits cover the cancellation between q zeta(2) and p
    mag = max(abs(q).bit_length(),
              abs(p.numerator).bit_length() - p.denominator.bit_length(), 0)
    dps = dps_for_tol(tol) + mag * 302 // 1000 + 10
    with mp.workdps(dps):
        z2 = zeta2_const(mp.mpf(10) ** (-dps))
        return q * z2 - mp.mpf(p.numerator) / p.denominator


def _validate_against_contour(form: Zeta2Form) -> None:
    r = form.r
    if r == 0:
        raise ArithmeticError("linear form vanished; contour check undefined")
    digits = int(-mp.log10(abs(r))) if abs(r) < 1 else 0
    mag = max(abs(form.q).bit_length() * 302 // 1000, 1)
    dps = digits + mag + 30
    quad = contour_value(form.params, dps=dps)
    with mp.workdps(dps):
        if mp.fabs(quad - r) > mp.fabs(r) * mp.mpf(10) ** (-10):
            raise ArithmeticError(
                f"contour integral {quad} disagrees with assembled value {r}")


def contour_value(params: Union[FirstParams, SecondParams], dps: int = 60) -> mp.mpf:
    """Numeric linear form by direct contour integration.

    Independent of the exact assembly: integrates the product against
    (pi/sin pi t)^2 (simple-pole construction) or pi/sin 2 pi t
    (doubled construction) along the vertical line through the leftmost
    admissible re-centering abscissa.
    """
    doubled = isinstance(params, SecondParams)
    if doubled:
        num, den = _second_multisets(params)
        const = params.kernel_factor
        center = (mp.mpf(1) / 2 - params.a0_star) / 2
        sgn = -1 if params.d_hat % 2 else 1
    else:
        num, den = _first_multisets(params)
        const = params.pi_factor
        center = mp.mpf(1) / 2 - params.a_star[1]
        sgn = 1 if params.d % 2 else -1
    with mp.workdps(dps):
        cval = mp.mpf(const.numerator) / const.denominator
        nroots = [(mp.mpf(r.numerator) / r.denominator if isinstance(r, Fraction)
                   else mp.mpf(r), m) for r, m in num.items()]
        droots = [(mp.mpf(r.numerator) / r.denominator if isinstance(r, Fraction)
                   else mp.mpf(r), m) for r, m in den.items()]

        def integrand(y: mp.mpf) -> mp.mpf:
            t = mp.mpc(center, y)
            acc = mp.mpc(cval)
            for root, m in nroots:
                acc *= (t + root) ** m
            for root, m in droots:
                acc /= (t + root) ** m
            if doubled:
                acc *= mp.pi / mp.sin(2 * mp.pi * t)
            else:
                s = mp.pi / mp.sin(mp.pi * t)
                acc *= s * s
            return acc.real

        val = mp.quad(integrand, [-mp.inf, 0, mp.inf]) / (2 * mp.pi)
        return sgn * val


def first_form(params: FirstParams, tol: float = 1e-30, validate: bool = True) -> Zeta2Form:
    """Linear form q zeta(2) - p from the simple-pole construction.

    Residues come from the closed binomial product and are cross-checked
    against the exact partial-fraction route (integer polynomial division
    of the cancelled numerator by the pole polynomial).  The polynomial
    part is re-expanded over the binomial basis ((t + a2* - 1) choose l)
    by forward differences; p is assembled from partial zeta(2) sums plus
    the alternating basis integrals.  With validate the value r is
    confirmed by contour integration at matching precision.
    """
    num, den = _first_multisets(params)
    if any(m != 1 for m in den.values()):
        raise ArithmeticError("unexpected multiple pole after cancellation")
    poles = sorted(int(k) for k in den)
    if poles != list(params.pole_range):
        raise ArithmeticError("pole set differs from the predicted range")
    pi_factor = params.pi_factor
    npoly = [1]
    for root in sorted(num.elements()):
        npoly = _poly_mul_linear(npoly, root)
    dpoly = [1]
    for k in poles:
        dpoly = _poly_mul_linear(dpoly, k)
    quo, rem = _divmod_monic(npoly, dpoly)

    residues: Dict[int, Fraction] = {}
    for k in poles:
        dprime = 1
        for kk in poles:
            if kk != k:
                dprime *= kk - k
        by_division = pi_factor * Fraction(_eval_poly(rem, -k), dprime)
        closed = first_coefficient(params, k)
        if by_division != closed:
            raise ArithmeticError(
                f"residue routes disagree at k={k}: {by_division} vs {closed}")
        residues[k] = Fraction(closed)

    d = params.d
    shift = params.a_star[1]
    basis: list = []
    if d >= 0:
        # forward differences of the quotient polynomial on 1-a2*, 2-a2*, ...
        table = [pi_factor * _eval_poly(quo, 1 - shift + i) for i in range(d + 1)]
        basis.append(table[0])
        for _ in range(d):
            table = [table[i + 1] - table[i] for i in range(len(table) - 1)]
            basis.append(table[0])
        for probe in (Fraction(1, 3), Fraction(-5, 2)):
            direct = pi_factor * _eval_poly(quo, probe)
            expanded = Fraction(0)
            for level, coeff in enumerate(basis):
                term = Fraction(1)
                for i in range(1, level + 1):
                    term *= probe + shift - i
                expanded += coeff * term / _fact(level)
            if direct != expanded:
                raise ArithmeticError("binomial-basis re-expansion failed")

    sgn = 1 if d % 2 else -1
    q = sgn * sum(residues.values())
    p = sgn * sum(c * _h2(k - shift) for k, c in residues.items())
    p -= sgn * sum((-1 if level % 2 else 1) * coeff / Fraction(level + 1)
                   for level, coeff in enumerate(basis))
    if q.denominator != 1:
        raise ArithmeticError("coefficient of zeta(2) is not an integer")
    c1, c2 = params.orders
    if (p * lcm_upto(c1) * lcm_upto(c2)).denominator != 1:
        raise ArithmeticError("denominator of p exceeds the D_{c1} D_{c2} bound")

    form = Zeta2Form(q=int(q), p=p, r=_form_value(int(q), p, tol),
                     orders=(c1, c2), shift=shift, simple_residues=residues,
                     double_residues=None, basis_coeffs=tuple(basis), params=params)
    if validate:
        _validate_against_contour(form)
    return form


def second_form(params: SecondParams, tol: float = 1e-30, validate: bool = True) -> Zeta2Form:
    """Linear form q zeta(2) - p from the doubled construction.

    Double-pole leading coefficients A_k come from the cancelled product
    and are cross-checked against the closed binomial form over the whole
    predicted double-pole range; residues B_k use the logarithmic
    derivative at double poles and the plain residue at poles degraded to
    first order.  The residue sum must vanish exactly (the product decays
    like t^-2), and p is assembled from alternating partial sums.
    """
    num, den = _second_multisets(params)
    kf = params.kernel_factor
    ast = params.a_star
    bt = params.b_tail_star
    dbl_lo, dbl_hi = ast[2], bt[0] - 1
    sim_lo, sim_hi = ast[1], bt[1] - 1

    leading: Dict[int, int] = {}
    residues: Dict[int, Fraction] = {}
    for root, m in sorted(den.items()):
        if root.denominator != 1 or not 1 <= m <= 2:
            raise ArithmeticError(f"unexpected pole structure at {root}")
        k = int(root)
        if not sim_lo <= k <= sim_hi:
            raise ArithmeticError(f"pole {k} outside the predicted range")
        value = kf
        for rho, mm in num.items():
            value *= (rho - k) ** mm
        for rho, mm in den.items():
            if rho != root:
                value /= (rho - k) ** mm
        if m == 2:
            if not dbl_lo <= k <= dbl_hi:
                raise ArithmeticError(f"double pole {k} outside the predicted range")
            logder = Fraction(0)
            for rho, mm in num.items():
                logder += Fraction(mm) / (rho - k)
            for rho, mm in den.items():
                if rho != root:
                    logder -= Fraction(mm) / (rho - k)
            leading[k] = value
            residues[k] = value * logder
        else:
            residues[k] = value

    for k in range(dbl_lo, dbl_hi + 1):
        closed = second_coefficient(params, k)
        if leading.get(k, 0) != closed:
            raise ArithmeticError(
                f"leading coefficient routes disagree at k={k}: "
                f"{leading.get(k, 0)} vs {closed}")
    if sum(residues.values()) != 0:
        raise ArithmeticError("residue sum must vanish for a t^-2 decay")

    sgn = -1 if params.d_hat % 2 else 1
    shift = params.a0_star
    q = sgn * sum(leading.values())
    p = sgn * (sum(2 * Fraction(c) * _alt2(2 * k - shift) for k, c in leading.items())
               + sum(c * _alt1(2 * k - shift) for k, c in residues.items()))
    if Fraction(q).denominator != 1:
        raise ArithmeticError("coefficient of zeta(2) is not an integer")
    c1, c2 = params.orders
    if (p * lcm_upto(c1) * lcm_upto(c2)).denominator != 1:
        raise ArithmeticError("denominator of p exceeds the D_{c1} D_{c2} bound")

    leading = {k: int(v) for k, v in leading.items()}
    form = Zeta2Form(q=int(q), p=p, r=_form_value(int(q), p, tol),
                     orders=(c1, c2), shift=shift, simple_residues=residues,
                     double_residues=leading, basis_coeffs=None, params=params)
    if validate:
        _validate_against_contour(form)
    return form


def decomposition_value(form: Zeta2Form, t: Rat) -> Fraction:
    """Exact partial-fraction value at a non-pole rational t.

    Sums C_k/(t+k) plus the binomial-basis polynomial part for the
    simple-pole construction, or A_k/(t+k)^2 + B_k/(t+k) for the
    doubled one; must reproduce the product value exactly.
    """
    t = Fraction(t)
    acc = Fraction(0)
    if form.double_residues is not None:
        for k, c in form.double_residues.items():
            acc += Fraction(c) / (t + k) ** 2
        for k, c in form.simple_residues.items():
            acc += c / (t + k)
        return acc
    for k, c in form.simple_residues.items():
        acc += c / (t + k)
    for level, coeff in enumerate(form.basis_coeffs or ()):
        term = Fraction(1)
        for i in range(1, level + 1):
            term *= t + form.shift - i
        acc += coeff * term / _fact(level)
    return acc


# ---------------------------------------------------------------------------
# exact coincidence of the two tuned families
# ---------------------------------------------------------------------------

def _first_coefficient_sum(params: FirstParams) -> int:
    sgn = 1 if params.d % 2 else -1
    return sgn * sum(first_coefficient(params, k) for k in params.pole_range)


def _second_coefficient_sum(params: SecondParams) -> int:
    sgn = -1 if params.d_hat % 2 else 1
    lo, hi = params.a_star[2], params.b_tail_star[0] - 1
    return sgn * sum(second_coefficient(params, k) for k in range(lo, hi + 1))


def coincidence_check(n: int, full: Optional[bool] = None) -> bool:
    """Do the two tuned families produce the same linear form at index n?

    Compares the full exact pair (q, p) through both pipelines when full
    is true (default for n <= 3) and the zeta(2) coefficients alone via
    the closed binomial sums otherwise.  Supported for n <= 20.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n > 20:
        raise ValueError("coincidence check supported for n <= 20")
    if full is None:
        full = n <= 3
    fparams = FirstParams.scaled(n)
    sparams = SecondParams.scaled(n)
    if not full:
        return _first_coefficient_sum(fparams) == _second_coefficient_sum(sparams)
    first = first_form(fparams, validate=False)
    second = second_form(sparams, validate=False)
    return first.q == second.q and first.p == second.p


# ---------------------------------------------------------------------------
# arithmetic correction profiles
# ---------------------------------------------------------------------------

def _frac(x: Fraction) -> Fraction:
    return x - math.floor(x)


def phi_by_permutations(x: Rat,
                        alpha: Tuple[int, ...] = FIRST_DIRECTIONS[0],
                        beta: Tuple[int, ...] = FIRST_DIRECTIONS[1]) -> int:
    """Prime-exponent profile as a maximum over upper-parameter permutations.

    For x = n/p this is the largest p-adic gain of the residue products
    over all permutations of the upper direction entries.
    """
    x = _frac(Fraction(x))
    floor = math.floor
    base = floor((beta[3] - alpha[3]) * x) \
        - sum(floor((alpha[j] - beta[j]) * x) for j in range(3))
    best = None
    for perm in set(permutations(alpha)):
        v = base - floor((beta[3] - perm[3]) * x) \
            + sum(floor((perm[j] - beta[j]) * x) for j in range(3))
        best = v if best is None else max(best, v)
    return best


def _y_candidates(x: Fraction, slopes: Sequence[int],
                  halved: Sequence[int] = ()) -> list:
    """Probe points for a minimum over y in [0, 1) of floor combinations.

    Candidates are the fractional parts of slope*x (and their halves,
    shifted by 1/2, for doubled slopes) plus midpoints of consecutive
    candidates; the floor terms are only one-sided continuous in y, so
    the interior of every candidate gap must be probed as well.
    """
    cands = {Fraction(0)}
    for c in slopes:
        cands.add(_frac(c * x))
    for c in halved:
        f = _frac(c * x)
        cands.add(f / 2)
        cands.add(f / 2 + Fraction(1, 2))
    ordered = sorted(cands)
    probes = list(ordered)
    probes.extend((y1 + y2) / 2 for y1, y2 in zip(ordered, ordered[1:]))
    probes.append((ordered[-1] + 1 + ordered[0]) / 2)
    return [_frac(pr) for pr in probes]


def phi_by_minimum(x: Rat,
                   alpha: Tuple[int, ...] = FIRST_DIRECTIONS[0],
                   beta: Tuple[int, ...] = FIRST_DIRECTIONS[1]) -> int:
    """Same profile as phi_by_permutations via a minimum over y in [0, 1).

    The equality of the two routes is a nontrivial identity; both are
    kept and cross-asserted on dense grids.
    """
    x = _frac(Fraction(x))
    floor = math.floor
    best = None
    for y in _y_candidates(x, (*alpha, *beta)):
        v = sum(floor(y - beta[j] * x) - floor(y - alpha[j] * x)
                - floor((alpha[j] - beta[j]) * x) for j in range(3))
        v += floor((beta[3] - alpha[3]) * x) - floor(beta[3] * x - y) \
            - floor(y - alpha[3] * x)
        best = v if best is None else min(best, v)
    return best


def phi_hat_pointwise(x: Rat,
                      alpha: Tuple[int, ...] = HATTED_DIRECTIONS[0],
                      beta: Tuple[int, ...] = HATTED_DIRECTIONS[1]) -> int:
    """Prime-exponent profile of the doubled construction (min over y)."""
    x = _frac(Fraction(x))
    floor = math.floor
    a0, a1, a2, a3 = alpha
    b0, b1, b2, b3 = beta
    best = None
    for y in _y_candidates(x, (a1, a2, a3, b1, b2, b3), halved=(a0, b0)):
        v = floor(2 * y - b0 * x) - floor(2 * y - a0 * x) - floor((a0 - b0) * x)
        v += floor(y - b1 * x) - floor(y - a1 * x) - floor((a1 - b1) * x)
        v += floor((b2 - a2) * x) - floor(b2 * x - y) - floor(y - a2 * x)
        v += floor((b3 - a3) * x) - floor(b3 * x - y) - floor(y - a3 * x)
        best = v if best is None else min(best, v)
    return best


def build_profile(pointwise: Callable[[Fraction], int], max_den: int = 56) -> StepFunction:
    """Step function from a pointwise profile, breakpoints at k/m, m <= max_den.

    Evaluates at the midpoint of every gap of the Farey grid; max_den
    must dominate every breakpoint denominator the profile can produce.
    """
    cuts = sorted({Fraction(k, m) for m in range(1, max_den + 1) for k in range(m + 1)})
    bps: list = []
    lvs: list = []
    for lo, hi in zip(cuts, cuts[1:]):
        v = pointwise((lo + hi) / 2)
        if bps and lvs[-1] == v:
            continue
        bps.append(lo)
        lvs.append(v)
    return StepFunction(bps, lvs)


@lru_cache(maxsize=None)
def _phi_profiles() -> Tuple[StepFunction, StepFunction, StepFunction]:
    phi = build_profile(phi_by_permutations)
    phi_min = build_profile(phi_by_minimum)
    if phi != phi_min:
        raise ArithmeticError("permutation and minimum routes disagree")
    # dense-grid cross-check at denominators beyond the construction grid
    for den in (97, 101):
        for k in range(den):
            x = Fraction(k, den)
            a = phi_by_permutations(x)
            if a != phi_by_minimum(x) or a != phi.value_at(x):
                raise ArithmeticError(f"profile routes disagree at {x}")
    phi_hat = build_profile(phi_hat_pointwise)
    return phi, phi_hat, phi.max_with(phi_hat)


@lru_cache(maxsize=None)
def _phi_limits(tol: float) -> Tuple[mp.mpf, mp.mpf, mp.mpf]:
    gamma2 = GAMMA_PAIR[1]
    out = []
    for profile in _phi_profiles():
        lim = step_integral(profile, "dpsi", tol=tol) \
            - step_integral(profile, "dx_over_x2", tol=tol, cutoff=gamma2)
        out.append(lim)
    return tuple(out)


def arithmetic_phi4(tol: float = 1e-15) -> dict:
    """The three correction profiles of the tuned families and their rates.

    Returns phi (simple-pole construction, built by both routes and
    cross-asserted), phi_hat (doubled construction) and phi_tilde (their
    pointwise maximum), together with lim (log Phi_n)/n for each, where
    Phi_n = prod_{p <= gamma2 n} p^(profile(n/p)).
    """
    phi, phi_hat, phi_tilde = _phi_profiles()
    lims = _phi_limits(float(tol))
    return {
        "phi": phi,
        "phi_hat": phi_hat,
        "phi_tilde": phi_tilde,
        "limits": {"phi": lims[0], "phi_hat": lims[1], "phi_tilde": lims[2]},
    }


def correction_product(profile: StepFunction, n: int, ratio: int = GAMMA_PAIR[1]) -> int:
    """Phi_n = prod over primes p <= ratio*n of p^(profile(n/p))."""
    if n < 1:
        raise ValueError("index must be positive")
    out = 1
    for p in primes_upto(ratio * n):
        out *= p ** profile.value_at(Fraction(n, p))
    return out


# ---------------------------------------------------------------------------
# the measure certificate
# ---------------------------------------------------------------------------

def certificate_zeta2(tol: float = 1e-15) -> dict:
    """Irrationality measure certificate for zeta(2) from the tuned pair.

    The growth and decay rates C1, C0 are the real parts of the
    direction generating integral at the real and complex roots of the
    cubic prod(tau - alpha_j) = prod(tau - beta_j); C2 and C2~ subtract
    the correction rates from gamma1 + gamma2.  The measure bound is
    (C0 + C1)/(C0 - C2~) after the refined correction, with the
    pre-refinement bound reported alongside.
    """
    alpha, beta = FIRST_DIRECTIONS
    pa = [1]
    pb = [1]
    for al in alpha:
        pa = _poly_mul_linear(pa, -al)
    for be in beta:
        pb = _poly_mul_linear(pb, -be)
    cubic = [x - y for x, y in zip(pa, pb)]
    if cubic[4] != 0:
        raise ArithmeticError("direction polynomials must share the quartic term")
    cubic = cubic[:4]

    dps = dps_for_tol(float(tol)) + 10
    roots = poly_roots([Fraction(c) for c in cubic], tol=float(tol) * 1e-6)
    with mp.workdps(dps):
        eps = mp.mpf(10) ** (-dps // 2)
        real = [z for z in roots if abs(mp.im(z)) < eps]
        upper = [z for z in roots if mp.im(z) > eps]
        if len(real) != 1 or len(upper) != 1:
            raise ArithmeticError("root-selection ambiguity in the direction cubic")
        tau1 = mp.re(real[0])
        tau0 = upper[0]

        def generating(tau) -> mp.mpc:
            acc = mp.mpc(0)
            for j in range(4):
                acc += alpha[j] * mp.log(tau - alpha[j])
                if beta[j]:
                    acc -= beta[j] * mp.log(tau - beta[j])
            for j in range(3):
                acc -= (alpha[j] - beta[j]) * mp.log(alpha[j] - beta[j])
            acc += (beta[3] - alpha[3]) * mp.log(beta[3] - alpha[3])
            return acc

        c0 = -mp.re(generating(tau0))
        c1 = mp.re(generating(tau1))
        gamma_sum = sum(GAMMA_PAIR)
        lims = _phi_limits(float(tol))
        c2 = gamma_sum - lims[0]
        c2_tilde = gamma_sum - lims[2]
        if not c0 > c2_tilde:
            raise ArithmeticError("denominator correction exceeds the decay rate")
        bound_plain = (c0 + c1) / (c0 - c2)
        bound = (c0 + c1) / (c0 - c2_tilde)

    return {
        "alpha": alpha,
        "beta": beta,
        "cubic": tuple(cubic),
        "tau_real": tau1,
        "tau_complex": tau0,
        "C0": c0,
        "C1": c1,
        "gamma_pair": GAMMA_PAIR,
        "phi_limit": lims[0],
        "phi_tilde_limit": lims[2],
        "C2": c2,
        "C2_tilde": c2_tilde,
        "bound_plain": bound_plain,
        "bound": bound,
        "conclusion": f"|zeta(2) - p/q| > q^(-{mp.nstr(bound, 10)}) for all large q",
    }
