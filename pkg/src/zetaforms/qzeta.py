"""Linear forms in 1 and zeta_q(2) from basic hypergeometric series.

zeta_q(s) is the divisor-sum series sum sigma_{s-1}(n) q^n; it tends to
(s-1)! zeta(s) after (1-q)^s normalization.  A six-parameter basic
series G, evaluated at q = 1/p for integer p, has an exact partial
fraction expansion whose double poles produce A zeta_q(2) - B with
rational A, B.  Bookkeeping runs through a ten-slot exponent tuple with
an order-120 permutation symmetry; the common denominator of A and B is
a product of two cyclotomic-factorial values, refined by per-cyclotomic
exponents nu_l that equal a periodic floor-excess function phi at n/l.
Scaling the parameters along an integer direction vector gives an
asymptotic certificate: when the decay rate C0 is positive, C1/C0 bounds
the irrationality measure of zeta_q(2) for every q = 1/p uniformly.
The diagonal direction reproduces the q-deformation of the classical
zeta(2) approximations, recovering them in the q -> 1 limit.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, List, Mapping, Sequence, Tuple, Union

import mpmath as mp

from .analysis_core import StepFunction, dps_for_tol, step_integral
from .number_core import IntPolynomial, binomial, cyclotomic, dn_poly_eval, q_binomial_at

Rat = Union[int, Fraction]
GroupElement = Tuple[int, ...]

# Direction vectors (alpha, beta): the tuned certificate and the diagonal
# one specializing to the classical zeta(2) approximations.
BEST_DIRECTIONS = ((10, 11, 12), (24, 25))
APERY_DIRECTIONS = ((1, 1, 1), (2, 2))

__all__ = [
    "APERY_DIRECTIONS",
    "BEST_DIRECTIONS",
    "IDENTITY",
    "PERM_A13",
    "PERM_A23",
    "PERM_B23",
    "PERM_MIX",
    "QLinearForm",
    "QParams",
    "SIGMA",
    "TAU",
    "apery_q_coefficient",
    "apery_q_form",
    "apply_perm",
    "c_decay_order",
    "c_factorial_degree",
    "c_weight",
    "certificate_q",
    "compose",
    "coset_representatives",
    "decompose_q",
    "denominator_orders",
    "direction_set",
    "double_pole_coefficient",
    "gq_value",
    "group_generate",
    "invariants_check",
    "min_power",
    "omega_exponents",
    "omega_value",
    "partial_fractions",
    "phi_profile",
    "q_harmonic",
    "rational_kernel",
    "rho_poly",
    "value_symmetries",
    "zeta_q",
]


def _as_tol(tol) -> Fraction:
    try:
        t = Fraction(tol)
    except TypeError:
        t = Fraction(float(tol))
    if t <= 0:
        raise ValueError("tolerance must be positive")
    return t


def _to_mpf(value: Fraction, tol: Fraction) -> mp.mpf:
    # enough working digits for the integer magnitude plus the accuracy goal
    mag = max(0, abs(value.numerator).bit_length() - value.denominator.bit_length())
    with mp.workdps(dps_for_tol(float(tol)) + mag * 302 // 1000 + 10):
        return mp.mpf(value.numerator) / value.denominator


def _int_valuation(value: Rat, p: int) -> int:
    """Exponent of |p| in a nonzero rational; p is any integer with |p| >= 2."""
    value = Fraction(value)
    if value == 0:
        raise ValueError("valuation of zero is undefined")
    ap = abs(p)
    if ap < 2:
        raise ValueError("base must satisfy |p| >= 2")
    v = 0
    num = abs(value.numerator)
    while num % ap == 0:
        num //= ap
        v += 1
    den = value.denominator
    while den % ap == 0:
        den //= ap
        v -= 1
    return v


# ---------------------------------------------------------------------------
# the q-zeta values
# ---------------------------------------------------------------------------


def rho_poly(s: int) -> IntPolynomial:
    """Numerator polynomial of the weight-s reciprocal-power kernel.

    rho_1 = rho_2 = 1 and rho_{s+1} = (1 + (s-1)x) rho_s + x(1-x) rho_s';
    the coefficients are the Eulerian numbers, so rho_s(1) = (s-1)! and
    the coefficient list is palindromic.
    """
    if not isinstance(s, int) or s < 1:
        raise ValueError("weight must be a positive integer")
    coeffs = [1]
    for k in range(1, s):
        out = [0] * (len(coeffs) + 1)
        for i, v in enumerate(coeffs):
            out[i] += v
            out[i + 1] += (k - 1) * v
            if i >= 1:
                out[i] += i * v
                out[i + 1] -= i * v
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        coeffs = out
    return IntPolynomial(coeffs)


def _sigma_block(s: int, lo: int, hi: int) -> List[int]:
    """sigma_{s-1}(n) for n in (lo, hi]."""
    vals = [0] * (hi - lo)
    for d in range(1, hi + 1):
        e = d ** (s - 1)
        start = (lo // d + 1) * d
        for m in range(start, hi + 1, d):
            vals[m - lo - 1] += e
    return vals


def _zeta_q_fraction(s: int, q: Fraction, tol: Fraction) -> Tuple[Fraction, Fraction]:
    """Exact partial sum and a rigorous tail bound (sigma_{s-1}(n) <= n^s)."""
    aq = abs(q)
    total = Fraction(0)
    qn = Fraction(1)
    n_done = 0
    block = 64
    while True:
        for sv in _sigma_block(s, n_done, n_done + block):
            qn *= q
            total += sv * qn
        n_done += block
        ratio = aq * Fraction(n_done + 1, n_done) ** s
        if ratio < 1:
            bound = Fraction(n_done + 1) ** s * aq ** (n_done + 1) / (1 - ratio)
            if bound < tol:
                return total, bound
        block *= 2


def _zeta_q_mpf(s: int, q: mp.mpf, tol: float) -> mp.mpf:
    aq = abs(q)
    total = mp.mpf(0)
    qn = mp.mpf(1)
    n_done = 0
    block = 64
    while True:
        for sv in _sigma_block(s, n_done, n_done + block):
            qn *= q
            total += sv * qn
        n_done += block
        ratio = aq * (mp.mpf(n_done + 1) / n_done) ** s
        if ratio < 1 and mp.mpf(n_done + 1) ** s * aq ** (n_done + 1) / (1 - ratio) < tol / 2:
            return total
        block *= 2


def zeta_q(s: int, q, tol=1e-20) -> mp.mpf:
    """sum_{n >= 1} sigma_{s-1}(n) q^n to absolute accuracy tol.

    Requires s >= 1 and 0 < |q| < 1.  Rational q with |q| <= 1/2 is
    summed exactly; otherwise high-precision floats are used.  The
    normalization (1-q)^s zeta_q(s) tends to (s-1)! zeta(s) as q -> 1.
    """
    if not isinstance(s, int) or s < 1:
        raise ValueError("weight must be a positive integer")
    tolf = _as_tol(tol)
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
        if not 0 < abs(q) < 1:
            raise ValueError("q must satisfy 0 < |q| < 1")
        if abs(q) <= Fraction(1, 2):
            val, _ = _zeta_q_fraction(s, q, tolf)
            return _to_mpf(val, tolf)
        q = mp.mpf(q.numerator) / q.denominator
    qf = mp.mpf(q)
    if not 0 < abs(qf) < 1:
        raise ValueError("q must satisfy 0 < |q| < 1")
    extra = int(s * -mp.log10(1 - abs(qf))) + 15
    with mp.workdps(dps_for_tol(float(tolf)) + extra):
        return +_zeta_q_mpf(s, mp.mpf(q), float(tolf))


def q_harmonic(q: Rat, k: int, power: int) -> Fraction:
    """sum_{l=1}^{k-1} q^l / (1 - q^l)^power."""
    q = Fraction(q)
    acc = Fraction(0)
    for l in range(1, k):
        ql = q ** l
        acc += ql / (1 - ql) ** power
    return acc


# ---------------------------------------------------------------------------
# parameter tuples and their slot sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QParams:
    """Admissible parameter tuple (a1, a2, a3; 1, b2, b3) of the basic series.

    Admissibility: min(a2, a3) >= 1, a2 < b2, a3 < b3 and
    a1 + a2 + a3 <= b2 + b3 - 1.  The stricter pole-separated regime
    (``is_strict``) additionally requires 1 <= aj < min(b2, b3) for all j.
    """

    a: Tuple[int, int, int]
    b: Tuple[int, int, int]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        b = tuple(int(x) for x in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if len(a) != 3 or len(b) != 3:
            raise ValueError("expected three upper and three lower parameters")
        if b[0] != 1:
            raise ValueError("the first lower parameter is fixed at 1")
        if min(a[1], a[2]) < 1:
            raise ValueError("a2 and a3 must be at least 1")
        if a[1] >= b[1] or a[2] >= b[2]:
            raise ValueError("need a2 < b2 and a3 < b3")
        if sum(a) > b[1] + b[2] - 1:
            raise ValueError("parameter sum exceeds b2 + b3 - 1")

    @property
    def is_strict(self) -> bool:
        lo = min(self.b[1], self.b[2])
        return all(1 <= aj < lo for aj in self.a)

    @property
    def c_set(self) -> Tuple[int, ...]:
        """Slot tuple (c00, c21, c22, c33, c31 | c11, c23, c13, c12, c32)."""
        a1, a2, a3 = self.a
        _, b2, b3 = self.b
        return (
            b2 + b3 - a1 - a2 - a3 - 1,
            a2 - 1, b2 - a2 - 1, b3 - a3 - 1, a3 - 1,
            a1 - 1, b3 - a2 - 1, b3 - a1 - 1, b2 - a1 - 1, b2 - a3 - 1,
        )

    @classmethod
    def from_c(cls, c: Sequence[int]) -> "QParams":
        """Reconstruct the parameters from a slot tuple (first five suffice)."""
        c = tuple(int(v) for v in c)
        if len(c) not in (5, 10):
            raise ValueError("expected 5 or 10 slot values")
        a1 = c[2] + c[3] - c[0] + 1
        params = cls((a1, c[1] + 1, c[4] + 1), (1, c[1] + c[2] + 2, c[4] + c[3] + 2))
        if len(c) == 10 and params.c_set != c:
            raise ValueError("slot tuple is not the image of a parameter set")
        return params

    @classmethod
    def from_directions(cls, alpha: Sequence[int], beta: Sequence[int], n: int) -> "QParams":
        """Scale a direction vector: aj = alpha_j n + 1, bk = beta_k n + 2."""
        direction_set(alpha, beta)
        if not isinstance(n, int) or n < 1:
            raise ValueError("n must be a positive integer")
        return cls(
            tuple(int(x) * n + 1 for x in alpha),
            (1, int(beta[0]) * n + 2, int(beta[1]) * n + 2),
        )

    def swap_symmetry(self) -> "QParams":
        """Exchange the second and third columns; the series is unchanged."""
        return QParams((self.a[0], self.a[2], self.a[1]), (1, self.b[2], self.b[1]))

    def hall_transform(self) -> "QParams":
        """The basic analogue of Thomae's relation; the series is unchanged."""
        a1, a2, a3 = self.a
        _, b2, b3 = self.b
        return QParams(
            (b3 - a2, b2 - a2, b2 + b3 - a1 - a2 - a3),
            (1, b2 + b3 - a2 - a3, b2 + b3 - a1 - a2),
        )


def c_weight(c: Sequence[int]) -> int:
    """Common row sum of a slot tuple."""
    return sum(c[:5])


def c_factorial_degree(c: Sequence[int]) -> int:
    """Degree of the product of the top-row q-factorials."""
    return sum(v * (v - 1) // 2 for v in c[:5])


def _cycle_products(c: Sequence[int], step: int) -> int:
    top = c[:5]
    return sum(top[i] * top[(i + step) % 5] for i in range(5))


def c_decay_order(c: Sequence[int]) -> int:
    """Exponent L with |A| < 3^{2(b2+b3)} |q|^L for the zeta coefficient."""
    return c_factorial_degree(c) - _cycle_products(c, 2) - 1


def _power_sum_invariant(c: Sequence[int]) -> Fraction:
    # closed form of min_power + c_factorial_degree; constant on group orbits
    return (
        Fraction(3 * sum(v * v for v in c[:5]), 4)
        + Fraction(_cycle_products(c, 1), 2)
        - Fraction(_cycle_products(c, 2), 2)
        - Fraction(c_weight(c), 2)
        - Fraction(1, 4)
    )


def min_power(params: QParams) -> Fraction:
    """Guaranteed power of x = 1/q dividing both coefficients of the form."""
    a1, a2, a3 = params.a
    _, b2, b3 = params.b
    return (
        Fraction((a2 - 1) * b2 + (a3 - 1) * b3)
        + Fraction(a1 * a1 - 3 * a2 * a2 - 3 * a3 * a3, 4)
        - Fraction(a1 * a2 + a2 * a3 + a3 * a1 - a1 - a2 - a3, 2)
        + 1
    )


def denominator_orders(c: Sequence[int], full: bool = False) -> Tuple[int, int]:
    """Two largest slot values: bottom row only, or all ten with full=True."""
    vals = sorted(c[5:] if not full else c)
    return vals[-1], vals[-2]


# ---------------------------------------------------------------------------
# the slot permutation group
# ---------------------------------------------------------------------------

IDENTITY: GroupElement = tuple(range(10))


def _perm(*pairs: Tuple[int, int]) -> GroupElement:
    p = list(range(10))
    for u, v in pairs:
        p[u], p[v] = p[v], p[u]
    return tuple(p)


# Involutions acting on the slot tuple: three parameter swaps and a fourth
# symmetry mixing the two rows (slot order c00,c21,c22,c33,c31|c11,c23,c13,c12,c32).
PERM_A13 = _perm((5, 4), (8, 9), (7, 3))  # a1 <-> a3
PERM_A23 = _perm((1, 4), (2, 9), (6, 3))  # a2 <-> a3
PERM_B23 = _perm((8, 7), (2, 6), (9, 3))  # b2 <-> b3
PERM_MIX = _perm((0, 2), (5, 3), (7, 4))  # row-mixing series transform


def apply_perm(p: GroupElement, c: Sequence) -> tuple:
    return tuple(c[p[i]] for i in range(10))


def compose(first: GroupElement, then: GroupElement) -> GroupElement:
    """Permutation acting as `first` followed by `then`."""
    return tuple(first[then[i]] for i in range(10))


def _word(*gens: GroupElement) -> GroupElement:
    return reduce(compose, gens, IDENTITY)


# Generators of the subgroup fixing the series value itself.
SIGMA: GroupElement = _word(PERM_A23, PERM_B23)
TAU: GroupElement = _word(
    PERM_A23, PERM_A13, PERM_B23, PERM_MIX, PERM_A23, PERM_A13, PERM_B23, PERM_MIX
)


def _closure(gens: Sequence[GroupElement]) -> frozenset:
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                w = compose(p, g)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=1)
def group_generate() -> frozenset:
    """Full slot symmetry group generated by the four involutions: order 120."""
    return _closure((PERM_A13, PERM_A23, PERM_B23, PERM_MIX))


@lru_cache(maxsize=1)
def value_symmetries() -> frozenset:
    """Subgroup generated by SIGMA and TAU, fixing the series value: order 10."""
    return _closure((SIGMA, TAU))


_REP_WORDS = (
    (),
    (PERM_A13, PERM_A23, PERM_A13),
    (PERM_A13,),
    (PERM_A23,),
    (PERM_A13, PERM_A23),
    (PERM_A23, PERM_A13),
    (PERM_MIX, PERM_A13, PERM_A23, PERM_A13),
    (PERM_MIX, PERM_A23),
    (PERM_MIX, PERM_A13, PERM_A23),
    (PERM_MIX, PERM_A23, PERM_A13),
    (PERM_MIX, PERM_A13, PERM_A23, PERM_A13, PERM_MIX, PERM_A23),
    (PERM_MIX, PERM_A13, PERM_A23, PERM_A13, PERM_MIX, PERM_A23, PERM_A13),
)


@lru_cache(maxsize=1)
def coset_representatives() -> Tuple[GroupElement, ...]:
    """Transversal of the value-symmetry subgroup: twelve permutations."""
    return tuple(_word(*w) for w in _REP_WORDS)


def invariants_check(c: Sequence[int]) -> bool:
    """Weight, decay order and total power are constant on the full orbit."""
    params = QParams.from_c(c)
    c = params.c_set
    w = c_weight(c)
    d = c_decay_order(c)
    t = _power_sum_invariant(c)
    for g in group_generate():
        img = apply_perm(g, c)
        if c_weight(img) != w or c_decay_order(img) != d or _power_sum_invariant(img) != t:
            return False
    return _power_sum_invariant(c) == min_power(params) + c_factorial_degree(c)


# ---------------------------------------------------------------------------
# the basic series
# ---------------------------------------------------------------------------


def _q_pochhammer(q: Fraction, n: int) -> Fraction:
    acc = Fraction(1)
    for j in range(1, n + 1):
        acc *= 1 - q ** j
    return acc


def _gq_fraction(params: QParams, q: Fraction, tol: Fraction) -> Tuple[Fraction, Fraction]:
    """Value and rigorous error bound of the normalized series at rational q."""
    a1, a2, a3 = params.a
    _, b2, b3 = params.b
    step = b2 + b3 - a1 - a2 - a3  # >= 1 by admissibility
    pref = (
        _q_pochhammer(q, a2 - 1) * _q_pochhammer(q, a3 - 1)
        * _q_pochhammer(q, b2 - a2 - 1) * _q_pochhammer(q, b3 - a3 - 1)
        / (_q_pochhammer(q, b2 - 1) * _q_pochhammer(q, b3 - 1))
    )
    aq = abs(q)
    scale = max(abs(pref), Fraction(1))
    terminating = a1 <= 0  # a factor (1 - q^0) enters at t = 1 - a1
    term = Fraction(1)
    total = Fraction(0)
    t = 0
    while True:
        total += term
        term = (
            term
            * (1 - q ** (t + a1)) * (1 - q ** (t + a2)) * (1 - q ** (t + a3))
            / ((1 - q ** (t + 1)) * (1 - q ** (t + b2)) * (1 - q ** (t + b3)))
            * q ** step
        )
        t += 1
        if term == 0:
            return pref * total, Fraction(0)
        if terminating:
            continue
        # all remaining numerator exponents are >= t + 1, so the term ratio
        # stays below aq^step ((1+g)/(1-g))^3 with g = aq^{t+1}
        g = aq ** (t + 1)
        ratio = aq ** step * ((1 + g) / (1 - g)) ** 3
        if ratio < 1 and abs(term) * ratio / (1 - ratio) < tol / scale:
            total += term
            return pref * total, abs(pref) * abs(term) * ratio / (1 - ratio)


def gq_value(params: QParams, p: int, tol=1e-20) -> mp.mpf:
    """Normalized basic series at q = 1/p, to absolute accuracy tol.

    Invariant under both swap_symmetry and hall_transform of the
    parameters.  Requires an integer p with |p| >= 2.
    """
    if not isinstance(p, int) or abs(p) < 2:
        raise ValueError("p must be an integer with |p| >= 2")
    tolf = _as_tol(tol)
    val, _ = _gq_fraction(params, Fraction(1, p), tolf)
    return _to_mpf(val, tolf)


# ---------------------------------------------------------------------------
# exact partial fractions and the linear form
# ---------------------------------------------------------------------------


def _kernel_data(params: QParams) -> Tuple[Counter, Counter]:
    """Numerator and denominator shift multisets of the rational kernel."""
    a1, a2, a3 = params.a
    _, b2, b3 = params.b
    num = Counter(range(1, a1))
    den: Counter = Counter()
    for k in range(a2, b2):
        den[k] += 1
    for k in range(a3, b3):
        den[k] += 1
    for k in list(num):
        m = min(num[k], den.get(k, 0))
        if m:
            num[k] -= m
            den[k] -= m
            if not num[k]:
                del num[k]
            if not den[k]:
                del den[k]
    return num, den


def rational_kernel(params: QParams, q: Rat, T: Rat) -> Fraction:
    """The O(T^-2) rational function generating the linear form."""
    a1, a2, a3 = params.a
    _, b2, b3 = params.b
    q = Fraction(q)
    T = Fraction(T)
    c00 = b2 + b3 - a1 - a2 - a3 - 1
    val = (
        _q_pochhammer(q, b2 - a2 - 1) * _q_pochhammer(q, b3 - a3 - 1)
        / _q_pochhammer(q, a1 - 1) * T ** c00
    )
    for j in range(1, a1):
        val *= 1 - q ** j * T
    for j in range(a2, b2):
        val /= 1 - q ** j * T
    for j in range(a3, b3):
        val /= 1 - q ** j * T
    return val


def partial_fractions(params: QParams, q: Rat) -> Tuple[Dict[int, Fraction], Dict[int, Fraction]]:
    """Exact pole coefficients of the kernel at the points T = q^{-k}.

    Returns ({k: A_k}, {k: B_k}) such that the kernel equals
    sum A_k/(1 - q^k T)^2 + sum B_k/(1 - q^k T); the simple-pole residues
    satisfy sum B_k q^{-k} = 0 exactly.  Requires params.is_strict so the
    doubled poles occupy exactly [max(a), min(b2, b3) - 1].
    """
    if not params.is_strict:
        raise ValueError("every upper parameter must lie below both lower ones")
    q = Fraction(q)
    if q == 0 or abs(q) == 1:
        raise ValueError("q must be rational with 0 < |q| < 1 or |q| > 1")
    a1, a2, a3 = params.a
    _, b2, b3 = params.b
    c00 = b2 + b3 - a1 - a2 - a3 - 1
    num, den = _kernel_data(params)
    c_const = (
        _q_pochhammer(q, b2 - a2 - 1) * _q_pochhammer(q, b3 - a3 - 1)
        / _q_pochhammer(q, a1 - 1)
    )
    double: Dict[int, Fraction] = {}
    simple: Dict[int, Fraction] = {}
    for k, mult in sorted(den.items()):
        t0 = q ** -k
        g0 = c_const * t0 ** c00
        for j, mj in num.items():
            g0 *= (1 - q ** j * t0) ** mj
        for j, mj in den.items():
            rest = mj - (mult if j == k else 0)
            if rest:
                g0 /= (1 - q ** j * t0) ** rest
        if mult == 1:
            simple[k] = g0
        else:
            double[k] = g0
            # logarithmic derivative of the factors regular at t0
            ld = Fraction(c00) / t0
            for j, mj in num.items():
                ld -= mj * q ** j / (1 - q ** j * t0)
            for j, mj in den.items():
                rest = mj - (mult if j == k else 0)
                if rest:
                    ld += rest * q ** j / (1 - q ** j * t0)
            simple[k] = -t0 * g0 * ld
    residue = sum(bv * q ** -k for k, bv in simple.items())
    if residue != 0:
        raise ArithmeticError("simple residues do not cancel at infinity")
    return double, simple


def double_pole_coefficient(params: QParams, k: int, q: Rat) -> Fraction:
    """Closed product form for the double-pole coefficient A_k."""
    a1, a2, a3 = params.a
    _, b2, b3 = params.b
    x = 1 / Fraction(q)
    exp = (
        k * k - k * (a1 + a2 + a3)
        + a1 * (a1 - 1) // 2 - a2 * (a2 - 1) // 2 - a3 * (a3 - 1) // 2
        + a2 * (b2 - 1) + a3 * (b3 - 1)
    )
    sign = -1 if (a1 + a2 + a3 - 1) % 2 else 1
    return (
        sign * x ** exp
        * q_binomial_at(k - 1, a1 - 1, x)
        * q_binomial_at(b2 - a2 - 1, k - a2, x)
        * q_binomial_at(b3 - a3 - 1, k - a3, x)
    )


@dataclass(frozen=True)
class QLinearForm:
    """Exact linear form A zeta_q(2) - B attached to a parameter set at q = 1/p.

    min_power is the guaranteed lower bound for the power of p carried by
    both coefficients once the two cyclotomic-factorial denominators (of
    the orders given) are cleared; power_probe is the valuation actually
    observed at this p.
    """

    params: QParams
    p: int
    A: Fraction
    B: Fraction
    value: mp.mpf
    min_power: Fraction
    power_probe: int
    orders: Tuple[int, int]
    double_part: Mapping[int, Fraction]
    simple_part: Mapping[int, Fraction]


def decompose_q(params: QParams, p: int, tol=Fraction(1, 10 ** 30)) -> QLinearForm:
    """Resolve the series at q = 1/p into A zeta_q(2) - B with exact A, B.

    The double-pole coefficients are computed twice (partial fractions
    and the closed q-binomial product) and must agree exactly; the
    denominators of A and B must divide the product of the two largest
    bottom-row cyclotomic factorials up to a power of p.  `value` is the
    form itself to absolute accuracy tol.
    """
    if not isinstance(p, int) or abs(p) < 2:
        raise ValueError("p must be an integer with |p| >= 2")
    tolf = _as_tol(tol)
    q = Fraction(1, p)
    double, simple = partial_fractions(params, q)
    coeff_a = Fraction(0)
    coeff_b = Fraction(0)
    for k, av in double.items():
        if av != double_pole_coefficient(params, k, q):
            raise ArithmeticError("double-pole coefficient routes disagree")
        coeff_a += av * q ** -k
        coeff_b += av * q ** -k * q_harmonic(q, k, 2)
    for k, bv in simple.items():
        coeff_b += bv * q ** -k * q_harmonic(q, k, 1)
    zq2, zerr = _zeta_q_fraction(2, q, tolf / (2 * (abs(coeff_a) + 1)))
    value = _to_mpf(coeff_a * zq2 - coeff_b, tolf)
    m1, m2 = denominator_orders(params.c_set)
    modulus = dn_poly_eval(m1, p) * dn_poly_eval(m2, p)
    probes = []
    for coeff in (coeff_a, coeff_b):
        scaled = coeff * modulus
        den = scaled.denominator
        ap = abs(p)
        while den % ap == 0:
            den //= ap
        if den != 1:
            raise ArithmeticError("denominator escapes the cyclotomic modulus")
        if coeff:
            probes.append(_int_valuation(scaled, p))
    return QLinearForm(
        params=params, p=p, A=coeff_a, B=coeff_b, value=value,
        min_power=min_power(params), power_probe=min(probes),
        orders=(m1, m2),
        double_part=dict(sorted(double.items())),
        simple_part=dict(sorted(simple.items())),
    )


# ---------------------------------------------------------------------------
# the q-deformed classical approximations
# ---------------------------------------------------------------------------


def apery_q_coefficient(n: int, q: Rat = 1) -> Rat:
    """q-deformation of the classical zeta(2) coefficients u'_n.

    sum_k qbinom(n+k, k) qbinom(n, k)^2 q^{k^2 - 2kn}; at q = 1 this is
    the integer sequence 1, 3, 19, 147, ...
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    if q == 1:
        return sum(binomial(n + k, k) * binomial(n, k) ** 2 for k in range(n + 1))
    q = Fraction(q)
    acc = Fraction(0)
    for k in range(n + 1):
        acc += (
            q_binomial_at(n + k, k, q) * q_binomial_at(n, k, q) ** 2
            * q ** (k * k - 2 * k * n)
        )
    return acc


def apery_q_form(n: int, p: int, tol=Fraction(1, 10 ** 30)) -> Tuple[Fraction, Fraction, mp.mpf]:
    """Normalized form A_n(q) zeta_q(2) - B_n(q) at q = 1/p.

    Renormalizes the symmetric parameter set (n+1, n+1, n+1; 1, 2n+2, 2n+2)
    by (-1)^n q^{(3n+2)(n+1)/2}; then A_n(q) equals apery_q_coefficient(n, q)
    exactly, A_n(1) = u'_n, and (1-q)^2 B_n(q) -> v'_n as q -> 1.
    """
    params = QParams((n + 1, n + 1, n + 1), (1, 2 * n + 2, 2 * n + 2))
    form = decompose_q(params, p, tol)
    q = Fraction(1, p)
    pref = (-1 if n % 2 else 1) * q ** ((3 * n + 2) * (n + 1) // 2)
    with mp.workdps(dps_for_tol(float(_as_tol(tol))) + 10):
        value = mp.mpf(pref.numerator) / pref.denominator * form.value
    return pref * form.A, pref * form.B, value


# ---------------------------------------------------------------------------
# directions, the periodic floor excess and certificates
# ---------------------------------------------------------------------------


def direction_set(alpha: Sequence[int], beta: Sequence[int]) -> Tuple[int, ...]:
    """Slot tuple of an admissible direction vector (alpha | beta)."""
    alpha = tuple(int(x) for x in alpha)
    beta = tuple(int(x) for x in beta)
    if len(alpha) != 3 or len(beta) != 2:
        raise ValueError("expected three upper and two lower directions")
    if any(x < 0 for x in alpha) or any(x < 0 for x in beta):
        raise ValueError("directions must be nonnegative")
    if any(aj > bk for aj in alpha for bk in beta):
        raise ValueError("upper directions must not exceed the lower ones")
    if sum(alpha) > sum(beta):
        raise ValueError("direction sum exceeds beta2 + beta3")
    a1, a2, a3 = alpha
    b2, b3 = beta
    return (
        b2 + b3 - a1 - a2 - a3,
        a2, b2 - a2, b3 - a3, a3,
        a1, b3 - a2, b3 - a1, b2 - a1, b2 - a3,
    )


def phi_profile(c: Sequence[int]) -> StepFunction:
    """Periodic floor-sum excess of the twelve coset images of c.

    phi(x) = max_g sum_top (floor(c_i x) - floor((gc)_i x)); it is
    1-periodic, nonnegative, and gives the exact cyclotomic exponent
    nu_l = phi(n/l) of the denominator correction at scale n.
    """
    c = tuple(int(v) for v in c)
    tops = [apply_perm(g, c)[:5] for g in coset_representatives()]
    base = tops[0]
    vals = sorted({v for top in tops for v in top if v > 0})
    points = sorted({Fraction(j, v) for v in vals for j in range(v)}) or [Fraction(0)]
    levels = []
    for i, lo in enumerate(points):
        hi = points[i + 1] if i + 1 < len(points) else Fraction(1)
        x = (lo + hi) / 2
        ref = sum(math.floor(v * x) for v in base)
        levels.append(max(ref - sum(math.floor(v * x) for v in top) for top in tops))
    merged_b: List[Fraction] = []
    merged_l: List[int] = []
    for pt, lv in zip(points, levels):
        if merged_l and merged_l[-1] == lv:
            continue
        merged_b.append(pt)
        merged_l.append(lv)
    return StepFunction(merged_b, merged_l)


def omega_exponents(c: Sequence[int], n: int) -> List[int]:
    """Cyclotomic exponents nu_l, l = 1..max(c) n, of the denominator correction."""
    c = tuple(int(v) for v in c)
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    tops = [apply_perm(g, c)[:5] for g in coset_representatives()]
    base = tops[0]
    out = []
    for l in range(1, max(c) * n + 1):
        ref = sum(v * n // l for v in base)
        out.append(max(ref - sum(v * n // l for v in top) for top in tops))
    return out


def omega_value(c: Sequence[int], n: int, p: int) -> int:
    """Product of |Phi_l(p)|^{nu_l}: the removable cyclotomic factor."""
    acc = 1
    for l, nu in enumerate(omega_exponents(c, n), start=1):
        if nu:
            acc *= abs(cyclotomic(l)(p)) ** nu
    return acc


def certificate_q(alpha: Sequence[int], beta: Sequence[int], p: int, tol: float = 1e-10) -> dict:
    """Irrationality-measure certificate for zeta_q(2), uniform in q = 1/p.

    C0 = mu - (3/pi^2)(m1^2 + m2^2 - integral of phi against -psi'), with
    m1 >= m2 the two largest slot values of the direction set; C1 =
    beta2 beta3 - (alpha1^2 + alpha2^2 + alpha3^2)/2.  When C0 > 0 the
    irrationality measure of zeta_q(2) is at most C1/C0 for every
    q = 1/p with integer |p| >= 2.  The returned dict also carries an
    exact divisibility audit of the n = 1 form at the requested p.
    """
    if not isinstance(p, int) or abs(p) < 2:
        raise ValueError("p must be an integer with |p| >= 2")
    c = direction_set(alpha, beta)
    a1, a2, a3 = (int(x) for x in alpha)
    b2, b3 = (int(x) for x in beta)
    phi = phi_profile(c)
    m1, m2 = denominator_orders(c, full=True)
    mu = (
        Fraction(a2 * b2 + a3 * b3)
        + Fraction(a1 * a1 - 3 * a2 * a2 - 3 * a3 * a3, 4)
        - Fraction(a1 * a2 + a2 * a3 + a3 * a1, 2)
    )
    c1 = Fraction(b2 * b3) - Fraction(a1 * a1 + a2 * a2 + a3 * a3, 2)
    with mp.workdps(dps_for_tol(tol) + 10):
        phi_integral = step_integral(phi, "dneg_trigamma", tol / 100)
        c0 = (
            mp.mpf(mu.numerator) / mu.denominator
            - 3 / mp.pi ** 2 * (m1 * m1 + m2 * m2 - phi_integral)
        )
        bound = (mp.mpf(c1.numerator) / c1.denominator) / c0 if c0 > 0 else None
    # exact one-step divisibility audit at the requested base
    form = decompose_q(QParams.from_directions(alpha, beta, 1), p)
    clearing = Fraction(dn_poly_eval(m1, p) * dn_poly_eval(m2, p), omega_value(c, 1, p))
    need = math.ceil(min_power(form.params))
    audit = all(
        (coeff * clearing / Fraction(p) ** need).denominator == 1
        for coeff in (form.A, form.B)
    )
    if c0 > 0:
        conclusion = (
            "zeta_q(2) is irrational with measure at most %s for every q = 1/p, "
            "p integer, |p| >= 2" % mp.nstr(bound, 12)
        )
    else:
        conclusion = "no irrationality conclusion"
    return {
        "alpha": tuple(int(x) for x in alpha),
        "beta": tuple(int(x) for x in beta),
        "p": p,
        "directions": c,
        "orders": (m1, m2),
        "mu": mu,
        "phi": phi,
        "phi_integral": phi_integral,
        "C0": c0,
        "C1": c1,
        "bound": bound,
        "divisibility_check": audit,
        "conclusion": conclusion,
    }
