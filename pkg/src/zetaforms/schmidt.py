"""Integrality of the coefficients in a binomial Legendre-type transform.

For each power r >= 1 the numbers c_n = c_n^{(r)} are defined by
expanding the r-th power diagonal sums over the shifted Legendre basis:

    sum_k binom(n,k)^r binom(n+k,k)^r = sum_k binom(n,k) binom(n+k,k) c_k.

For r = 1 every c_n is 1 and for r = 2 the c_n are the Franel numbers
sum_j binom(n,j)^3; the surprise is that c_n^{(r)} is an integer for
every r.  Inverting the transform with the kernel

    d_{n,k} = binom(2n, n-k) - binom(2n, n-k-1)
            = (2k+1)/(n+k+1) * binom(2n, n-k)

gives binom(2n,n) c_n = sum_j binom(2j,j)^r t_{n,j} where

    t_{n,j} = sum_{k=j}^{n} (-1)^{n-k} d_{n,k} binom(k+j, k-j)^r,

and classical hypergeometric summations (Dougall's 5F4, Whipple's 7F6,
and Andrews' multiple-series generalisation) evaluate t_{n,j} as
manifestly nonnegative nested binomial sums.  Those evaluations prove
the divisibility binom(2n,n) | binom(2j,j)^r t_{n,j} and hence the
integrality of c_n^{(r)}, and they collapse to closed single sums for
small r, e.g. c_n^{(3)} = sum_j binom(2j,j)^2 binom(2j,n-j) binom(n,j)^2.

c_schmidt computes each value along three independent routes (the
triangular solve of the defining identity, the t-sum, and the nested
closed forms) and refuses to return unless all three agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .number_core import binomial

__all__ = [
    "SchmidtRow",
    "c_schmidt",
    "d_coeff",
    "legendre_solve",
    "schmidt_row",
    "t_coeff",
]


@dataclass(frozen=True)
class SchmidtRow:
    """Row n of the integer table for one power r: c_n and its t-decomposition."""

    n: int
    r: int
    c: int
    t: Tuple[int, ...]


def _check_nr(n: int, r: int) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if r < 1:
        raise ValueError("r must be a positive integer")


def d_coeff(n: int, k: int) -> int:
    """Inversion kernel d_{n,k}, computed by both closed forms.

    The difference binom(2n,n-k) - binom(2n,n-k-1) and the quotient
    (2k+1) binom(2n,n-k) / (n+k+1) must agree; a mismatch would mean a
    broken binomial routine, so it is checked on every call.
    """
    if n < 0 or k < 0:
        raise ValueError("d_coeff needs n >= 0 and k >= 0")
    diff = binomial(2 * n, n - k) - binomial(2 * n, n - k - 1)
    num = (2 * k + 1) * binomial(2 * n, n - k)
    if num % (n + k + 1) != 0 or diff != num // (n + k + 1):
        raise ArithmeticError(f"d_coeff forms disagree at (n,k)=({n},{k})")
    return diff


def t_coeff(n: int, j: int, r: int) -> int:
    """Alternating t-coefficient t_{n,j} of the inverted transform."""
    _check_nr(n, r)
    if not 0 <= j <= n:
        raise ValueError("t_coeff needs 0 <= j <= n")
    return sum(
        (-1) ** ((n - k) % 2) * d_coeff(n, k) * binomial(k + j, k - j) ** r
        for k in range(j, n + 1)
    )


def legendre_solve(r: int, N: int) -> List[Fraction]:
    """Solve the defining identity for c_0..c_N by triangular back-substitution.

    This is the defining route: row n of the identity determines c_n from
    c_0..c_{n-1} by one exact division by binom(2n,n).  Results are exact
    rationals; integrality is a theorem about them, not an assumption of
    the solver.
    """
    _check_nr(N, r)
    c: List[Fraction] = []
    for n in range(N + 1):
        lhs = sum(binomial(n, k) ** r * binomial(n + k, k) ** r for k in range(n + 1))
        known = sum(binomial(n, k) * binomial(n + k, k) * c[k] for k in range(n))
        c.append(Fraction(lhs - known, binomial(2 * n, n)))
    return c


def _chain_sum(n: int, j: int, s: int, odd: bool) -> int:
    """Nested sum over chains n >= k_1 >= ... >= k_{s-1} >= j.

    Level 1 carries the boundary factors (they differ between even and
    odd r), interior levels carry binom(2j, k_{l-1}-k_l) binom(k_l+j,
    k_l-j)^2, and the chain terminates with binom(2j, k_{s-1}-j).  For
    s = 1 the chain is empty and only the terminal factor survives.
    """

    def descend(level: int, prev: int) -> int:
        if level > s - 1:
            return binomial(2 * j, prev - j)
        total = 0
        for k in range(j, prev + 1):
            if level == 1:
                factor = (
                    binomial(2 * j, n - k) * binomial(k + j, k - j) ** 2
                    if odd
                    else binomial(j, n - k) * binomial(k, j) * binomial(k + j, k - j)
                )
            else:
                factor = binomial(2 * j, prev - k) * binomial(k + j, k - j) ** 2
            if factor:
                total += factor * descend(level + 1, k)
        return total

    return descend(1, n)


def _closed_c(n: int, r: int) -> int:
    """Manifestly integral closed form for c_n^{(r)}.

    r = 2 and r = 3 have single-sum evaluations (Franel, Strehl); for
    r >= 4 the general nested sums take over, with the weight binom(n,j)
    for even r and binom(n,j)^2 for odd r.
    """
    if r == 1:
        return 1
    if r == 2:
        return sum(binomial(n, j) ** 3 for j in range(n + 1))
    if r == 3:
        return sum(
            binomial(2 * j, j) ** 2 * binomial(2 * j, n - j) * binomial(n, j) ** 2
            for j in range(n + 1)
        )
    s, rem = divmod(r, 2)
    odd = rem == 1
    total = 0
    for j in range(n + 1):
        weight = binomial(n, j) ** 2 if odd else binomial(n, j)
        if weight:
            total += binomial(2 * j, j) ** (r - 1) * weight * _chain_sum(n, j, s, odd)
    return total


@lru_cache(maxsize=None)
def _c_all_routes(n: int, r: int) -> int:
    solved = legendre_solve(r, n)[n]
    central = binomial(2 * n, n)
    tsum = sum(binomial(2 * j, j) ** r * t_coeff(n, j, r) for j in range(n + 1))
    if tsum % central != 0:
        raise ArithmeticError(f"t-sum for (n,r)=({n},{r}) is not divisible by binom(2n,n)")
    via_t = tsum // central
    closed = _closed_c(n, r)
    if not solved == via_t == closed:
        raise ArithmeticError(
            f"c routes disagree at (n,r)=({n},{r}): "
            f"solve={solved}, t-sum={via_t}, closed={closed}"
        )
    return closed


def c_schmidt(n: int, r: int) -> int:
    """The integer c_n^{(r)}, cross-checked along three independent routes.

    Routes: the triangular solve of the defining identity, the t-sum
    binom(2n,n)^{-1} sum_j binom(2j,j)^r t_{n,j}, and the nested closed
    forms.  Any disagreement, or a non-integral solve value, raises.
    """
    _check_nr(n, r)
    return _c_all_routes(n, r)


def schmidt_row(n: int, r: int) -> SchmidtRow:
    """Assemble row n for power r with every per-row divisibility verified.

    Checks binom(2n,n) | binom(2j,j)^r t_{n,j} for each 0 <= j <= n
    before returning, so a constructed row certifies the divisibility
    claim, not just the final integer.
    """
    _check_nr(n, r)
    central = binomial(2 * n, n)
    t = []
    for j in range(n + 1):
        tj = t_coeff(n, j, r)
        if (binomial(2 * j, j) ** r * tj) % central != 0:
            raise ArithmeticError(
                f"binom(2n,n) does not divide binom(2j,j)^r t at (n,j,r)=({n},{j},{r})"
            )
        t.append(tj)
    return SchmidtRow(n=n, r=r, c=c_schmidt(n, r), t=tuple(t))
