"""Series evaluation routes and classical summation identities."""

from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforms.hypergeom import (
    classical_oracles,
    dougall_5f4,
    dougall_terminating_5f4,
    euler_integral_2f1,
    gamma_quotient,
    pFq,
    pfaff_saalschutz,
    pfq_exact,
    termination_index,
    whipple_6f5,
    whipple_7f6,
)
from zetaforms.number_core import pochhammer


def test_termination_index():
    assert termination_index([Fraction(-3), Fraction(1, 2)]) == 3
    assert termination_index([-5, -2]) == 2
    assert termination_index([Fraction(1, 2), 4]) is None
    assert termination_index([0]) == 0


def test_pfq_exact_chu_vandermonde():
    # 2F1(-n, b; c; 1) = (c-b)_n / (c)_n
    for n in range(8):
        b, c = Fraction(1, 3), Fraction(5, 2)
        lhs = pfq_exact([-n, b], [c], 1)
        rhs = Fraction(pochhammer(c - b, n)) / pochhammer(c, n)
        assert lhs == rhs


def test_pfq_exact_binomial_theorem():
    # 1F0(-n; ; z) = (1 - z)^n
    for n in range(6):
        z = Fraction(2, 7)
        assert pfq_exact([-n], [], z) == (1 - z) ** n


def test_pfq_exact_termination_guards():
    with pytest.raises(ValueError):
        pfq_exact([Fraction(1, 2)], [1], 1)
    with pytest.raises(ValueError):
        pfq_exact([-5], [-2], 1)
    # lower parameter equal to the termination index is fine
    v = pfq_exact([-3, Fraction(1, 2)], [-3], 1)
    assert isinstance(v, Fraction)


def test_pfq_terminating_matches_exact():
    v = pFq([-4, Fraction(1, 2)], [Fraction(7, 3)], Fraction(1, 2), tol=1e-20)
    e = pfq_exact([-4, Fraction(1, 2)], [Fraction(7, 3)], Fraction(1, 2))
    with mp.workdps(30):
        assert abs(v - mp.mpf(e.numerator) / e.denominator) < 1e-20


def test_pfq_inside_disc_vs_mpmath():
    with mp.workdps(30):
        ref = mp.hyp2f1(mp.mpf(1) / 3, mp.mpf(1) / 2, mp.mpf(7) / 4, mp.mpf(3) / 5)
    v = pFq([Fraction(1, 3), Fraction(1, 2)], [Fraction(7, 4)], Fraction(3, 5), tol=1e-18)
    assert abs(v - ref) < 1e-17


def test_pfq_gauss_at_unity():
    # 2F1(a,b;c;1) = G(c)G(c-a-b) / (G(c-a)G(c-b)) when c - a - b > 0
    a, b, c = Fraction(1, 4), Fraction(1, 3), Fraction(3, 2)
    v = pFq([a, b], [c], 1, tol=1e-15)
    ref = gamma_quotient([c, c - a - b], [c - a, c - b])
    assert abs(v - ref) < 1e-14


def test_pfq_alternating_at_minus_one():
    # 2F1(a, b; c; -1) via Kummer against mpmath
    a, b, c = Fraction(2, 3), Fraction(1, 2), Fraction(9, 5)
    with mp.workdps(30):
        ref = mp.hyp2f1(mp.mpf(2) / 3, mp.mpf(1) / 2, mp.mpf(9) / 5, -1)
    v = pFq([a, b], [c], -1, tol=1e-15)
    assert abs(v - ref) < 1e-14


def test_pfq_divergence_errors():
    with pytest.raises(ValueError):
        pFq([Fraction(3, 2), 1], [Fraction(3, 2)], 1)
    with pytest.raises(ValueError):
        pFq([Fraction(1, 2)], [], Fraction(3, 2))


def test_euler_integral_matches_series():
    a, b, c = Fraction(1, 2), Fraction(2, 3), Fraction(5, 2)
    for z in (Fraction(1, 3), Fraction(-4, 5), Fraction(9, 10)):
        vi = euler_integral_2f1(a, b, c, z, tol=1e-13)
        vs = pFq([a, b], [c], z, tol=1e-15)
        assert abs(vi - vs) < 1e-12


def test_euler_integral_validation():
    with pytest.raises(ValueError):
        euler_integral_2f1(1, Fraction(5, 2), 2, Fraction(1, 2))
    with pytest.raises(ValueError):
        euler_integral_2f1(1, Fraction(1, 2), 2, Fraction(3, 2))


def test_pfaff_saalschutz_examples():
    lhs, rhs = pfaff_saalschutz(3, Fraction(1, 2), Fraction(1, 3), Fraction(5, 4))
    assert lhs == rhs
    lhs, rhs = pfaff_saalschutz(0, Fraction(7, 2), Fraction(-5, 3), Fraction(1, 4))
    assert lhs == rhs == 1


@given(
    n=st.integers(min_value=0, max_value=7),
    an=st.integers(min_value=-8, max_value=8),
    ad=st.sampled_from([1, 2, 3, 5]),
    bn=st.integers(min_value=-8, max_value=8),
    bd=st.sampled_from([1, 2, 3, 5]),
    cn=st.integers(min_value=1, max_value=12),
    cd=st.sampled_from([2, 3, 5, 7]),
)
@settings(max_examples=60, deadline=None)
def test_pfaff_saalschutz_property(n, an, ad, bn, bd, cn, cd):
    a, b, c = Fraction(an, ad), Fraction(bn, bd), Fraction(cn, cd)
    try:
        lhs, rhs = pfaff_saalschutz(n, a, b, c)
    except (ZeroDivisionError, ValueError):
        return
    assert lhs == rhs


def test_dougall_numeric():
    lhs, rhs = dougall_5f4(Fraction(3, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5), tol=1e-14)
    assert abs(lhs - rhs) < 1e-12


def test_whipple_numeric():
    lhs, rhs = whipple_6f5(
        Fraction(3, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5), Fraction(2, 5), tol=1e-14
    )
    assert abs(lhs - rhs) < 1e-12


def test_dougall_terminating_exact():
    for m in range(6):
        lhs, rhs = dougall_terminating_5f4(Fraction(7, 2), Fraction(1, 3), Fraction(-3, 4), m)
        assert lhs == rhs


def test_whipple_7f6_exact():
    for m in range(5):
        lhs, rhs = whipple_7f6(
            Fraction(9, 2), Fraction(1, 3), Fraction(2, 3), Fraction(-1, 4), Fraction(1, 5), m
        )
        assert lhs == rhs


def test_dougall_convergence_guard():
    with pytest.raises(ValueError):
        dougall_5f4(1, 2, 3, 4)


def test_classical_oracles_report():
    report = classical_oracles(seed=7, exact_trials=30, numeric_trials=5, tol=1e-12)
    assert report.ok
    assert report.exact_checked >= 60
    assert report.numeric_checked == 10
    assert report.max_numeric_error <= 1e-10
