"""Brick calculus, zeta-form decompositions, phi corrections and saddles."""

import math
import random
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetaforms.analysis_core import zeta_em
from zetaforms.apery import apery_zeta2, apery_zeta3
from zetaforms.number_core import lcm_upto, primes_in
from zetaforms.wellpoised import (
    Brick,
    BrickProduct,
    OddZetaParams,
    _nu_kp,
    balanced_product,
    brick_taylor,
    decompose_form,
    denominator_data,
    direction_polynomial,
    f_series,
    inclusion_check,
    intro_saddle,
    j_integral,
    nu_exponents,
    phi_correction,
    phi_step,
    prop11_scaling_check,
    reconstruct_at,
    saddle_asymptotics,
    series_value,
    theorem1_certificate,
    theorem2_check,
    theorem8_s1,
    wellpoised_product,
)

THEOREM1_ETA = (91, 27, 27, 27, 29, 30, 31, 32, 33, 34, 35, 36, 37, 38)


class TestBricks:
    def test_polynomial_values(self):
        # R(4,1;t) = (t+1)(t+2)(t+3)/3!
        b = Brick(4, 1)
        assert b.value_at(0) == 1
        assert b.value_at(1) == 4
        assert b.value_at(-2) == 0

    def test_reciprocal_values(self):
        # R(1,4;t) = 2!/((t+1)(t+2)(t+3))
        b = Brick(1, 4)
        assert b.value_at(0) == Fraction(2, 6)
        assert b.value_at(1) == Fraction(2, 24)

    def test_taylor_shift_example(self):
        p = BrickProduct([Brick(2, 1)])
        assert brick_taylor(p, 3, 1) == (Fraction(-2), Fraction(1))

    def test_integer_values_of_polynomial_bricks(self):
        rng = random.Random(11)
        for _ in range(100):
            b_lo = rng.randint(-3, 5)
            a = b_lo + rng.randint(0, 6)
            k = rng.randint(-8, 8)
            assert Brick(a, b_lo).value_at(k).denominator == 1

    def test_scaled_derivatives_are_integers(self):
        # D_{a-b}^j R^{(j)}(-k)/j! is an integer for polynomial bricks
        rng = random.Random(23)
        for _ in range(60):
            b_lo = rng.randint(-2, 3)
            a = b_lo + rng.randint(1, 7)
            p = BrickProduct([Brick(a, b_lo)])
            d = lcm_upto(a - b_lo)
            k = rng.randint(-6, 6)
            for j in range(0, 4):
                val = p.derivative_at(-k, j) * d**j
                assert val.denominator == 1

    def test_cleared_pole_derivatives_are_integers(self):
        # reciprocal brick times (t+k): scaled Taylor coefficients at -k
        # have denominators dividing powers of D_{b-a-1}
        rng = random.Random(37)
        for _ in range(40):
            a = rng.randint(-2, 2)
            b = a + rng.randint(2, 7)
            k = rng.randint(a, b - 1)
            p = BrickProduct([Brick(a, b)])
            d = lcm_upto(b - a - 1)
            e, coeffs = p.taylor_at(-k, 3)
            assert e == -1
            for j, c in enumerate(coeffs):
                assert (c * d**j).denominator == 1


class TestPartialFractions:
    def test_reconstruction_exact(self):
        rng = random.Random(5)
        R = balanced_product(3, 2)
        parts = R.partial_fractions()
        for _ in range(20):
            t = Fraction(rng.randint(-50, 50), rng.randint(1, 9)) + Fraction(1, 97)
            if any(t == -k for k in parts):
                continue
            assert reconstruct_at(parts, t) == R.value_at(t)

    def test_residues_sum_to_zero(self):
        for s, n in [(3, 1), (3, 4), (5, 2), (2, 3)]:
            R = balanced_product(s, n)
            assert R.decay_order() >= 2
            total = Fraction(0)
            for pp in R.partial_fractions().values():
                total += pp.get(1, Fraction(0))
            assert total == 0

    def test_reflection_symmetry(self):
        # for odd s the principal parts satisfy B_{jk} = (-1)^{j+1} B_{j,n-k}
        for s, n in [(3, 3), (5, 2)]:
            parts = balanced_product(s, n).partial_fractions()
            for k, pp in parts.items():
                for e, c in pp.items():
                    mirror = parts.get(n - k, {}).get(e, Fraction(0))
                    assert c == (-1) ** (e + 1) * mirror

    @given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=4))
    @settings(max_examples=25, deadline=None)
    def test_reconstruction_property(self, s, n):
        R = balanced_product(s, n)
        parts = R.partial_fractions()
        t = Fraction(3, 7) + n
        assert reconstruct_at(parts, t) == R.value_at(t)


class TestSeriesRoutes:
    def test_depth3_matches_apery_forms(self):
        with mp.workdps(40):
            z3 = zeta_em(3, tol=1e-38)
            for n in range(3):
                pair = apery_zeta3(n)
                ref = 2 * (pair.u * z3 - mp.mpf(pair.v.numerator) / pair.v.denominator)
                val = f_series(3, n, tol=1e-30)
                assert abs(val - ref) < 1e-28

    def test_depth2_matches_apery_forms(self):
        with mp.workdps(40):
            z2 = zeta_em(2, tol=1e-38)
            for n in range(3):
                pair = apery_zeta2(n)
                ref = pair.u * z2 - mp.mpf(pair.v.numerator) / pair.v.denominator
                val = f_series(2, n, tol=1e-30)
                assert abs(val - (-1) ** n * ref) < 1e-28


class TestDecomposition:
    def test_depth3_specialization(self):
        # h = (5; 2,2,2,2,2) reindexes the depth-3 series at n=1
        form = decompose_form(OddZetaParams(q=5, r=1, h=(5, 2, 2, 2, 2, 2)))
        assert form.basis == (3,)
        assert form.coeffs[3] == 10  # 2 u_1
        assert form.a0 == 12  # 2 v_1
        with mp.workdps(30):
            ref = 2 * (5 * zeta_em(3, tol=1e-28) - 6)
            assert abs(form.value - ref) < 1e-20

    def test_value_matches_direct_series(self):
        cases = [
            OddZetaParams(q=5, r=1, h=(7, 2, 2, 2, 3, 3)),
            OddZetaParams(q=5, r=1, h=(9, 2, 3, 3, 3, 4)),
            OddZetaParams(q=7, r=3, h=(15, 3, 3, 3, 4, 4, 4, 5)),
            OddZetaParams(q=7, r=1, h=(9, 2, 2, 2, 3, 3, 4, 4)),
            OddZetaParams(q=7, r=3, h=(17, 3, 3, 4, 4, 5, 5, 6)),
            OddZetaParams(q=9, r=3, h=(14, 3, 3, 3, 3, 4, 4, 4, 4, 4)),
        ]
        for params in cases:
            form = decompose_form(params, tol=1e-18)
            direct = series_value(params, tol=1e-18)
            assert abs(form.value - direct) < 1e-15

    def test_basis_spacing(self):
        form = decompose_form(OddZetaParams(q=7, r=3, h=(15, 3, 3, 3, 4, 4, 4, 5)))
        assert form.basis == (5,)
        form = decompose_form(OddZetaParams(q=9, r=3, h=(14, 3, 3, 3, 3, 4, 4, 4, 4, 4)))
        assert form.basis == (5, 7)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            OddZetaParams(q=6, r=1, h=(7, 2, 2, 2, 3, 3, 3))  # even q
        with pytest.raises(ValueError):
            OddZetaParams(q=5, r=3, h=(7, 2, 2, 2, 3, 3))  # q < r + 4
        with pytest.raises(ValueError):
            OddZetaParams(q=5, r=1, h=(7, 3, 2, 2, 3, 3))  # not sorted
        with pytest.raises(ValueError):
            OddZetaParams(q=5, r=1, h=(7, 2, 2, 2, 3, 4))  # 2 h_q >= h0
        with pytest.raises(ValueError):
            OddZetaParams(q=5, r=1, h=(9, 4, 4, 4, 4, 4))  # balance fails

    def test_prop11_scaling(self):
        cases = [
            OddZetaParams(q=5, r=1, h=(7, 2, 2, 2, 3, 3)),
            OddZetaParams(q=5, r=1, h=(9, 2, 3, 3, 3, 4)),
            OddZetaParams(q=7, r=3, h=(15, 3, 3, 3, 4, 4, 4, 5)),
            OddZetaParams(q=7, r=1, h=(9, 2, 2, 2, 3, 3, 4, 4)),
            OddZetaParams(q=7, r=3, h=(17, 3, 3, 4, 4, 5, 5, 6)),
        ]
        for params in cases:
            assert prop11_scaling_check(params)


class TestPhi:
    def test_theorem1_phi_profile(self):
        phi = phi_step(THEOREM1_ETA, 3)
        values = phi.value_set()
        assert max(values) == 9
        assert 1 not in values  # first two superlevel sets coincide
        # spot values near the origin
        assert phi.value_at(Fraction(1, 100)) == 0
        assert phi.value_at(Fraction(1, 45)) == 3
        assert phi.value_at(Fraction(1, 38) + Fraction(1, 10**4)) == 4
        assert phi.value_at(Fraction(1, 37) + Fraction(1, 10**4)) == 5
        assert phi.value_at(Fraction(1, 36) + Fraction(1, 10**4)) == 6
        # vanishing window before 1: [36/37, 90/91)
        assert phi.value_at(Fraction(975, 1000)) == 0
        assert phi.value_at(Fraction(995, 1000)) >= 2

    def test_periodic_and_direct_exponents_agree(self):
        n = 1
        h = (THEOREM1_ETA[0] * n + 2,) + tuple(e * n + 1 for e in THEOREM1_ETA[1:])
        params = OddZetaParams(q=13, r=3, h=h)
        data = denominator_data(params)
        direct = {}
        for p in primes_in(math.isqrt(h[0]), data["m"][-1]):
            direct[p] = min(_nu_kp(params, k, p) for k in range(h[4], h[0] - h[4] + 1))
        assert nu_exponents(THEOREM1_ETA, 3, n) == direct

    def test_exponents_nonnegative(self):
        for n in (1, 2, 5):
            exps = nu_exponents(THEOREM1_ETA, 3, n)
            assert all(v >= 0 for v in exps.values())

    def test_correction_constants(self):
        corr = phi_correction(THEOREM1_ETA, 3, n=1, tol=1e-9)
        assert corr["m"] == (35, 34, 33, 33, 33, 33, 33, 33, 33, 33)
        assert corr["d_sum"] == 403
        assert abs(corr["correction"] - mp.mpf("176.75055734")) < 1e-6
        assert abs(corr["C1"] - mp.mpf("226.24944266")) < 1e-6

    def test_log_phi_converges_to_integral(self):
        corr = phi_correction(THEOREM1_ETA, 3, n=1, tol=1e-7)
        limit = float(corr["correction"])
        exps = nu_exponents(THEOREM1_ETA, 3, 60)
        lg = sum(v * math.log(p) for p, v in exps.items()) / 60
        assert abs(lg / limit - 1) < 0.10


class TestSaddles:
    def test_direction_polynomial_degree(self):
        poly = direction_polynomial(THEOREM1_ETA, 3)
        assert len(poly) - 1 == 15

    def test_theorem1_saddle(self):
        res = saddle_asymptotics(THEOREM1_ETA, 3, tol=1e-22)
        assert abs(res.root.real - mp.mpf("87.47900541")) < 1e-6
        assert abs(res.root.imag - mp.mpf("3.32820690")) < 1e-6
        assert abs(-res.objective_re - mp.mpf("227.58019641")) < 1e-6
        assert res.residual < 1e-20

    def test_certificate_concludes(self):
        cert = theorem1_certificate(tol=1e-9)
        assert cert["conclusion"]
        assert cert["window"] == (5, 7, 9, 11)
        assert abs(cert["C0"] - mp.mpf("227.58019641")) < 1e-6
        assert abs(cert["C1"] - mp.mpf("226.24944266")) < 1e-6
        assert cert["C0"] > cert["C1"]

    def test_intro_saddle_depth10(self):
        res = intro_saddle(10, tol=1e-22)
        assert abs(res.root.real - mp.mpf("0.99223412")) < 1e-6
        assert abs(res.root.imag - mp.mpf("0.01200539")) < 1e-6
        assert abs(res.objective_re - mp.mpf("-22.02001639")) < 1e-6
        assert abs(res.objective_im - mp.mpf("-3.10440862")) < 1e-6
        # the criterion 2s + 2 + Re f < 0 holds at depth 10
        assert 22 + res.objective_re < 0

    def test_intro_saddle_guards(self):
        with pytest.raises(ValueError):
            intro_saddle(3)
        with pytest.raises(NotImplementedError):
            saddle_asymptotics(THEOREM1_ETA, r=1)


class TestCubeSeriesIdentity:
    @pytest.mark.parametrize("s", [2, 3])
    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_integral_equals_series(self, s, n):
        res = theorem2_check(s, n, tol=1e-6)
        assert res["ok"], res

    def test_one_dimensional_exact(self):
        res = theorem2_check(1, 0)
        assert res["exact_J"] == Fraction(1, 3)
        assert res["difference"] < 1e-10
        exact, series = theorem8_s1((6, 1, 2, 1))
        assert exact == Fraction(1, 12)
        with mp.workdps(25):
            assert abs(mp.mpf(exact.numerator) / exact.denominator - series) < 1e-12

    def test_one_dimensional_guards(self):
        with pytest.raises(ValueError):
            theorem8_s1((5, 2, 2, 2))  # divergent
        with pytest.raises(ValueError):
            theorem2_check(4, 0)


class TestInclusion:
    @pytest.mark.parametrize("s", [3, 5])
    @pytest.mark.parametrize("n", [1, 2, 4, 6])
    def test_scaled_integrality(self, s, n):
        res = inclusion_check(s, n)
        assert res["ok"]
        assert res["basis"] == tuple(range(3, s + 1, 2))

    def test_depth3_reduces_to_apery(self):
        for n in range(0, 7):
            res = inclusion_check(3, n)
            pair = apery_zeta3(n)
            assert res["coeffs"][3] == 2 * pair.u
            assert res["a0"] == 2 * pair.v

    def test_depth_guards(self):
        with pytest.raises(ValueError):
            inclusion_check(4, 2)
        with pytest.raises(ValueError):
            inclusion_check(3, 9)
