from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subfrac.errors import DiracCase, DomainError, InvalidOrder, RepNotApplicable
from subfrac.kernels import (
    KernelPoint,
    OrderPair,
    Rep,
    compose_kernels,
    f_kernel,
    f_kernel_talbot,
    k_closed_form_equal,
    k_density,
    k_density_talbot,
    k_small_r_limit,
    levy_density,
    levy_density_talbot,
    mainardi,
    mainardi_talbot,
    phi_kernel,
    phi_kernel_talbot,
    psi_closed_form_equal,
    psi_kernel,
    psi_singular_exponent,
)
from subfrac.numerics import QuadConfig, integrate_semi_infinite
from subfrac.special import mittag_leffler_neg

SQRT_PI = math.sqrt(math.pi)

# mpmath oracles: 50-digit Mainardi series, 40-digit Talbot inversion of E_b(-lam^a)
M_06_1 = 0.4832354333480618421
M_03_2 = 0.16840030622678312291
L_07_1 = 0.38739501014659243756
L_03_1 = 0.11715700256591614931
L_07_03 = 0.63311518064929995474
K_05_08_1 = 0.19613992310846592941
K_04_08_025 = 0.50774215524317443585
K_04_08_4 = 0.029519900739186501679
F_QUARTER_11 = 0.0958338541426709


class TestTypes:
    def test_order_pair(self):
        assert OrderPair(1, 1).is_delta
        assert not OrderPair(1, 0.5).is_delta
        for a, b in [(0, 0.5), (1.1, 0.5), (0.5, 0), (0.5, 1.5)]:
            with pytest.raises(InvalidOrder):
                OrderPair(a, b)

    def test_kernel_point(self):
        KernelPoint(1.0, 0.0)
        with pytest.raises(DomainError):
            KernelPoint(0.0, 1.0)
        with pytest.raises(DomainError):
            KernelPoint(1.0, -1.0)

    def test_rep_values(self):
        assert {r.value for r in Rep} == {"closed", "rep1", "rep2", "rep3", "rep4", "talbot"}


class TestLevy:
    def test_half(self):
        assert levy_density(0.5, 1.0) == pytest.approx(math.exp(-0.25) / (2 * SQRT_PI), rel=1e-15)

    def test_half_small_r(self):
        assert levy_density(0.5, 1e-4) == 0.0 or levy_density(0.5, 1e-4) < 1e-300
        assert levy_density(0.5, 0.01) < 1e-8

    @pytest.mark.parametrize("a,x,ref", [(0.7, 1.0, L_07_1), (0.3, 1.0, L_03_1), (0.7, 0.3, L_07_03)])
    def test_oracle(self, a, x, ref):
        assert levy_density(a, x) == pytest.approx(ref, rel=1e-9)

    def test_normalized(self):
        q = QuadConfig(rel_tol=1e-10)
        assert integrate_semi_infinite(lambda r: levy_density(0.7, r), q).value == pytest.approx(1.0, rel=1e-8)

    @pytest.mark.parametrize("a", [0.3, 0.5, 0.7])
    @pytest.mark.parametrize("r", [0.5, 1.0, 3.0])
    def test_talbot_cross_check(self, a, r):
        assert levy_density_talbot(a, r) == pytest.approx(levy_density(a, r), rel=1e-7)

    def test_vectorized(self):
        r = np.array([0.5, 1.0, 2.0])
        v = levy_density(0.7, r)
        assert v.shape == r.shape
        assert v[1] == levy_density(0.7, 1.0)

    def test_errors(self):
        with pytest.raises(DiracCase):
            levy_density(1.0, 1.0)
        with pytest.raises(DomainError):
            levy_density(0.5, 0.0)
        with pytest.raises(InvalidOrder):
            levy_density(1.5, 1.0)

    @settings(max_examples=40, deadline=None)
    @given(a=st.floats(0.1, 0.95), x=st.floats(1e-3, 1e3))
    def test_nonnegative_finite(self, a, x):
        v = levy_density(a, x)
        assert math.isfinite(v) and v >= 0


class TestMainardi:
    def test_half(self):
        assert mainardi(0.5, 0.0) == pytest.approx(1 / SQRT_PI, rel=1e-15)
        assert mainardi(0.5, 2.0) == pytest.approx(math.exp(-1) / SQRT_PI, rel=1e-15)

    @pytest.mark.parametrize("b,r,ref", [(0.6, 1.0, M_06_1), (0.3, 2.0, M_03_2)])
    def test_oracle(self, b, r, ref):
        assert mainardi(b, r) == pytest.approx(ref, rel=1e-9)

    def test_talbot_cross_check(self):
        assert mainardi_talbot(0.6, 1.0) == pytest.approx(M_06_1, rel=1e-7)

    @pytest.mark.parametrize("b", [0.3, 0.6, 0.8])
    def test_normalized_and_laplace(self, b):
        q = QuadConfig(rel_tol=1e-10)
        assert integrate_semi_infinite(lambda r: mainardi(b, r), q).value == pytest.approx(1.0, rel=1e-8)
        lap = integrate_semi_infinite(lambda r: np.exp(-r) * mainardi(b, r), q).value
        assert lap == pytest.approx(mittag_leffler_neg(b, 1.0, 1.0), rel=1e-8)

    def test_errors(self):
        with pytest.raises(DiracCase):
            mainardi(1.0, 1.0)
        with pytest.raises(DomainError):
            mainardi(0.5, -1.0)

    @settings(max_examples=40, deadline=None)
    @given(b=st.floats(0.05, 0.95), r=st.floats(0.0, 50.0))
    def test_nonnegative_finite(self, b, r):
        v = mainardi(b, r)
        assert math.isfinite(v) and v >= 0


class TestScalingKernels:
    def test_f(self):
        assert f_kernel(0.5, 2.0, 1.0) == pytest.approx(math.exp(-1) / SQRT_PI, rel=1e-15)
        assert f_kernel(0.5, 1.0, 1.0) == pytest.approx(0.2196956447338612, rel=1e-14)
        assert f_kernel(0.5, 1.0, 0.0) == 0.0

    def test_phi(self):
        assert phi_kernel(0.5, 4.0, 2.0) == pytest.approx(math.exp(-0.25) / (2 * SQRT_PI), rel=1e-15)

    def test_talbot_forms(self):
        assert f_kernel_talbot(0.5, 2.0, 1.0) == pytest.approx(f_kernel(0.5, 2.0, 1.0), rel=1e-9)
        assert phi_kernel_talbot(0.5, 4.0, 2.0) == pytest.approx(phi_kernel(0.5, 4.0, 2.0), rel=1e-9)

    def test_dirac(self):
        with pytest.raises(DiracCase):
            f_kernel(1.0, 1.0, 1.0)
        with pytest.raises(DiracCase):
            phi_kernel(1.0, 1.0, 1.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            f_kernel(0.5, 0.0, 1.0)
        with pytest.raises(DomainError):
            phi_kernel(0.5, 1.0, -1.0)


class TestK:
    def test_closed_form_examples(self):
        op = OrderPair(0.5, 0.5)
        assert k_density(op, 1.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
        assert k_density(op, 4.0) == pytest.approx(1 / (10 * math.pi), rel=1e-15)

    def test_closed_form_limits(self):
        assert k_density(OrderPair(0.5, 1.0), 1.0) == levy_density(0.5, 1.0)
        assert k_density(OrderPair(1.0, 0.6), 1.0) == mainardi(0.6, 1.0)

    def test_default_oracle(self):
        assert k_density(OrderPair(0.5, 0.8), 1.0) == pytest.approx(K_05_08_1, rel=1e-9)

    @pytest.mark.parametrize("r,ref", [(0.25, K_04_08_025), (1.0, None), (4.0, K_04_08_4)])
    def test_representations_agree(self, r, ref):
        op = OrderPair(0.4, 0.8)
        reps = [Rep.REP1_LEVY_MAINARDI, Rep.REP2_LEVY_LEVY, Rep.REP3_MAINARDI_MAINARDI,
                Rep.REP4_HALF_COMPOSITION, Rep.TALBOT]
        vals = [k_density(op, r, rep=rep) for rep in reps]
        base = ref if ref is not None else vals[0]
        for v in vals:
            assert v == pytest.approx(base, rel=1e-8)

    def test_talbot_for_alpha_above_beta(self):
        op = OrderPair(0.8, 0.4)
        assert k_density_talbot(op, 1.0) == pytest.approx(k_density(op, 1.0), rel=1e-7)

    def test_laplace_transform(self):
        op = OrderPair(0.5, 0.8)
        q = QuadConfig(rel_tol=1e-10).with_singularity(-0.5)
        v = integrate_semi_infinite(lambda r: np.exp(-r) * k_density(op, r), q).value
        assert v == pytest.approx(mittag_leffler_neg(0.8, 1.0, 1.0), rel=1e-7)

    def test_rep_applicability(self):
        with pytest.raises(RepNotApplicable):
            k_density(OrderPair(0.4, 0.8), 1.0, rep=Rep.CLOSED_FORM)
        with pytest.raises(RepNotApplicable):
            k_density(OrderPair(0.8, 0.4), 1.0, rep=Rep.REP4_HALF_COMPOSITION)
        with pytest.raises(RepNotApplicable):
            k_density(OrderPair(0.5, 1.0), 1.0, rep=Rep.REP1_LEVY_MAINARDI)
        with pytest.raises(DiracCase):
            k_density(OrderPair(1.0, 1.0), 1.0)
        with pytest.raises(DomainError):
            k_density(OrderPair(0.5, 0.5), 0.0)

    def test_small_r_equal_orders(self):
        op = OrderPair(0.5, 0.5)
        for r in (1e-4, 1e-6):
            assert k_density(op, r) / k_small_r_limit(op, r) == pytest.approx(1 / (1 + r), rel=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(a=st.floats(0.05, 0.99), r=st.floats(1e-6, 1e6))
    def test_closed_form_positive(self, a, r):
        v = float(k_closed_form_equal(a, r))
        assert math.isfinite(v) and v > 0


class TestPsi:
    def test_examples(self):
        assert psi_kernel(OrderPair(0.5, 0.5), 1.0, 1.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
        c = 2 ** 0.75
        ref = c * math.sin(0.75 * math.pi) / (math.pi * (2 ** 1.5 + 2 * c * math.cos(0.75 * math.pi) + 1))
        assert psi_kernel(OrderPair(0.75, 0.75), 2.0, 1.0) == pytest.approx(ref, rel=1e-14)
        assert psi_kernel(OrderPair(1.0, 0.5), 1.0, 1.0) == pytest.approx(math.exp(-0.25) / SQRT_PI, rel=1e-14)

    def test_closed_form_matches_scaling(self):
        t, tau = 1.7, 0.3
        for a in (0.3, 0.75):
            via_k = t ** -1.0 * float(k_closed_form_equal(a, tau / t))
            assert float(psi_closed_form_equal(a, t, tau)) == pytest.approx(via_k, rel=1e-13)

    def test_errors(self):
        with pytest.raises(DiracCase):
            psi_kernel(OrderPair(1.0, 1.0), 1.0, 1.0)
        with pytest.raises(DomainError):
            psi_kernel(OrderPair(0.5, 0.5), 1.0, 0.0)

    def test_singular_exponent(self):
        assert psi_singular_exponent(OrderPair(0.4, 0.8)) == pytest.approx(-0.6)
        assert psi_singular_exponent(OrderPair(0.4, 1.0)) == 0.0
        assert psi_singular_exponent(OrderPair(1.0, 0.4)) == 0.0

    @pytest.mark.parametrize("a,b", [(0.3, 0.3), (0.5, 0.5), (0.7, 1.0), (1.0, 0.5), (0.5, 0.8)])
    def test_scaling_law(self, a, b):
        op = OrderPair(a, b)
        t, tau = 1.3, 0.7
        base = psi_kernel(op, t, tau)
        for c in (0.5, 3.0):
            scaled = psi_kernel(op, c * t, c ** (b / a) * tau) * c ** (b / a)
            assert scaled == pytest.approx(base, rel=1e-12)

    @pytest.mark.parametrize("a,b", [(0.3, 0.3), (0.7, 1.0), (1.0, 0.5)])
    @pytest.mark.parametrize("t", [0.5, 2.0])
    def test_pdf(self, a, b, t):
        op = OrderPair(a, b)
        grid = np.geomspace(1e-3, 1e3, 25)
        assert np.all(psi_kernel(op, t, grid) >= 0)
        q = QuadConfig(rel_tol=1e-10).with_singularity(psi_singular_exponent(op))
        assert integrate_semi_infinite(lambda s: psi_kernel(op, t, s), q).value == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("a,b", [(0.5, 0.5), (0.7, 1.0), (1.0, 0.5)])
    @pytest.mark.parametrize("lam", [0.5, 2.0])
    def test_scalar_subordination(self, a, b, lam):
        op = OrderPair(a, b)
        t = 0.5
        q = QuadConfig(rel_tol=1e-10).with_singularity(psi_singular_exponent(op))
        v = integrate_semi_infinite(lambda s: psi_kernel(op, t, s) * np.exp(-lam * s), q).value
        assert v == pytest.approx(mittag_leffler_neg(b, 1.0, lam ** a * t ** b), abs=1e-6)

    @pytest.mark.parametrize("s", [1.0, 2.0])
    def test_laplace_in_t(self, s):
        op = OrderPair(0.5, 0.5)
        tau = 1.0
        v = integrate_semi_infinite(lambda t: np.exp(-s * t) * psi_kernel(op, t, tau), QuadConfig(rel_tol=1e-10)).value
        ref = s ** (op.beta - 1) * tau ** (op.alpha - 1) * mittag_leffler_neg(op.alpha, op.alpha, s ** op.beta * tau ** op.alpha)
        assert v == pytest.approx(ref, rel=1e-5)


class TestComposition:
    def test_phi_then_f(self):
        v = compose_kernels(lambda t, s: phi_kernel(0.5, t, s), lambda s, tau: f_kernel(0.5, s, tau), 1.0, 1.0)
        assert v == pytest.approx(1 / (2 * math.pi), rel=1e-9)

    def test_f_then_phi(self):
        v = compose_kernels(lambda t, s: f_kernel(0.5, t, s), lambda s, tau: phi_kernel(0.5, s, tau), 1.0, 1.0)
        assert v == pytest.approx(1 / math.pi, rel=1e-9)

    def test_levy_semigroup(self):
        v = compose_kernels(lambda t, s: f_kernel(0.5, t, s), lambda s, tau: f_kernel(0.5, s, tau), 1.0, 1.0)
        assert v == pytest.approx(F_QUARTER_11, rel=1e-8)
        assert f_kernel_talbot(0.25, 1.0, 1.0) == pytest.approx(F_QUARTER_11, rel=1e-7)

    def test_mainardi_semigroup(self):
        q = QuadConfig(rel_tol=1e-10)
        v = compose_kernels(lambda t, s: phi_kernel(0.5, t, s), lambda s, tau: phi_kernel(0.5, s, tau), 1.0, 1.0, q)
        assert v == pytest.approx(phi_kernel_talbot(0.25, 1.0, 1.0), rel=1e-6)

    def test_domain(self):
        with pytest.raises(DomainError):
            compose_kernels(lambda t, s: s, lambda s, tau: s, 0.0, 1.0)
