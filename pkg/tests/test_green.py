from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subfrac.errors import DomainError, MethodNotApplicable, NotFinite
from subfrac.green import (
    GreenMethod,
    GreenQuery,
    applicable_methods,
    green_1d_half,
    green_1d_half_asymptotics,
    green_1d_half_bracket,
    green_1d_half_series,
    green_2d,
    green_3d_half,
    green_function,
    green_half_half_gamma,
    green_half_half_tricomi,
    green_neutral,
    green_poisson_subordination,
    green_subordination,
    heat_kernel,
    is_finite_at_origin,
    poisson_kernel,
    probe_origin,
    radial_mass,
    sphere_area,
)
from subfrac.kernels import OrderPair

HALF = OrderPair(0.5, 0.5)
# mpmath: e E1(1) / (2 pi^{3/2}) and E_{1/2,1/2}(-1) / (4 pi)
G_1D_HALF_2_1 = 0.053548153293278203
G_2D_HALF_2_1 = 0.010870760666238361


def _rho(z, t=1.0):
    return math.sqrt(4 * t * z)


class TestQuery:
    def test_z(self):
        assert GreenQuery(1, 2.0, 1.0).z == 1.0

    @pytest.mark.parametrize("args", [(0, 1.0, 1.0), (1.5, 1.0, 1.0), (1, -1.0, 1.0), (1, 1.0, 0.0)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            GreenQuery(*args)

    def test_method_values(self):
        assert {m.value for m in GreenMethod} == {
            "subordination", "2d", "half-half", "1d-half", "3d-half", "neutral", "poisson"}


class TestBaseKernels:
    def test_heat(self):
        assert heat_kernel(GreenQuery(1, 0.0, 1.0)) == pytest.approx(1 / (2 * math.sqrt(math.pi)), rel=1e-15)
        assert heat_kernel(GreenQuery(2, 0.0, 1.0)) == pytest.approx(1 / (4 * math.pi), rel=1e-15)
        assert heat_kernel(GreenQuery(1, 2.0, 1.0)) == pytest.approx(math.exp(-1) / (2 * math.sqrt(math.pi)), rel=1e-15)

    def test_poisson(self):
        assert poisson_kernel(GreenQuery(1, 0.0, 1.0)) == pytest.approx(1 / math.pi, rel=1e-15)
        assert poisson_kernel(GreenQuery(1, 1.0, 1.0)) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
        assert poisson_kernel(GreenQuery(3, 0.0, 1.0)) == pytest.approx(1 / math.pi ** 2, rel=1e-15)

    def test_sphere_area(self):
        assert sphere_area(1) == pytest.approx(2.0)
        assert sphere_area(2) == pytest.approx(2 * math.pi)
        assert sphere_area(3) == pytest.approx(4 * math.pi)


class TestClosedForms:
    def test_1d_half(self):
        assert green_1d_half(GreenQuery(1, 2.0, 1.0)) == pytest.approx(G_1D_HALF_2_1, rel=1e-13)

    def test_2d_half(self):
        assert green_2d(0.5, GreenQuery(2, 2.0, 1.0)) == pytest.approx(G_2D_HALF_2_1, rel=1e-13)

    def test_neutral_poisson_limit(self):
        assert green_neutral(1.0, 1.0, 1.0) == pytest.approx(1 / (2 * math.pi), rel=1e-14)

    @pytest.mark.parametrize("x", [0.3, 1.0, 4.0])
    def test_neutral_alpha_one_is_poisson(self, x):
        assert green_neutral(1.0, x, 1.3) == pytest.approx(poisson_kernel(GreenQuery(1, x, 1.3)), rel=1e-13)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    @pytest.mark.parametrize("z", [0.25, 1.0, 4.0])
    def test_tricomi_and_gamma_forms(self, n, z):
        qy = GreenQuery(n, _rho(z), 1.0)
        assert green_half_half_tricomi(qy) == pytest.approx(green_half_half_gamma(qy), rel=1e-9)

    @pytest.mark.parametrize("z", [0.25, 1.0, 4.0])
    def test_half_half_reduces_to_2d(self, z):
        qy = GreenQuery(2, _rho(z), 1.0)
        assert green_half_half_tricomi(qy, ) == pytest.approx(green_2d(0.5, qy), rel=1e-8)

    @pytest.mark.parametrize("z", [0.25, 1.0, 4.0])
    def test_half_half_reduces_to_1d_and_3d(self, z):
        q1 = GreenQuery(1, _rho(z), 1.0)
        q3 = GreenQuery(3, _rho(z), 1.0)
        assert green_half_half_gamma(q1) == pytest.approx(green_1d_half(q1), rel=1e-12)
        assert green_half_half_gamma(q3) == pytest.approx(green_3d_half(q3), rel=1e-9)

    @pytest.mark.parametrize("x", [1e3, 1e8, 1e20])
    def test_no_overflow_far_field(self, x):
        v = green_1d_half(GreenQuery(1, x, 1.0))
        _, large = green_1d_half_asymptotics(x, 1.0)
        assert v == pytest.approx(large, rel=1e-5)

    def test_alpha_one_2d_is_heat(self):
        qy = GreenQuery(2, 1.0, 0.7)
        assert green_2d(1.0, qy) == pytest.approx(heat_kernel(qy), rel=1e-14)


class TestSubordination:
    @pytest.mark.parametrize("z", [0.25, 1.0, 4.0])
    def test_against_closed_forms(self, z):
        for n, f in [(1, green_1d_half), (2, lambda qy: green_2d(0.5, qy)), (3, green_3d_half)]:
            qy = GreenQuery(n, _rho(z), 1.0)
            assert green_subordination(HALF, qy) == pytest.approx(f(qy), rel=1e-8)

    def test_general_2d(self):
        qy = GreenQuery(2, 1.0, 1.0)
        op = OrderPair(0.7, 0.7)
        assert green_subordination(op, qy) == pytest.approx(green_2d(0.7, qy), rel=1e-8)

    def test_beta_one_half_alpha_is_poisson(self):
        qy = GreenQuery(1, 0.8, 1.2)
        assert green_subordination(OrderPair(0.5, 1.0), qy) == pytest.approx(poisson_kernel(qy), rel=1e-8)

    def test_delta_is_heat(self):
        qy = GreenQuery(3, 0.4, 2.0)
        assert green_subordination(OrderPair(1.0, 1.0), qy) == heat_kernel(qy)

    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
    def test_neutral_against_poisson_route(self, x, t):
        op = OrderPair(0.4, 0.8)
        v = green_poisson_subordination(op, GreenQuery(1, x, t))
        assert green_neutral(0.8, x, t) == pytest.approx(v, rel=1e-4)

    def test_poisson_route_needs_pattern(self):
        with pytest.raises(MethodNotApplicable):
            green_poisson_subordination(OrderPair(0.5, 0.5), GreenQuery(1, 1.0, 1.0))


class TestOrigin:
    @pytest.mark.parametrize("a,n,finite", [(0.5, 1, False), (0.6, 1, True), (0.8, 1, True), (0.9, 2, False),
                                            (1.0, 2, True), (0.4, 1, False)])
    def test_finiteness_rule(self, a, n, finite):
        assert is_finite_at_origin(OrderPair(a, a), n) is finite

    def test_beta_one_always_finite(self):
        assert is_finite_at_origin(OrderPair(0.3, 1.0), 3)

    def test_not_finite_error(self):
        with pytest.raises(NotFinite):
            green_function(HALF, GreenQuery(1, 0.0, 1.0))
        with pytest.raises(NotFinite):
            green_subordination(OrderPair(0.7, 0.7), GreenQuery(2, 0.0, 1.0))

    def test_finite_origin_value(self):
        op = OrderPair(0.8, 0.8)
        v0 = green_function(op, GreenQuery(1, 0.0, 1.0))
        v1 = green_function(op, GreenQuery(1, 1e-6, 1.0))
        assert v0 == pytest.approx(v1, rel=1e-4)

    def test_probe(self):
        assert not probe_origin(OrderPair(0.8, 0.8), 1, 1.0).diverges
        p = probe_origin(OrderPair(0.5, 0.5), 1, 1.0)
        assert p.diverges
        assert len(p.increments) == 6


class TestDispatch:
    def test_defaults(self):
        assert applicable_methods(HALF, 1)[0] is GreenMethod.CLOSED_FORM_1D_HALF
        assert applicable_methods(HALF, 3)[0] is GreenMethod.CLOSED_FORM_3D_HALF
        assert applicable_methods(OrderPair(0.7, 0.7), 2)[0] is GreenMethod.CLOSED_FORM_2D
        assert applicable_methods(OrderPair(0.4, 0.8), 1)[0] is GreenMethod.NEUTRAL_DIFFUSION
        assert applicable_methods(OrderPair(0.4, 0.9), 2) == [GreenMethod.SUBORDINATION]

    def test_spec_examples(self):
        assert green_function(HALF, GreenQuery(1, 2.0, 1.0)) == pytest.approx(G_1D_HALF_2_1, rel=1e-13)
        assert green_function(HALF, GreenQuery(2, 2.0, 1.0), GreenMethod.CLOSED_FORM_2D) == pytest.approx(
            G_2D_HALF_2_1, rel=1e-13)
        assert green_function(OrderPair(0.5, 1.0), GreenQuery(1, 1.0, 1.0),
                              GreenMethod.NEUTRAL_DIFFUSION) == pytest.approx(1 / (2 * math.pi), rel=1e-14)

    def test_methods_agree(self):
        qy = GreenQuery(2, 1.5, 0.8)
        vals = [green_function(HALF, qy, m) for m in applicable_methods(HALF, 2)]
        for v in vals:
            assert v == pytest.approx(vals[0], rel=1e-8)

    def test_method_rejected(self):
        with pytest.raises(MethodNotApplicable):
            green_function(OrderPair(0.7, 0.7), GreenQuery(1, 1.0, 1.0), GreenMethod.CLOSED_FORM_2D)


class TestAsymptotics:
    def test_large(self):
        _, large = green_1d_half_asymptotics(20.0, 1.0)
        assert large == pytest.approx(2 / (math.pi ** 1.5 * 400), rel=1e-14)
        assert large / green_1d_half(GreenQuery(1, 20.0, 1.0)) == pytest.approx(1.0, abs=0.02)

    def test_small(self):
        small, _ = green_1d_half_asymptotics(1e-3, 1.0)
        assert small == pytest.approx((math.log(4) + 6 * math.log(10)) / (2 * math.pi ** 1.5), rel=1e-14)
        assert small / green_1d_half(GreenQuery(1, 1e-3, 1.0)) == pytest.approx(1.0, abs=0.05)

    def test_bracket_example(self):
        lo, hi = green_1d_half_bracket(1.0, 1.0)
        g = green_1d_half(GreenQuery(1, 1.0, 1.0))
        assert lo == pytest.approx(math.log(9) / (4 * math.pi ** 1.5), rel=1e-14)
        assert hi == pytest.approx(math.log(5) / (2 * math.pi ** 1.5), rel=1e-14)
        assert lo < g < hi

    @settings(max_examples=60, deadline=None)
    @given(x=st.floats(1e-4, 1e4), t=st.floats(1e-3, 1e3))
    def test_bracket_property(self, x, t):
        lo, hi = green_1d_half_bracket(x, t)
        g = green_1d_half(GreenQuery(1, x, t))
        assert lo * (1 - 1e-12) <= g <= hi * (1 + 1e-12)

    @pytest.mark.parametrize("x", [1e-3, 0.3, 1.0, 3.0])
    def test_series(self, x):
        assert green_1d_half_series(x, 1.0) == pytest.approx(green_1d_half(GreenQuery(1, x, 1.0)), rel=1e-11)

    def test_domain(self):
        with pytest.raises(DomainError):
            green_1d_half_asymptotics(0.0, 1.0)
        with pytest.raises(DomainError):
            green_1d_half_bracket(1.0, 0.0)


@pytest.mark.parametrize("n", [1, 2])
def test_mass_half_half(n):
    assert radial_mass(HALF, n, 1.0) == pytest.approx(1.0, abs=1e-4)


def test_mass_poisson_3d():
    assert radial_mass(OrderPair(0.5, 1.0), 3, 1.0) == pytest.approx(1.0, abs=1e-4)
