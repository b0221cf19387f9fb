"""Tests for adaptive quadrature, moment oracles and weight checks."""

import math

import pytest

from convexcert.core import (
    Interval,
    Monotonicity,
    NegativeWeight,
    ParameterOutOfRange,
    QuadResult,
)
from convexcert.expr import evaluation_spec
from convexcert.quadrature import (
    MAX_DEPTH,
    check_monotone,
    check_symmetry,
    classify_weight,
    integrate,
    moment_ab,
    moment_center,
)

UNIT = Interval(0.0, 1.0)


class TestIntegrate:
    def test_monomial(self):
        r = integrate(lambda t: t * t, UNIT)
        assert r.converged
        assert r.value == pytest.approx(1.0 / 3.0, abs=1e-13)

    def test_exponential(self):
        r = integrate(math.exp, UNIT)
        assert r.converged
        assert abs(r.value - (math.e - 1.0)) <= 1e-11
        assert r.error_estimate >= 0.0

    def test_cubic_is_exact_up_to_roundoff(self):
        r = integrate(lambda t: 4.0 * t**3 - 2.0 * t, UNIT)
        assert abs(r.value - 0.0) <= 1e-13
        r2 = integrate(lambda t: t**3, Interval(0.0, 2.0))
        assert abs(r2.value - 4.0) <= 1e-12

    def test_minimum_panel_count(self):
        # Acceptance is deferred to depth 3, i.e. 8 panels: 15 recursion
        # nodes at 2 evaluations each, plus the 3 seed points.
        r = integrate(lambda t: t * t, UNIT)
        assert r.evaluations == 33

    def test_linearity(self):
        f = math.exp
        g = lambda t: t * t  # noqa: E731
        combined = integrate(lambda t: 2.0 * f(t) + 3.0 * g(t), UNIT).value
        separate = 2.0 * integrate(f, UNIT).value + 3.0 * integrate(g, UNIT).value
        assert combined == pytest.approx(separate, abs=1e-9)

    def test_degenerate_interval(self):
        r = integrate(math.exp, Interval(1.0, 1.0))
        assert r == QuadResult(0.0, 0.0, 0, True)

    def test_depth_cap_reports_not_converged(self):
        r = integrate(math.exp, UNIT, tol=1e-14, max_depth=3)
        assert not r.converged
        assert r.value == pytest.approx(math.e - 1.0, abs=1e-6)

    def test_step_function_never_converges(self):
        c = 1.0 / math.sqrt(2.0)
        r = integrate(lambda t: 0.0 if t < c else 1.0, UNIT)
        assert not r.converged
        # the value is still a usable estimate of 1 - c
        assert r.value == pytest.approx(1.0 - c, abs=1e-6)

    def test_narrow_kink_is_still_resolved(self):
        # A kink close to an endpoint: the error estimate of the first
        # few coarse rules happily agrees before sampling it, which is
        # exactly what the deferred-acceptance floor is for.
        kink = 0.0018
        r = integrate(lambda t: abs(t - kink), UNIT, tol=1e-10)
        exact = (kink**2 + (1.0 - kink) ** 2) / 2.0
        assert abs(r.value - exact) <= 1e-9

    @pytest.mark.parametrize("tol", [0.0, -1e-3])
    def test_rejects_bad_tolerance(self, tol):
        with pytest.raises(ParameterOutOfRange):
            integrate(math.exp, UNIT, tol=tol)

    @pytest.mark.parametrize("min_depth,max_depth", [(-1, 10), (11, 10), (5, 4)])
    def test_rejects_bad_depths(self, min_depth, max_depth):
        with pytest.raises(ParameterOutOfRange):
            integrate(math.exp, UNIT, min_depth=min_depth, max_depth=max_depth)

    def test_default_depth_cap_is_generous(self):
        assert MAX_DEPTH == 50


class TestMoments:
    def test_endpoint_moment_of_unit_weight(self):
        r = moment_ab(lambda t: 1.0, UNIT)
        assert r.value == pytest.approx(1.0 / 6.0, abs=1e-13)

    def test_central_moment_of_unit_weight(self):
        r = moment_center(lambda t: 1.0, UNIT)
        assert r.value == pytest.approx(1.0 / 3.0, abs=1e-13)

    def test_moments_scale_with_interval(self):
        iv = Interval(1.0, 3.0)
        # ∫ (t-1)(3-t) dt = w^3/6 with w = 2; ∫ (2t-4)^2 dt = w^3/3
        assert moment_ab(lambda t: 1.0, iv).value == pytest.approx(8.0 / 6.0, abs=1e-12)
        assert moment_center(lambda t: 1.0, iv).value == pytest.approx(8.0 / 3.0, abs=1e-12)

    def test_endpoint_moment_nonnegative_for_nonnegative_weight(self):
        r = moment_ab(lambda t: abs(math.sin(20.0 * t)), UNIT)
        assert r.value >= 0.0


class TestChecks:
    def test_symmetry_accepts_parabola(self):
        assert check_symmetry(lambda t: t * (1.0 - t), UNIT)

    def test_symmetry_accepts_tent(self):
        assert check_symmetry(lambda t: 1.0 - abs(2.0 * t - 1.0), UNIT)

    def test_symmetry_rejects_identity(self):
        assert not check_symmetry(lambda t: t, UNIT)

    def test_symmetry_on_shifted_interval(self):
        iv = Interval(2.0, 6.0)
        assert check_symmetry(lambda t: (t - 2.0) * (6.0 - t), iv)
        assert not check_symmetry(lambda t: t - 2.0, iv)

    def test_monotone_classification(self):
        assert check_monotone(lambda t: t, UNIT) is Monotonicity.INCREASING
        assert check_monotone(lambda t: 1.0 - t, UNIT) is Monotonicity.DECREASING
        assert check_monotone(lambda t: t * (1.0 - t), UNIT) is Monotonicity.NEITHER

    def test_flat_weight_counts_as_weakly_monotone(self):
        # documented policy: a constant weight classifies as DECREASING
        # (it is weakly monotone both ways, and every direction-gated
        # operation accepts it)
        assert check_monotone(lambda t: 0.7, UNIT) is Monotonicity.DECREASING


class TestClassifyWeight:
    def test_symmetric_parabola(self):
        ws = classify_weight(evaluation_spec("x*(1 - x)"), UNIT)
        assert ws.symmetric
        assert ws.range01
        assert ws.monotone is Monotonicity.NEITHER
        assert ws.center == 0.5

    def test_rising_ramp(self):
        ws = classify_weight(evaluation_spec("2*x"), UNIT)
        assert not ws.symmetric
        assert not ws.range01
        assert ws.monotone is Monotonicity.INCREASING

    def test_negative_weight_rejected(self):
        with pytest.raises(NegativeWeight):
            classify_weight(evaluation_spec("x - 0.5"), UNIT)

    def test_tiny_negative_noise_tolerated(self):
        ws = classify_weight(evaluation_spec("0 - 1e-12"), UNIT)
        assert ws.range01
