"""Constant resolution from initial and boundary data."""

import math
import random

import pytest

from airyflow import (
    DegenerateModelError,
    FlowParams,
    InitialData,
    NoSignChangeError,
    PoleCrossingError,
    c_from_initial,
    coefficients_from_u0,
    default_c_bracket,
    derive_constants,
    exact_u1,
    exact_u1_derivative,
    random_flow_case,
    solve_bvp,
    solve_ivp,
)

# frozen: normalized coefficients for u10 = 0 at t0 = 0 are exactly
# (sqrt(3)/2, 1/2) because Bi'(0) = -sqrt(3) Ai'(0); asserted numerically
COEF_C1 = 0.86602540378443864676
COEF_C2 = 0.5


class TestCFromInitial:
    @pytest.mark.parametrize(
        "u10,u1dot0,nu,expected",
        [(0.0, 0.0, 1.0, 0.0), (2.0, 0.0, 1.0, -2.0), (1.0, 3.0, 0.5, 1.0)],
    )
    def test_examples(self, u10, u1dot0, nu, expected):
        assert c_from_initial(u10, u1dot0, nu) == pytest.approx(expected, abs=1e-15)

    def test_rejects_bad_nu(self):
        with pytest.raises(ValueError):
            c_from_initial(0.0, 0.0, 0.0)


class TestCoefficients:
    def test_zero_velocity_gives_30_degree_pair(self):
        p = FlowParams(nu=1.0, grad_term=-2.0, f1=0.0, length=2.0)
        partial = derive_constants(p, 0.0)
        c1, c2 = coefficients_from_u0(0.0, p, partial)
        assert c1 == pytest.approx(COEF_C1, rel=1e-12)
        assert c2 == pytest.approx(COEF_C2, rel=1e-12)

    def test_pure_ai_target(self):
        # choosing u10 equal to the pure-Ai start velocity zeroes the Bi
        # bracket, so the pair collapses to (1, 0)
        p = FlowParams(nu=1.0, grad_term=-2.0, f1=0.0, length=2.0)
        partial = derive_constants(p, 0.0)
        pure_ai = partial.with_coefficients(1.0, 0.0)
        u10 = exact_u1(0.0, p, pure_ai)
        c1, c2 = coefficients_from_u0(u10, p, partial)
        assert c1 == pytest.approx(1.0, rel=1e-12)
        assert abs(c2) <= 1e-12

    def test_roundtrip_reproduces_u10(self):
        rng = random.Random(3)
        for _ in range(25):
            nu = rng.uniform(0.3, 2.0)
            p = FlowParams(
                nu=nu,
                grad_term=rng.uniform(-3.0, 0.0) - 0.5,
                f1=0.0,
                length=1.0,
            )
            u10 = rng.uniform(-2.0, 2.0)
            partial = derive_constants(p, rng.uniform(-2.0, 2.0))
            c1, c2 = coefficients_from_u0(u10, p, partial)
            consts = partial.with_coefficients(c1, c2)
            assert exact_u1(0.0, p, consts) == pytest.approx(u10, rel=1e-10, abs=1e-10)


class TestSolveIvp:
    def test_example_constants(self):
        p = FlowParams(nu=1.0, grad_term=-2.0, f1=0.0, length=2.0)
        consts = solve_ivp(InitialData(u10=0.0, u1dot0=-2.0), p)
        assert consts.c == pytest.approx(-2.0)
        assert consts.a == pytest.approx(-1.0)
        assert consts.b == pytest.approx(-1.0)
        assert exact_u1(0.0, p, consts) == pytest.approx(0.0, abs=1e-12)
        assert exact_u1_derivative(0.0, p, consts) == pytest.approx(-2.0, rel=1e-12)

    def test_degenerate_forcing_rejected(self):
        p = FlowParams(nu=1.0, grad_term=0.7, f1=0.7, length=1.0)
        with pytest.raises(DegenerateModelError):
            solve_ivp(InitialData(u10=0.0, u1dot0=0.0), p)

    def test_roundtrip_on_random_cases(self):
        rng = random.Random(12345)
        for _ in range(100):
            params, data, consts = random_flow_case(rng)
            u0 = exact_u1(0.0, params, consts)
            du0 = exact_u1_derivative(0.0, params, consts)
            assert abs(u0 - data.u10) <= 1e-9 * (1.0 + abs(data.u10))
            assert abs(du0 - data.u1dot0) <= 1e-9 * (1.0 + abs(data.u1dot0))

    def test_normalization_convention(self):
        rng = random.Random(9)
        for _ in range(20):
            params, _, consts = random_flow_case(rng)
            assert math.hypot(consts.c1, consts.c2) == pytest.approx(1.0, rel=1e-14)
            lead = consts.c1 if consts.c1 != 0.0 else consts.c2
            assert lead > 0.0


class TestSolveBvp:
    def test_roundtrip_recovers_c(self):
        rng = random.Random(77)
        for _ in range(8):
            params, data, consts = random_flow_case(rng)
            u1L = exact_u1(params.length, params, consts)
            sol = solve_bvp(data.u10, u1L, params)
            assert abs(sol.c - consts.c) <= 1e-8
            assert sol.initial_slope == pytest.approx(data.u1dot0, abs=1e-8)
            assert abs(sol.endpoint_residual) <= 1e-9 * (1.0 + abs(u1L))
            assert any(abs(r - consts.c) <= 1e-8 for r in sol.roots)

    def test_symmetric_target_reachable(self):
        p = FlowParams(nu=1.0, grad_term=-2.0, f1=0.0, length=1.0)
        sol = solve_bvp(0.0, 0.0, p)
        assert abs(sol.endpoint_residual) <= 1e-9

    def test_determinism(self):
        p = FlowParams(nu=0.9, grad_term=-1.8, f1=0.2, length=1.2)
        a = solve_bvp(0.3, -0.4, p)
        b = solve_bvp(0.3, -0.4, p)
        assert a.c == b.c
        assert a.roots == b.roots
        assert a.constants == b.constants

    def test_no_sign_change_reports_residuals(self):
        p = FlowParams(nu=1.0, grad_term=-2.0, f1=0.0, length=1.0)
        with pytest.raises(NoSignChangeError) as err:
            solve_bvp(0.0, 5.0, p, (0.0, 1.0))
        assert err.value.residual_lo == pytest.approx(-5.911089, abs=1e-3)
        assert err.value.residual_hi == pytest.approx(-4.981805, abs=1e-3)

    def test_pole_crossing_everywhere(self):
        p = FlowParams(nu=0.2, grad_term=-8.0, f1=0.0, length=3.0)
        with pytest.raises(PoleCrossingError) as err:
            solve_bvp(0.5, 0.0, p, (10.3, 20.0))
        assert err.value.excluded == 256

    def test_invalid_bracket(self):
        p = FlowParams(nu=1.0, grad_term=-2.0, f1=0.0, length=1.0)
        with pytest.raises(ValueError):
            solve_bvp(0.0, 0.0, p, (1.0, 1.0))

    def test_default_bracket_scales_with_data(self):
        lo, hi = default_c_bracket(2.0, -3.0, 0.5)
        assert lo == -45.0 and hi == 45.0
        lo, hi = default_c_bracket(0.1, 0.2, 1.0)
        assert lo == -10.0 and hi == 10.0
