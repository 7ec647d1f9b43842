import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from selectorate.model import (
    BASELINE_PARAMS,
    SQRT_FAMILY,
    Allocation,
    Benchmark,
    FunctionFamily,
    ModelDomainError,
    PolityParams,
    afoc_residual,
    asymmetric_weight,
    credible_challenger_value,
    discretionary,
    dz_dg_select,
    efoc_residual,
    general_foc_residual,
    general_select_residual,
    incumbent_stream_value,
    retention_weight,
    revenue,
    select_residual,
    z_from_budget,
    z_from_select,
)

from helpers import baseline, families, polities


class TestParams:
    @pytest.mark.parametrize(
        "changes",
        [
            dict(coalition=20_000.0),
            dict(n_residents=5_000.0),
            dict(coalition=0.5),
            dict(discount=0.0),
            dict(discount=1.0),
            dict(tax_rate=1.5),
            dict(public_price=0.0),
            dict(base_revenue=-1.0),
        ],
    )
    def test_rejects_out_of_domain(self, changes):
        with pytest.raises(ModelDomainError):
            baseline(**changes)

    def test_derived_quantities(self):
        p = BASELINE_PARAMS
        assert p.tax_base == 5000.0
        assert p.coalition_share == 0.03
        assert p.future_weight == pytest.approx(0.55 / 0.45)

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.2, 1.3])
    def test_family_exponents_bounded(self, alpha):
        with pytest.raises(ModelDomainError):
            FunctionFamily(v_exponent=alpha)

    def test_negative_allocation_rejected(self):
        with pytest.raises(ModelDomainError):
            Allocation(-1.0, 2.0)


class TestFunctions:
    @given(families, st.floats(1e-3, 1e6))
    def test_inverses(self, fns, x):
        assert fns.v_inv(fns.v(x)) == pytest.approx(x, rel=1e-10)
        assert fns.u_inv(fns.u(x)) == pytest.approx(x, rel=1e-10)
        assert fns.inv_u_z(x) == pytest.approx(1.0 / fns.u_z(x), rel=1e-12)

    def test_inv_u_z_finite_at_zero(self):
        assert SQRT_FAMILY.inv_u_z(0.0) == 0.0

    def test_break_even_is_where_marginal_revenue_equals_price(self):
        p, f = BASELINE_PARAMS, SQRT_FAMILY
        g0 = f.public_break_even(p)
        assert g0 == pytest.approx(156.25)
        assert p.tax_base * f.phi_g(g0) == pytest.approx(p.public_price)

    def test_break_even_without_tax(self):
        assert SQRT_FAMILY.public_break_even(baseline(tax_rate=0.0)) == 0.0


class TestBudget:
    def test_revenue_and_discretionary_by_hand(self):
        # 1000 + 5000 * 20 = 101000; cost 200*400 + 300*10 = 83000
        alloc = Allocation(400.0, 10.0)
        assert revenue(BASELINE_PARAMS, SQRT_FAMILY, 400.0) == pytest.approx(101_000.0)
        assert discretionary(BASELINE_PARAMS, SQRT_FAMILY, alloc) == pytest.approx(18_000.0)

    def test_z_from_budget_exhausts(self):
        g = 400.0
        z = z_from_budget(BASELINE_PARAMS, SQRT_FAMILY, g)
        assert z == pytest.approx(70.0)
        assert discretionary(BASELINE_PARAMS, SQRT_FAMILY, Allocation(g, z)) == pytest.approx(0.0, abs=1e-9)

    def test_z_from_budget_can_be_negative(self):
        assert z_from_budget(BASELINE_PARAMS, SQRT_FAMILY, 1e4) < 0.0

    def test_negative_g_rejected(self):
        with pytest.raises(ModelDomainError):
            revenue(BASELINE_PARAMS, SQRT_FAMILY, -1.0)


class TestResiduals:
    def test_equal_residual_by_hand(self):
        # at (400, 25): 0.5/20 + ((2500/20 - 200)/300) * 0.5/5 = 0.025 - 0.025
        assert efoc_residual(BASELINE_PARAMS, SQRT_FAMILY, Allocation(400.0, 25.0)) == pytest.approx(0.0, abs=1e-15)

    def test_asymmetric_weight(self):
        assert asymmetric_weight(BASELINE_PARAMS) == pytest.approx(4500 / 9835, rel=1e-14)

    @pytest.mark.parametrize("alloc", [Allocation(0.0, 1.0), Allocation(1.0, 0.0)])
    def test_boundary_rejected(self, alloc):
        for f in (efoc_residual, afoc_residual):
            with pytest.raises(ModelDomainError):
                f(BASELINE_PARAMS, SQRT_FAMILY, alloc)

    def test_retention_weight_endpoints(self):
        p = BASELINE_PARAMS
        assert retention_weight(p, p.coalition_share) == 1.0
        assert retention_weight(p, 1.0) == pytest.approx(1.0 / asymmetric_weight(p), rel=1e-14)
        with pytest.raises(ModelDomainError):
            retention_weight(p, 0.01)
        with pytest.raises(ModelDomainError):
            retention_weight(p, 1.01)

    @given(polities(), families, st.floats(1.0, 1e4), st.floats(0.01, 1e3))
    def test_general_residuals_reduce_to_named_ones(self, params, fns, g, z):
        alloc = Allocation(g, z)
        bench = Benchmark.at(fns, 2 * g, 2 * z)
        share = params.coalition_share
        assert general_foc_residual(params, fns, alloc, 1.0) == pytest.approx(
            afoc_residual(params, fns, alloc), rel=1e-12, abs=1e-15
        )
        assert general_foc_residual(params, fns, alloc, share) == pytest.approx(
            efoc_residual(params, fns, alloc), rel=1e-12, abs=1e-15
        )
        assert general_select_residual(params, fns, alloc, bench, 1.0) == select_residual(
            params, fns, alloc, bench
        )

    def test_select_residual_matches_two_stream_comparison(self):
        # retention holds exactly when staying beats the credible defection value
        p, f = BASELINE_PARAMS, SQRT_FAMILY
        bench = Benchmark.at(f, 500.0, 40.0)
        for alloc in (Allocation(300.0, 30.0), Allocation(480.0, 45.0), Allocation(100.0, 5.0)):
            stay = incumbent_stream_value(p, f, alloc)
            leave = credible_challenger_value(p, f, bench, alloc)
            assert select_residual(p, f, alloc, bench) == pytest.approx(stay - leave, rel=1e-12, abs=1e-12)


class TestSelectCurve:
    def test_binds(self):
        p, f = BASELINE_PARAMS, SQRT_FAMILY
        bench = Benchmark.at(f, 500.0, 40.0)
        for rho in (p.coalition_share, 0.4, 1.0):
            z = z_from_select(p, f, 300.0, bench, rho)
            r = general_select_residual(p, f, Allocation(300.0, z), bench, rho)
            assert r == pytest.approx(0.0, abs=1e-12)

    def test_raises_above_offer(self):
        bench = Benchmark.at(SQRT_FAMILY, 100.0, 1.0)
        with pytest.raises(ModelDomainError):
            z_from_select(BASELINE_PARAMS, SQRT_FAMILY, 200.0, bench)

    @settings(max_examples=50, deadline=None)
    @given(polities(), families, st.floats(0.02, 0.98), st.floats(0.0, 1.0))
    def test_decreasing_with_matching_slope(self, params, fns, frac, t):
        bench = Benchmark.at(fns, 100.0, 10.0)
        rho = params.coalition_share + t * (1.0 - params.coalition_share)
        g = frac * fns.v_inv(bench.offer_value)
        h = 1e-5 * g
        lo = z_from_select(params, fns, g - h, bench, rho)
        hi = z_from_select(params, fns, g + h, bench, rho)
        assume(lo > 0.0 and hi > 0.0)
        assert hi < lo
        slope = dz_dg_select(params, fns, g, bench, rho)
        assert slope == pytest.approx((hi - lo) / (2 * h), rel=1e-6)

    def test_sqrt_slope_by_hand(self):
        # z = (V - sqrt(g))^2 / c^2 with c = 1 at rho = W/S, so dz/dg = -(V - sqrt g)/sqrt g
        p, f = BASELINE_PARAMS, SQRT_FAMILY
        bench = Benchmark(0.0, 0.0, 30.0)
        g = 100.0
        assert z_from_select(p, f, g, bench, p.coalition_share) == pytest.approx(400.0)
        assert dz_dg_select(p, f, g, bench, p.coalition_share) == pytest.approx(-2.0)


def test_power_functions_are_vectorized():
    xs = np.array([1.0, 4.0, 9.0])
    np.testing.assert_allclose(SQRT_FAMILY.v(xs), [1.0, 2.0, 3.0])
    assert math.isclose(SQRT_FAMILY.phi(16.0), 4.0)


def test_params_accept_equal_sizes():
    p = PolityParams(100.0, 100.0, 100.0, 0.0, 0.5, 1.0, 0.5)
    assert p.coalition_share == 1.0
