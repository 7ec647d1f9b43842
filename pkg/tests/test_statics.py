import numpy as np
import pytest

from selectorate.model import BASELINE_PARAMS, SQRT_FAMILY, PolityParams
from selectorate.statics import (
    InsufficientRowsError,
    SweepFailure,
    SweepSpec,
    SweepSpecError,
    coalition_sweep,
    detect_gap_decay,
    sweep,
)


@pytest.fixture(scope="module")
def w_sweep():
    return coalition_sweep(BASELINE_PARAMS, SQRT_FAMILY, 300.0, 9000.0, 30)


def spec(**kw):
    args = dict(
        varied_parameter="coalition", from_value=300.0, to_value=9000.0, steps=5, base_params=BASELINE_PARAMS
    )
    args.update(kw)
    return SweepSpec(**args)


class TestSpec:
    def test_values_include_endpoints(self):
        np.testing.assert_allclose(spec().values(), [300, 2475, 4650, 6825, 9000])

    @pytest.mark.parametrize(
        "kw",
        [
            dict(varied_parameter="colour"),
            dict(from_value=9000.0, to_value=300.0),
            dict(steps=1),
            dict(steps=2.5),
            dict(regimes=()),
            dict(regimes=("mixed",)),
            dict(regimes=("general",)),
            dict(to_value=20_000.0),
            dict(varied_parameter="rho", from_value=0.01, to_value=1.0),
        ],
    )
    def test_rejects(self, kw):
        with pytest.raises(SweepSpecError):
            spec(**kw)

    def test_rho_sweep_point(self):
        s = spec(varied_parameter="rho", from_value=0.03, to_value=1.0, regimes=("general",))
        params, rho = s.point(0.5)
        assert params == BASELINE_PARAMS and rho == 0.5


class TestSweep:
    def test_rows_and_gaps(self, w_sweep):
        assert len(w_sweep.rows) == 30
        assert w_sweep.failures == 0
        first = w_sweep.rows[0]
        assert first.solutions["equal"].g == pytest.approx(498.903944661325)
        assert w_sweep.gap_metrics.public_gap[0] == pytest.approx(498.903944661325 - 269.54270776956)
        assert w_sweep.gap_metrics.discretionary_gap[0] == pytest.approx(-19404.778368)

    def test_monotone_goods(self, w_sweep):
        for regime in ("asymmetric", "equal"):
            g, z = w_sweep.column(regime, "g"), w_sweep.column(regime, "z")
            assert all(b > a for a, b in zip(g, g[1:]))
            assert all(b < a for a, b in zip(z, z[1:]))

    def test_public_goods_ordering_and_leftover(self, w_sweep):
        for row in w_sweep.rows:
            asym, eq = row.solutions["asymmetric"], row.solutions["equal"]
            assert asym.g < eq.g
            assert asym.discretionary_resources > 0.0

    def test_decay_report(self, w_sweep):
        decay = detect_gap_decay(w_sweep)
        assert decay["public_gap"].monotone
        assert decay["discretionary_gap"].monotone
        # the private-goods gap flips sign after the first row and grows once before shrinking
        private = decay["private_gap"]
        assert private.first > 0 > private.last
        assert private.shrink_fraction == pytest.approx(28 / 29)

    def test_failures_are_recorded(self):
        # tax-free polity with no base revenue: every row is infeasible
        broke = PolityParams(10_000, 10_000, 300, 0.0, 0.0, 200, 0.55)
        result = sweep(spec(base_params=broke, steps=3))
        assert result.failures == 6
        assert all(isinstance(s, SweepFailure) for row in result.rows for s in row.solutions.values())
        assert result.column("equal", "g") == [None, None, None]
        assert result.gap_metrics.public_gap == [None, None, None]
        with pytest.raises(InsufficientRowsError):
            detect_gap_decay(result)

    def test_decay_needs_both_regimes(self):
        with pytest.raises(InsufficientRowsError):
            detect_gap_decay(sweep(spec(regimes=("equal",))))

    def test_general_over_rho(self):
        s = spec(varied_parameter="rho", from_value=0.03, to_value=1.0, steps=5, regimes=("general", "asymmetric"))
        result = sweep(s)
        assert result.failures == 0
        last = result.rows[-1].solutions
        assert last["general"].g == pytest.approx(last["asymmetric"].g, rel=1e-9)

    def test_default_upper_bound(self):
        result = coalition_sweep(BASELINE_PARAMS, steps=3)
        assert result.rows[-1].param_value == pytest.approx(9000.0)
