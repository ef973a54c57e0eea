import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ripp.core import (
    Preference,
    Problem,
    Specification,
    ThresholdKind,
    discount_closed,
    prefer,
    reversal_horizon_closed,
)
from ripp.errors import MaxIterations, NoSignChange, WealthNonPositive
from ripp.solvers import (
    RootConfig,
    indifference_ratio_numeric,
    reversal_horizon_numeric,
    solve_root,
    wealth_threshold,
)

from conftest import WORKED, WORKED_RATE

# frozen from 40-digit mpmath root solves
X_PR = 2277.4325929105626
RATIO_D1 = 0.26406543132235664
HPR_NUMERIC_TINY = 1.0629221908447218


class TestSolveRoot:
    def test_linear(self):
        assert solve_root(lambda x: x - 3.0, (0.0, 10.0)) == pytest.approx(3.0, abs=1e-12)

    def test_exponential(self):
        assert solve_root(lambda x: math.exp(x) - 2.0, (0.0, 2.0)) == pytest.approx(math.log(2), abs=1e-12)

    def test_tangent_root_has_no_sign_change(self):
        with pytest.raises(NoSignChange):
            solve_root(lambda x: x * x, (-1.0, 1.0))

    def test_expansion(self):
        assert solve_root(lambda x: x - 50.0, (0.0, 1.0), expand=True) == pytest.approx(50.0)
        with pytest.raises(NoSignChange):
            solve_root(lambda x: x - 50.0, (0.0, 1.0))

    def test_endpoint_root(self):
        assert solve_root(lambda x: x, (0.0, 1.0)) == 0.0

    def test_max_iterations(self):
        cfg = RootConfig(abs_tol=1e-300, rel_tol=1e-300, max_iter=5)
        with pytest.raises(MaxIterations):
            solve_root(lambda x: x**3 - 2.0, (0.0, 10.0), cfg)

    def test_bad_bracket(self):
        with pytest.raises(ValueError):
            solve_root(lambda x: x, (1.0, 0.0))

    @pytest.mark.parametrize(
        "kwargs",
        [dict(abs_tol=0.0), dict(max_iter=0), dict(bracket_expansion_factor=1.0), dict(max_bracket_expansions=0)],
    )
    def test_config_validation(self, kwargs):
        with pytest.raises(ValueError):
            RootConfig(**kwargs)

    @given(st.floats(-1e3, 1e3), st.floats(0.1, 10))
    def test_cubic(self, c, s):
        root = solve_root(lambda x: s * (x - c) ** 3, (c - 7.3, c + 11.1))
        assert abs(root - c) <= 1e-6 * max(1, abs(c))


class TestIndifferenceRatio:
    def test_large_wealth_matches_hybrid(self):
        df = indifference_ratio_numeric(0.65, 1.0, 1e6, 1.0, 0.4)
        assert df.value == pytest.approx(RATIO_D1, rel=1e-10)
        hybrid = discount_closed("DHybridApprox", 1.0, 0.65, 0.4).value
        assert abs(df.value - hybrid) / hybrid < 1e-5

    def test_residual(self):
        df = indifference_ratio_numeric(0.65, 3.0, 10.0, 5.0, 0.4)
        spec = Specification.for_case("D", 0.4)
        p = Problem.from_horizon(0.65, 3.0, df.value * 5.0, 5.0, 10.0)
        d = prefer(spec, p, tolerance=1e-9)
        assert d.preference is Preference.INDIFFERENT

    def test_zero_delay(self):
        assert indifference_ratio_numeric(1.0, 0.0, 10.0, 1.0, 0.1).value == 1.0

    def test_needs_wealth(self):
        with pytest.raises(WealthNonPositive):
            indifference_ratio_numeric(1.0, 1.0, 0.0, 1.0, 0.1)

    def test_deterministic(self):
        args = (0.65, 2.0, 3.0, 1.0, 0.4)
        assert indifference_ratio_numeric(*args).value == indifference_ratio_numeric(*args).value

    @settings(max_examples=100)
    @given(st.floats(0.05, 5), st.floats(0.05, 10), st.floats(0.1, 1e4), st.floats(0.0, 0.5))
    def test_ratio_in_unit_interval(self, H, D, x0, r):
        v = indifference_ratio_numeric(H, D, x0, 1.0, r).value
        assert 0 < v < 1


class TestReversalNumeric:
    def test_tiny_payments_approach_closed_form(self):
        th = reversal_horizon_numeric(1.0, 1e-4, 2e-4, 1.0, 0.03)
        assert th.kind is ThresholdKind.HORIZON
        assert th.value == pytest.approx(HPR_NUMERIC_TINY, rel=1e-10)
        closed = reversal_horizon_closed("DSmallPayment", 1.0, 1e-4, 2e-4, 0.03).value
        assert abs(th.value - closed) / closed < 1e-3

    def test_discrepancy_halves_with_scale(self):
        closed = reversal_horizon_closed("DSmallPayment", 1.0, 1.0, 2.0, 0.03).value

        def err(s):
            return reversal_horizon_numeric(1.0, s, 2 * s, 1.0, 0.03).value - closed

        for s in (1e-3, 1e-4, 1e-5):
            assert err(s / 2) / err(s) == pytest.approx(0.5, rel=0.01)

    def test_sign_flip(self):
        spec = Specification.for_case("D", 0.03)
        h = reversal_horizon_numeric(1.0, 100.0, 200.0, 1000.0, 0.03).value
        early = prefer(spec, Problem.from_horizon(h / 2, 1.0, 100.0, 200.0, 1000.0))
        late = prefer(spec, Problem.from_horizon(2 * h, 1.0, 100.0, 200.0, 1000.0))
        assert early.preference is Preference.EARLIER
        assert late.preference is Preference.LATER

    def test_missing(self):
        th = reversal_horizon_numeric(1.0, 100.0, 102.0, 1000.0, 0.03)
        assert not th.exists


class TestWealthThreshold:
    def test_worked_parameters(self):
        th = wealth_threshold(Problem(**WORKED), WORKED_RATE)
        assert th.kind is ThresholdKind.WEALTH
        assert th.value == pytest.approx(X_PR, rel=1e-10)

    def test_indifferent_at_threshold(self):
        th = wealth_threshold(Problem(**WORKED), WORKED_RATE)
        d = prefer(Specification.for_case("D", WORKED_RATE), Problem(wealth0=th.value, **WORKED), tolerance=1e-9)
        assert d.preference is Preference.INDIFFERENT

    def test_condition_fails(self):
        assert not wealth_threshold(Problem(0, 1, 2, 1000.0, 2000.0), WORKED_RATE).exists

    def test_threshold_beyond_scan(self):
        # with D << H the crossing sits near 1e-18 * dx_b, past 60 halvings of the seed
        p = Problem.from_horizon(4.0, 0.109375, 1.0, 3.08203125)
        with pytest.raises(NoSignChange):
            wealth_threshold(p, 0.0)
        th = wealth_threshold(p, 0.0, RootConfig(max_bracket_expansions=200))
        assert 0 < th.value < 1e-15

    def test_zero_earlier_payment(self):
        th = wealth_threshold(Problem(0, 1, 2, 0.0, 2000.0), WORKED_RATE)
        assert not th.exists and "dx_a > 0" in th.reason

    @settings(max_examples=100)
    @given(st.floats(0.1, 5), st.floats(0.1, 5), st.floats(1, 1e4), st.floats(0.01, 3), st.floats(0, 0.2))
    def test_poor_prefer_earlier(self, H, D, dx_a, extra, r):
        assume(D >= 0.2 * H)
        dx_b = dx_a * math.exp(r * D) * (H + D) / H * (1 + extra)
        p = Problem.from_horizon(H, D, dx_a, dx_b)
        x = wealth_threshold(p, r).value
        spec = Specification.for_case("D", r)
        below = Problem.from_horizon(H, D, dx_a, dx_b, x * 0.5)
        above = Problem.from_horizon(H, D, dx_a, dx_b, x * 2)
        assert prefer(spec, below).preference is Preference.EARLIER
        assert prefer(spec, above).preference is Preference.LATER
