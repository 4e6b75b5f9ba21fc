"""
判据积分 V(t) 与窗口扫描
"""

import numpy as np
import pytest

from delayrheo.analysis import criterion_batch, criterion_value, decide, scan, translation_time
from delayrheo.charsolve import LambdaFunction
from delayrheo.types import Verdict
from delayrheo.utils.errors import ValidationError


@pytest.fixture
def reciprocal_lambda() -> LambdaFunction:
    return LambdaFunction.closed_form("1/t", 1.0, 100.0)


class TestCriterionValue:

    @pytest.mark.parametrize("t", [8.0, 20.0, 50.0])
    def test_variable_delay_example(self, variable_delay_kernel, t):
        lam = LambdaFunction.closed_form("1/(t + 2)", -1.0, 100.0)
        assert criterion_value(variable_delay_kernel, lam, t) == pytest.approx(1.0 / (t + 2.0), abs=1e-12)

    @pytest.mark.parametrize("t", [10.0, 50.0, 100.0])
    def test_distributed_example(self, distributed_kernel, reciprocal_lambda, t):
        assert criterion_value(distributed_kernel, reciprocal_lambda, t) == pytest.approx(1.0 / (2.0 * t), abs=1e-12)

    def test_autonomous_value_equals_root(self, small_gain_kernel, w_small):
        lam = LambdaFunction.constant(w_small, -1.0, 10.0)
        assert criterion_value(small_gain_kernel, lam, 5.0) == pytest.approx(w_small, abs=1e-14)

    def test_zero_kernel(self, zero_kernel):
        lam = LambdaFunction.constant(0.0, -1.0, 10.0)
        np.testing.assert_array_equal(criterion_batch(zero_kernel, lam, [1.0, 2.0]), [0.0, 0.0])


class TestScan:

    def test_distributed_example_holds(self, distributed_kernel, reciprocal_lambda):
        report = scan(distributed_kernel, reciprocal_lambda, (2.0, 100.0), 197)
        assert report.mu_hat == pytest.approx(0.25, abs=1e-12)
        assert report.verdict is Verdict.HOLDS
        assert report.t1_estimate == 2.0
        assert len(report.samples) == 197
        assert report.times[0] == 2.0
        assert report.times[-1] == 100.0

    def test_large_gain_fails(self, large_gain_kernel, w_large):
        lam = LambdaFunction.constant(w_large, -1.0, 10.0)
        report = scan(large_gain_kernel, lam, (0.0, 10.0), 50)
        assert report.verdict is Verdict.FAILS
        assert report.mu_hat == pytest.approx(w_large, abs=1e-12)
        assert report.t1_estimate is None

    def test_small_gain_holds(self, small_gain_kernel, w_small):
        lam = LambdaFunction.constant(w_small, -1.0, 10.0)
        report = scan(small_gain_kernel, lam, (0.0, 10.0), 50)
        assert report.verdict is Verdict.HOLDS
        assert report.mu_hat == pytest.approx(w_small, abs=1e-14)

    def test_nested_windows_are_monotone(self, distributed_kernel, reciprocal_lambda):
        wide = scan(distributed_kernel, reciprocal_lambda, (5.0, 100.0), 96)
        narrow = scan(distributed_kernel, reciprocal_lambda, (10.0, 100.0), 91)
        assert narrow.mu_hat <= wide.mu_hat
        assert narrow.mu_hat == pytest.approx(0.05, abs=1e-12)

    def test_summary_line(self, distributed_kernel, reciprocal_lambda):
        report = scan(distributed_kernel, reciprocal_lambda, (2.0, 100.0), 10, margin=0.05)
        line = report.summary_line()
        assert line.startswith("verdict=holds mu_hat=")
        assert "window=[2.0, 100.0]" in line
        assert line.endswith("margin=0.05 t1=2.0")

    def test_window_needs_lambda_history(self, distributed_kernel, reciprocal_lambda):
        with pytest.raises(ValidationError):
            scan(distributed_kernel, reciprocal_lambda, (1.5, 100.0), 10)
        with pytest.raises(ValidationError):
            scan(distributed_kernel, reciprocal_lambda, (2.0, 120.0), 10)

    @pytest.mark.parametrize("window, samples, margin", [
        ((5.0, 5.0), 10, 0.02),
        ((5.0, 10.0), 1, 0.02),
        ((5.0, 10.0), 10, 1.0),
    ])
    def test_invalid_arguments(self, distributed_kernel, reciprocal_lambda, window, samples, margin):
        with pytest.raises(ValidationError):
            scan(distributed_kernel, reciprocal_lambda, window, samples, margin)


class TestDecide:

    def test_tail_at_or_above_one_fails(self):
        assert decide(np.array([0.5, 0.9, 1.0, 1.2, 1.0]), 0.02) is Verdict.FAILS

    def test_near_one_is_inconclusive(self):
        assert decide(np.full(8, 0.99), 0.02) is Verdict.INCONCLUSIVE

    def test_increasing_tail_is_inconclusive(self):
        assert decide(np.array([0.6, 0.7, 0.8, 0.9]), 0.02) is Verdict.INCONCLUSIVE

    def test_decreasing_tail_holds(self):
        assert decide(np.array([0.9, 0.8, 0.7, 0.6]), 0.02) is Verdict.HOLDS

    def test_small_values_hold_even_if_increasing(self):
        assert decide(np.array([0.1, 0.2, 0.3, 0.4]), 0.02) is Verdict.HOLDS

    def test_spike_in_tail_is_not_failure(self):
        assert decide(np.array([0.2, 0.2, 0.2, 1.5, 0.3]), 0.02) is Verdict.INCONCLUSIVE


class TestTranslationTime:

    def test_first_time_after_last_violation(self):
        times = [0.0, 1.0, 2.0, 3.0]
        assert translation_time(times, np.array([1.2, 0.99, 0.5, 0.4]), 0.02) == 2.0

    def test_none_when_last_sample_violates(self):
        assert translation_time([0.0, 1.0], np.array([0.5, 0.99]), 0.02) is None

    def test_whole_window(self):
        assert translation_time([3.0, 4.0], np.array([0.1, 0.1]), 0.02) == 3.0
