"""
广义特征方程：残差、不动点迭代、经典根
"""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from delayrheo.charsolve import (
    LambdaFunction,
    characteristic_grid,
    classical_roots,
    initial_guess_from,
    lambert_root,
    residual,
    rhs,
    rhs_batch,
    solve_fixed_point,
)
from delayrheo.measure import build_kernel
from delayrheo.utils.errors import ConvergenceError, ValidationError


class TestResidual:

    def test_distributed_reciprocal(self, distributed_kernel):
        lam = LambdaFunction.closed_form("1/t", 1.0, 100.0)
        grid = np.linspace(2.0, 100.0, 197)
        assert residual(distributed_kernel, lam, grid) < 1e-12
        assert rhs(distributed_kernel, lam, 10.0) == pytest.approx(0.1, abs=1e-14)

    def test_shifted_reciprocal(self, variable_delay_kernel):
        lam = LambdaFunction.closed_form("1/(t + 2)", -1.0, 100.0)
        grid = np.linspace(0.0, 100.0, 401)
        assert residual(variable_delay_kernel, lam, grid) < 1e-14

    def test_variable_delay(self):
        kernel = build_kernel(1.0, atoms=[("0.75 + 0.25*sin(t)", "1/(t + 2 - (0.75 + 0.25*sin(t)))")])
        lam = LambdaFunction.closed_form("1/(t + 2)", -1.0, 100.0)
        grid = np.linspace(0.0, 100.0, 401)
        assert residual(kernel, lam, grid) < 1e-14

    def test_autonomous_constant(self, small_gain_kernel, w_small):
        lam = LambdaFunction.constant(w_small, -1.0, 20.0)
        assert residual(small_gain_kernel, lam, np.linspace(0.0, 20.0, 81)) < 1e-14

    def test_wrong_candidate_is_detected(self, distributed_kernel):
        lam = LambdaFunction.closed_form("2/t", 1.0, 100.0)
        assert residual(distributed_kernel, lam, [2.0, 10.0]) > 0.1

    def test_empty_grid(self, distributed_kernel):
        lam = LambdaFunction.closed_form("1/t", 1.0, 100.0)
        assert residual(distributed_kernel, lam, []) == 0.0

    def test_parallel_matches_serial(self, distributed_kernel):
        lam = LambdaFunction.closed_form("1/t + 0.1*sin(t)", 1.0, 100.0)
        ts = np.linspace(2.0, 100.0, 5000)
        serial = rhs_batch(distributed_kernel, lam, ts, workers=1)
        parallel = rhs_batch(distributed_kernel, lam, ts, workers=4)
        np.testing.assert_array_equal(serial, parallel)


class TestCharacteristicGrid:

    def test_layout(self):
        grid = characteristic_grid(2.0, 1.0, 50.0, 1.0 / 512)
        assert grid[0] == 1.0
        assert 2.0 in grid
        assert grid[-1] == pytest.approx(50.0, abs=1e-12)
        np.testing.assert_allclose(np.diff(grid), 1.0 / 512, rtol=1e-9)

    def test_step_snapped_and_horizon_rounded(self):
        grid = characteristic_grid(0.0, 1.0, 1.05, 0.12)
        assert np.diff(grid)[0] == pytest.approx(1.0 / 9.0)
        assert grid[-1] >= 1.05


class TestFixedPoint:

    def test_distributed_example(self, distributed_kernel):
        guess = initial_guess_from("1/t", 2.0, 1.0)
        result = solve_fixed_point(distributed_kernel, guess, 2.0, 20.0, 1.0 / 512, tol=1e-9)
        assert result.residual < 1e-8
        ts = np.linspace(2.0, 20.0, 73)
        np.testing.assert_allclose(result.lam.value(ts), 1.0 / ts, atol=1e-6)
        assert result.iterations == len(result.history)

    def test_autonomous_from_zero_guess(self, small_gain_kernel, w_small):
        guess = initial_guess_from(None, 0.0, 1.0)
        result = solve_fixed_point(small_gain_kernel, guess, 0.0, 250.0, 0.125)
        assert abs(result.lam.value(result.lam.end) - w_small) < 1e-8
        assert result.residual <= 1e-9

    def test_pre_interval_is_fixed(self, small_gain_kernel):
        guess = initial_guess_from("0", 0.0, 1.0)
        result = solve_fixed_point(small_gain_kernel, guess, 0.0, 20.0, 0.125)
        assert result.lam.value(-0.5) == 0
        # [-δ, 0] 上线性插值：λ(0) = 0.1 e^{-δ λ(0) / 2}
        step = 0.125
        expected = brentq(lambda lam: lam - 0.1 * math.exp(-step * lam / 2.0), 0.0, 0.1, xtol=1e-15)
        assert result.lam.value(0.0) == pytest.approx(expected, abs=1e-8)

    def test_relaxation(self, small_gain_kernel, w_small):
        guess = initial_guess_from(repr(w_small), 0.0, 1.0)
        result = solve_fixed_point(small_gain_kernel, guess, 0.0, 20.0, 0.125, relaxation=0.5)
        assert result.residual <= 1e-9
        assert result.lam.value(20.0) == pytest.approx(w_small, abs=1e-9)

    def test_zero_kernel(self, zero_kernel):
        guess = initial_guess_from("0", 0.0, 1.0)
        result = solve_fixed_point(zero_kernel, guess, 0.0, 5.0, 0.125)
        assert result.iterations == 1
        assert result.residual == 0.0

    def test_history_decreases(self, small_gain_kernel):
        guess = initial_guess_from("1", 0.0, 1.0)
        result = solve_fixed_point(small_gain_kernel, guess, 0.0, 10.0, 0.125)
        assert result.history[-1] < result.history[0]

    def test_non_contraction_raises(self, large_gain_kernel):
        guess = initial_guess_from("0", 0.0, 1.0)
        with pytest.raises(ConvergenceError) as excinfo:
            solve_fixed_point(large_gain_kernel, guess, 0.0, 5.0, 0.125, max_iter=5)
        assert excinfo.value.iterations == 5

    @pytest.mark.parametrize("kwargs", [
        {"step": 0.25},
        {"relaxation": 0.0},
        {"relaxation": 1.5},
        {"horizon": 0.0},
    ])
    def test_invalid_arguments(self, small_gain_kernel, kwargs):
        arguments = {"t0": 0.0, "horizon": 5.0, "step": 0.125}
        arguments.update(kwargs)
        guess = initial_guess_from("0", 0.0, 1.0)
        with pytest.raises(ValidationError):
            solve_fixed_point(small_gain_kernel, guess, **arguments)

    def test_guess_must_cover_pre_interval(self, small_gain_kernel):
        guess = LambdaFunction.constant(0.0, -0.5, 0.0)
        with pytest.raises(ValidationError):
            solve_fixed_point(small_gain_kernel, guess, 0.0, 5.0, 0.125)


class TestClassicalRoots:

    def test_small_gain(self, small_gain_kernel, w_small):
        assert classical_roots(small_gain_kernel) == pytest.approx([w_small], abs=1e-13)

    def test_large_gain(self, large_gain_kernel, w_large):
        assert classical_roots(large_gain_kernel) == pytest.approx([w_large], abs=1e-13)

    def test_zero_kernel(self, zero_kernel):
        assert classical_roots(zero_kernel) == pytest.approx([0.0], abs=1e-14)

    def test_negative_gain_has_two_roots(self):
        kernel = build_kernel(1.0, atoms=[("1", "-0.2")])
        roots = classical_roots(kernel)
        assert len(roots) == 2
        assert max(roots) == pytest.approx(lambert_root(-0.2), abs=1e-12)

    def test_distributed_kernel_rejected(self, distributed_kernel):
        with pytest.raises(ValidationError):
            classical_roots(distributed_kernel)

    def test_variable_coefficient_rejected(self, variable_delay_kernel):
        with pytest.raises(ValidationError):
            classical_roots(variable_delay_kernel)


class TestLambertRoot:

    def test_matches_bisection(self, w_small, w_large):
        assert lambert_root(0.1) == pytest.approx(w_small, abs=1e-14)
        assert lambert_root(3.0) == pytest.approx(w_large, abs=1e-14)

    def test_longer_delay(self):
        lam = lambert_root(0.1, 2.0)
        assert lam == pytest.approx(0.1 * math.exp(-2.0 * lam), abs=1e-15)

    def test_below_branch_point(self):
        with pytest.raises(ValidationError):
            lambert_root(-0.5)

    def test_nonpositive_delay(self):
        with pytest.raises(ValidationError):
            lambert_root(0.1, 0.0)
