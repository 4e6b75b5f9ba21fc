"""
方法步积分器 - 定步长 RK4 + 三次 Hermite 稠密输出
求解 x'(t) = L(t) x_t，历史值从已完成节点的 Hermite 插值取得
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .trajectory import Trajectory, hermite_ppoly
from ..exprparse import Expression, parse
from ..measure import StieltjesKernel, apply_functional
from ..telemetry.logger import get_logger
from ..types.core_types import Segment
from ..utils.errors import DivergenceError, EvaluationError, ValidationError

logger = get_logger(__name__)

# 每个时滞区间至少 8 步
MIN_STEPS_PER_DELAY = 8
_SNAP_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ProblemSetup:
    """
    初值问题：核、起点 t0、终点 T、[t0 - r, t0] 上的初始数据、步长 h

    构造后 step 和 horizon 已规范化：
    所有原子时滞为常数时 h 被缩小到整除 r；T 向上取整到 t0 + N h
    """
    kernel: StieltjesKernel
    t0: float
    horizon: float
    initial_data: Expression
    step: float
    requested_step: float = field(init=False)
    requested_horizon: float = field(init=False)

    def __post_init__(self):
        if isinstance(self.initial_data, str):
            object.__setattr__(self, "initial_data", parse(self.initial_data))
        r = self.kernel.r
        if not self.step > 0:
            raise ValidationError("step", f"step must be positive, got {self.step}", self.step)
        if self.step > r / MIN_STEPS_PER_DELAY * (1 + _SNAP_TOLERANCE):
            raise ValidationError(
                "step", f"step {self.step} exceeds r/{MIN_STEPS_PER_DELAY} = {r / MIN_STEPS_PER_DELAY}",
                self.step
            )
        if not self.horizon > self.t0:
            raise ValidationError("horizon", f"horizon {self.horizon} must exceed t0 = {self.t0}",
                                  self.horizon)
        object.__setattr__(self, "requested_step", float(self.step))
        object.__setattr__(self, "requested_horizon", float(self.horizon))

        step = float(self.step)
        if self.kernel.has_constant_delays:
            per_delay = math.ceil(r / step - _SNAP_TOLERANCE)
            snapped = r / per_delay
            if snapped != step:
                logger.warning(f"step snapped from {step!r} to {snapped!r} so that it divides r = {r!r}",
                               extra={"requested_step": step, "step": snapped})
            step = snapped
        else:
            logger.warning("kernel has variable delays; derivative breakpoints are not aligned with the grid")
        object.__setattr__(self, "step", step)

        steps = math.ceil((self.horizon - self.t0) / step - _SNAP_TOLERANCE)
        object.__setattr__(self, "horizon", self.t0 + steps * step)

    @property
    def r(self) -> float:
        return self.kernel.r

    @property
    def n_steps(self) -> int:
        return int(round((self.horizon - self.t0) / self.step))

    def main_knots(self) -> np.ndarray:
        """t0 + n h，n = 0..N，逐点计算不累加"""
        return self.t0 + np.arange(self.n_steps + 1) * self.step

    def initial_knots(self) -> np.ndarray:
        """[t0 - r, t0] 的等距节点，个数 ceil(r/h) + 1，末点恰为 t0"""
        count = math.ceil(self.r / self.step - _SNAP_TOLERANCE)
        return self.t0 - (count - np.arange(count + 1)) * (self.r / count)


def _stencil_derivative(expression: Expression, ts: np.ndarray) -> np.ndarray:
    """五点中心差分；在端点外不可求值时改用单侧五点公式"""
    delta = 1e-3 * np.maximum(1.0, np.abs(ts))
    try:
        f = [expression.evaluate_array(ts + k * delta) for k in (-2, -1, 1, 2)]
        return (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * delta)
    except EvaluationError:
        pass
    result = np.empty(ts.shape, dtype=complex)
    midpoint = 0.5 * (ts[0] + ts[-1])
    for i, (t, d) in enumerate(zip(ts, delta)):
        # 左半段向右取点，右半段向左取点
        sign = 1.0 if t <= midpoint else -1.0
        f = [expression.evaluate(t + sign * k * d) for k in range(5)]
        result[i] = sign * (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12.0 * d)
    return result


class _History:
    """积分过程中的部分解：预分配数组，按需构造尾部窗口的 Hermite"""

    def __init__(self, knots: np.ndarray, r: float):
        self.knots = knots
        self.r = r
        self.values = np.zeros(knots.size, dtype=complex)
        self.derivs = np.zeros(knots.size, dtype=complex)
        self.left_derivs = np.zeros(knots.size, dtype=complex)
        self.filled = 0
        self._window = None

    def append(self, value: complex, deriv: complex, left_deriv: complex = None) -> None:
        i = self.filled
        self.values[i] = value
        self.derivs[i] = deriv
        self.left_derivs[i] = deriv if left_deriv is None else left_deriv
        self.filled += 1

    def set_derivative(self, index: int, deriv: complex) -> None:
        self.derivs[index] = deriv

    def freeze_window(self) -> None:
        """覆盖 [t_n - r, t_n] 的 Hermite，向右外推用于步内前瞻"""
        last = self.filled - 1
        t_last = self.knots[last]
        lo = max(0, int(np.searchsorted(self.knots, t_last - self.r, side="left")) - 1)
        lo = min(lo, last - 1)
        sl = slice(lo, last + 1)
        self._window = hermite_ppoly(
            self.knots[sl], self.values[sl], self.derivs[sl], self.left_derivs[sl], extrapolate=True
        )

    def stage_segment(self, t_stage: float, stage_value: complex) -> Segment:
        """
        阶段 t_stage 处的状态段
        s = 0 处取 RK 阶段值而不是插值，这正是 θ = 0 原子 a(t)x(t) 项需要的
        """
        window = self._window

        def evaluator(s: np.ndarray) -> np.ndarray:
            values = np.asarray(window(t_stage + s), dtype=complex)
            return np.where(s == 0.0, stage_value, values)

        return Segment(self.r, evaluator)


def _rhs(kernel: StieltjesKernel, history: _History, t: float, x: complex) -> complex:
    value = apply_functional(kernel, t, history.stage_segment(t, x))
    if not np.isfinite(value):
        raise DivergenceError(t)
    return value


def solve(setup: ProblemSetup) -> Trajectory:
    """
    方法步 + RK4
    k1 复用上一步末尾的 L(t_{n+1}) x_{t_{n+1}}（FSAL），每步 3 次新的泛函求值外加一次末端求值
    """
    kernel, h = setup.kernel, setup.step
    pre_knots = setup.initial_knots()
    main_knots = setup.main_knots()
    knots = np.concatenate([pre_knots[:-1], main_knots])
    history = _History(knots, setup.r)

    initial_values = setup.initial_data.evaluate_array(pre_knots)
    initial_derivs = _stencil_derivative(setup.initial_data, pre_knots)
    for value, deriv in zip(initial_values[:-1], initial_derivs[:-1]):
        history.append(value, deriv)
    x = complex(initial_values[-1])
    # t0 处先放左导数占位，窗口需要它来外推初始数据
    history.append(x, initial_derivs[-1], initial_derivs[-1])
    history.freeze_window()
    d = _rhs(kernel, history, setup.t0, x)
    history.set_derivative(history.filled - 1, d)

    logger.debug(f"integrating on [{setup.t0}, {setup.horizon}] with h={h!r}, {setup.n_steps} steps")
    steps_per_delay = max(1, int(round(setup.r / h)))
    for n in range(setup.n_steps):
        t = main_knots[n]
        t_half, t_next = t + 0.5 * h, main_knots[n + 1]
        history.freeze_window()
        k1 = d
        k2 = _rhs(kernel, history, t_half, x + 0.5 * h * k1)
        k3 = _rhs(kernel, history, t_half, x + 0.5 * h * k2)
        k4 = _rhs(kernel, history, t_next, x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(x):
            raise DivergenceError(float(t_next))
        d = _rhs(kernel, history, t_next, x)
        history.append(x, d)
        if (n + 1) % steps_per_delay == 0:
            logger.debug(f"delay span ending at t={t_next:.6g}: |x|={abs(x):.6e}")

    logger.info(f"solved on [{setup.t0}, {setup.horizon}]: x(T)={x:.10g}")
    return Trajectory(setup.t0, setup.r, knots, history.values, history.derivs, history.left_derivs)

