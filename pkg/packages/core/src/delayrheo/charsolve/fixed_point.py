"""
广义特征方程 λ(t) = ∫_0^r d_θη(t,θ) exp(-∫_{t-θ}^t λ(s) ds)

rhs / residual 检查候选解；solve_fixed_point 做全区间 Picard 扫描。
一次扫描内各网格点的右端项只依赖冻结的上一轮迭代，按块并行计算，
块结果按原顺序拼接，并行与否结果逐位相同
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .lambda_function import LambdaFunction
from ..measure import StieltjesKernel
from ..telemetry.logger import get_logger
from ..utils.errors import ConvergenceError, ValidationError

logger = get_logger(__name__)

# 每块的网格点数，限制 (n, 节点数) 临时数组的大小
CHUNK_SIZE = 2048


def rhs_batch(kernel: StieltjesKernel, lam: LambdaFunction, ts, workers: int = 1) -> np.ndarray:
    """对一组 t 计算方程右端"""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))

    def integrand(col: np.ndarray, theta: np.ndarray) -> np.ndarray:
        return np.exp(-lam.integral(col - theta, col))

    chunks = [ts[i:i + CHUNK_SIZE] for i in range(0, ts.size, CHUNK_SIZE)] or [ts]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda chunk: kernel.integrate(chunk, integrand), chunks))
    else:
        parts = [kernel.integrate(chunk, integrand) for chunk in chunks]
    return np.concatenate(parts)


def rhs(kernel: StieltjesKernel, lam: LambdaFunction, t: float) -> complex:
    """∫_0^r d_θη(t,θ) exp(Λ(t-θ) - Λ(t))"""
    return complex(rhs_batch(kernel, lam, [t])[0])


def residual(kernel: StieltjesKernel, lam: LambdaFunction, grid, workers: int = 1) -> float:
    """max |λ(t) - rhs(t)|，grid 为 [t0, T] 上的取样点"""
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size == 0:
        return 0.0
    defect = np.atleast_1d(lam.value(grid)) - rhs_batch(kernel, lam, grid, workers)
    return float(np.max(np.abs(defect)))


def characteristic_grid(t0: float, r: float, horizon: float, step: float) -> np.ndarray:
    """
    [t0 - r, T'] 上的网格，t0 是节点
    步长缩小到整除 r，T 向上取整
    """
    per_delay = math.ceil(r / step - 1e-9)
    delta = r / per_delay
    steps = math.ceil((horizon - t0) / delta - 1e-9)
    offsets = np.arange(-per_delay, steps + 1)
    grid = t0 + offsets * delta
    grid[0] = t0 - r
    return grid


@dataclass
class FixedPointResult:
    """Picard 迭代结果"""
    lam: LambdaFunction
    iterations: int
    residual: float
    history: List[float]


def solve_fixed_point(
    kernel: StieltjesKernel,
    initial_guess: LambdaFunction,
    t0: float,
    horizon: float,
    step: float,
    tol: float = 1e-9,
    max_iter: int = 200,
    relaxation: float = 1.0,
    workers: int = 1,
) -> FixedPointResult:
    """
    Picard 迭代 λ_{k+1}(t) = (1-ω) λ_k(t) + ω rhs(λ_k)(t)，t ≥ t0

    [t0 - r, t0) 上 λ 固定为 initial_guess；t0 本身参与迭代。
    初始迭代：闭式猜测在整个区间求值，网格猜测在 t0 之后保持末值。
    当 max|rhs - λ_k| < tol/2 时检查残差 ≤ tol，通过则返回
    """
    r = kernel.r
    if step > r / 8 * (1 + 1e-9):
        raise ValidationError("grid_step", f"grid step {step} exceeds r/8 = {r / 8}", step)
    if not 0.0 < relaxation <= 1.0:
        raise ValidationError("relaxation", f"relaxation must lie in (0, 1], got {relaxation}", relaxation)
    if not horizon > t0:
        raise ValidationError("horizon", f"horizon {horizon} must exceed t0 = {t0}", horizon)
    if initial_guess.start > t0 - r + 1e-12 * max(1.0, abs(t0)):
        raise ValidationError(
            "initial_guess", f"initial guess must cover [{t0 - r}, {t0}]", (initial_guess.start, initial_guess.end)
        )
    if relaxation < 1.0:
        logger.warning(f"fixed-point relaxation active: omega={relaxation}")

    grid = characteristic_grid(t0, r, horizon, step)
    active = grid >= t0
    pre = ~active
    values = np.empty(grid.size, dtype=complex)
    values[pre] = initial_guess.value(grid[pre])
    values[active] = _initial_iterate(initial_guess, grid[active])
    targets = grid[active]

    history: List[float] = []
    last_residual = math.inf
    for iteration in range(1, max_iter + 1):
        lam = LambdaFunction.from_grid(grid, values)
        update = rhs_batch(kernel, lam, targets, workers)
        change = float(np.max(np.abs(update - values[active])))
        last_residual = change
        history.append(change)
        logger.debug(f"sweep {iteration}: max |rhs - lambda| = {change:.3e}")
        values = values.copy()
        values[active] = values[active] + relaxation * (update - values[active])
        if change < tol / 2:
            candidate = LambdaFunction.from_grid(grid, values)
            final = residual(kernel, candidate, targets, workers)
            if final <= tol:
                logger.info(f"fixed point converged after {iteration} sweeps, residual {final:.3e}",
                            extra={"iterations": iteration, "residual": final})
                return FixedPointResult(candidate, iteration, final, history)
            last_residual = final

    raise ConvergenceError(max_iter, last_residual)


def _initial_iterate(initial_guess: LambdaFunction, ts: np.ndarray) -> np.ndarray:
    if initial_guess.is_closed_form:
        return np.atleast_1d(initial_guess.expression.evaluate_array(ts))
    return np.full(ts.shape, initial_guess.values[-1], dtype=complex)


def initial_guess_from(expression_source: Optional[str], t0: float, r: float) -> LambdaFunction:
    """预区间 [t0 - r, t0] 上的闭式猜测，缺省为 0"""
    return LambdaFunction.closed_form(expression_source or "0", t0 - r, t0)
