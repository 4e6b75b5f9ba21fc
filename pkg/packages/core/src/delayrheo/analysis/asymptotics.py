"""
渐近结论检查
y(t) = x(t) exp(-(Λ(t) - Λ(t0)))：
- y(t) 收敛（极限估计为 y(T)，尾部变差作误差条）
- y'(t) → 0，且 |y'(t)| ≤ M_x μ^{(t-t0)/r - 1}
- x' e^{-∫λ} - λ x e^{-∫λ} = y'，导数极限关系的两边只差 y'
"""

import math
from typing import Optional, Tuple

import numpy as np

from ..charsolve import LambdaFunction
from ..measure import StieltjesKernel
from ..solver.trajectory import Trajectory
from ..telemetry.logger import get_logger
from ..types.report_types import AsymptoticsReport
from ..utils.errors import HorizonError, HypothesisError, ValidationError

logger = get_logger(__name__)

DEFAULT_SLACK = 0.1
DEFAULT_TAIL_FRACTION = 0.25
# 包络检查和极限估计分别要求的最短区间（以 r 计）
ENVELOPE_SPANS = 3
LIMIT_SPANS = 5
# 舍入噪声下限 = NOISE_FACTOR · eps · max|y|
NOISE_FACTOR = 1000.0


def _growth(tr: Trajectory, lam: LambdaFunction) -> np.ndarray:
    eps = 1e-12 * max(1.0, abs(tr.start), abs(tr.end))
    if lam.start > tr.start + eps or lam.end < tr.end - eps:
        raise ValidationError(
            "lambda",
            f"lambda domain [{lam.start}, {lam.end}] does not cover trajectory [{tr.start}, {tr.end}]",
            (lam.start, lam.end),
        )
    return np.exp(-(lam.cumulative(tr.knots) - lam.cumulative(tr.t0)))


def transform_y(tr: Trajectory, lam: LambdaFunction) -> Trajectory:
    """y = x e^{-(Λ(t)-Λ(t0))}，y' = (x' - λx) e^{-(Λ(t)-Λ(t0))}"""
    factor = _growth(tr, lam)
    lam_values = lam.value(tr.knots)
    values = tr.values * factor
    derivs = (tr.derivs - lam_values * tr.values) * factor
    left_derivs = (tr.left_derivs - lam_values * tr.values) * factor
    return tr.map(values, derivs, left_derivs)


def untransform(y_tr: Trajectory, lam: LambdaFunction) -> np.ndarray:
    """由 y 恢复 x 的节点值"""
    return y_tr.values / _growth(y_tr, lam)


def noise_floor(y_tr: Trajectory) -> float:
    """[t0, T] 上 |y'| 不超过此值时视为舍入噪声"""
    scale = float(np.max(np.abs(y_tr.values[y_tr.knots >= y_tr.t0])))
    return NOISE_FACTOR * float(np.finfo(float).eps) * scale


def _first_span_max(y_tr: Trajectory, r: float) -> float:
    """M_x = max |y'| over [t0, t0 + r] 的节点"""
    knots = y_tr.knots
    mask = (knots >= y_tr.t0) & (knots <= y_tr.t0 + r * (1 + 1e-12))
    return float(np.max(np.abs(y_tr.derivs[mask])))


def envelope(times: np.ndarray, t0: float, M_x: float, mu: float, r: float,
             slack: float = DEFAULT_SLACK, atol: float = 0.0) -> np.ndarray:
    """M_x μ^{(t-t0)/r - 1} (1 + slack) + atol；μ = 0 时 t < t0 + r 处为 +inf"""
    exponent = (np.asarray(times, dtype=float) - t0) / r - 1.0
    with np.errstate(divide="ignore", over="ignore"):
        decay = np.power(mu, exponent)
    return M_x * decay * (1.0 + slack) + atol


def check_envelope(y_tr: Trajectory, mu: float, r: float,
                   slack: float = DEFAULT_SLACK, atol: float = 0.0) -> Tuple[float, bool]:
    """
    返回 (M_x, envelope_ok)
    envelope_ok 当且仅当 [t0, T] 上所有节点 |y'(t)| ≤ envelope(t)
    atol 之外总是加上 noise_floor，包络降到 eps 以下后只比较舍入噪声
    """
    if not 0.0 <= mu < 1.0:
        raise HypothesisError(mu)
    required = y_tr.t0 + ENVELOPE_SPANS * r
    if y_tr.end < required - 1e-9 * max(1.0, abs(required)):
        raise HorizonError(required, y_tr.end)
    M_x = _first_span_max(y_tr, r)
    tolerance = atol + noise_floor(y_tr)
    mask = y_tr.knots >= y_tr.t0
    times = y_tr.knots[mask]
    magnitude = np.abs(y_tr.derivs[mask])
    if M_x == 0.0:
        ok = bool(np.all(magnitude <= tolerance))
    else:
        bound = envelope(times, y_tr.t0, M_x, mu, r, slack, tolerance)
        ok = bool(np.all(magnitude <= bound))
    logger.debug(f"envelope check: M_x={M_x:.6e}, mu={mu:.6g}, ok={ok}")
    return M_x, ok


def cauchy_bound(M_x: float, mu: float, r: float, t0: float, t_start: float, horizon: float) -> float:
    """
    ∫_{t_start}^{T} M_x μ^{(s-t0)/r - 1} ds，尾部 |y(t) - y(T)| 的上界
    μ = 0 时 y' 在 t0 + r 之后为零
    """
    if M_x == 0.0:
        return 0.0
    if mu == 0.0:
        return M_x * max(0.0, t0 + r - t_start)
    return M_x * r / (mu * abs(math.log(mu))) * (
        mu ** ((t_start - t0) / r) - mu ** ((horizon - t0) / r)
    )


def estimate_limits(
    y_tr: Trajectory,
    lam: LambdaFunction,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    mu: Optional[float] = None,
    slack: float = DEFAULT_SLACK,
    atol: float = 0.0,
    x_tr: Optional[Trajectory] = None,
) -> AsymptoticsReport:
    """
    尾部窗口 [T - f (T - t0), T] 上的极限估计

    mu 给出且 0 ≤ mu < 1 时附带包络和 Cauchy 界检查；
    x_tr 给出时 eq24_gap 由 x 直接计算，否则等于 yprime_tail
    """
    r = y_tr.r
    t0, horizon = y_tr.t0, y_tr.end
    required = t0 + LIMIT_SPANS * r
    if horizon < required - 1e-9 * max(1.0, abs(required)):
        raise HorizonError(required, horizon)
    if not 0.0 < tail_fraction <= 1.0:
        raise ValidationError("tail_fraction", f"tail fraction must lie in (0, 1], got {tail_fraction}",
                              tail_fraction)

    t_start = horizon - tail_fraction * (horizon - t0)
    tail = y_tr.knots >= t_start
    times = y_tr.knots[tail]
    L_x = complex(y_tr.values[-1])
    y_tail_variation = float(np.max(np.abs(y_tr.values[tail] - L_x)))
    yprime_tail = float(np.max(np.abs(y_tr.derivs[tail])))

    if x_tr is not None:
        factor = np.exp(-(lam.cumulative(times) - lam.cumulative(t0)))
        x_values = x_tr.eval(times)
        gap = (x_tr.derivative(times) - lam.value(times) * x_values) * factor
        eq24_gap = float(np.max(np.abs(gap)))
    else:
        eq24_gap = yprime_tail

    lam_y = np.asarray(lam.value(times)) * y_tr.values[tail]
    limit_rhs_tail = float(np.max(np.abs(lam_y - lam_y[-1])))

    notes = []
    M_x = _first_span_max(y_tr, r)
    envelope_ok = False
    bound: Optional[float] = None
    cauchy_ok: Optional[bool] = None
    mu_used = float("nan") if mu is None else float(mu)
    if mu is None:
        notes.append("no mu supplied; envelope not checked")
    elif not 0.0 <= mu < 1.0:
        notes.append(f"mu={mu!r} is not below 1; hypothesis not verified, envelope not checked")
        logger.warning(f"mu={mu!r} >= 1, skipping envelope check")
    else:
        M_x, envelope_ok = check_envelope(y_tr, mu, r, slack, atol)
        bound = cauchy_bound(M_x, mu, r, t0, t_start, horizon)
        # y 的舍入误差逐步累积，尾部每个节点计一份噪声
        tail_noise = noise_floor(y_tr) * int(np.count_nonzero(tail))
        cauchy_ok = y_tail_variation <= bound * (1.0 + slack) + atol + tail_noise

    report = AsymptoticsReport(
        L_x_estimate=L_x,
        y_tail_variation=y_tail_variation,
        yprime_tail=yprime_tail,
        envelope_ok=envelope_ok,
        M_x=M_x,
        mu_used=mu_used,
        eq24_gap=eq24_gap,
        tail_window=(float(t_start), float(horizon)),
        limit_rhs_tail=limit_rhs_tail,
        cauchy_bound=bound,
        cauchy_ok=cauchy_ok,
        notes=notes,
    )
    logger.info(
        f"limits on [{t_start:.6g}, {horizon:.6g}]: L_x={L_x:.10g}, "
        f"tail variation={y_tail_variation:.3e}, |y'| tail={yprime_tail:.3e}"
    )
    return report


def identity_residual(kernel: StieltjesKernel, y_tr: Trajectory, lam: LambdaFunction, t: float) -> float:
    """
    |y'(t) + ∫_0^r d_θη(t,θ) [y(t) - y(t-θ)] e^{Λ(t-θ) - Λ(t)}|
    内层 ∫_{t-θ}^t y'(s) ds 直接用 y(t) - y(t-θ)
    """
    def integrand(col: np.ndarray, theta: np.ndarray) -> np.ndarray:
        return (y_tr.eval(col) - y_tr.eval(col - theta)) * np.exp(-lam.integral(col - theta, col))

    integral = kernel.integrate([t], integrand)[0]
    return float(abs(y_tr.derivative(t) + integral))
