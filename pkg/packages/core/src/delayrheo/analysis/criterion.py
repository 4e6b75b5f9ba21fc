"""
判据积分 V(t) = ∫_0^r θ |exp(-∫_{t-θ}^t λ)| d_θ|η|(t,θ) 和窗口扫描
"""

import math
from typing import Optional, Sequence, Tuple

import numpy as np

from ..charsolve import LambdaFunction
from ..measure import StieltjesKernel
from ..telemetry.logger import get_logger
from ..types.report_types import CriterionReport, Verdict
from ..utils.errors import ValidationError

logger = get_logger(__name__)

DEFAULT_MARGIN = 0.02
# 单调性判断的容差
MONOTONE_TOLERANCE = 1e-12


def criterion_batch(kernel: StieltjesKernel, lam: LambdaFunction, ts) -> np.ndarray:
    """批量计算 V(t)"""

    def integrand(col: np.ndarray, theta: np.ndarray) -> np.ndarray:
        return theta * np.abs(np.exp(-lam.integral(col - theta, col)))

    return kernel.integrate(ts, integrand, absolute=True).real


def criterion_value(kernel: StieltjesKernel, lam: LambdaFunction, t: float) -> float:
    return float(criterion_batch(kernel, lam, [t])[0])


def _last_quarter(values: np.ndarray) -> np.ndarray:
    start = int(math.floor(0.75 * (values.size - 1)))
    return values[start:]


def decide(values: np.ndarray, margin: float) -> Verdict:
    """
    fails：最后四分之一窗口内 V 始终 ≥ 1
    holds：mu_hat < 1 - margin，且 V 在最后四分之一不增或 mu_hat < 0.5
    其余为 inconclusive
    """
    mu_hat = float(np.max(values))
    tail = _last_quarter(values)
    if np.all(tail >= 1.0):
        return Verdict.FAILS
    if mu_hat < 1.0 - margin:
        non_increasing = bool(np.all(np.diff(tail) <= MONOTONE_TOLERANCE * np.maximum(1.0, tail[:-1])))
        if non_increasing or mu_hat < 0.5:
            return Verdict.HOLDS
    return Verdict.INCONCLUSIVE


def translation_time(times: Sequence[float], values: np.ndarray, margin: float) -> Optional[float]:
    """最早的取样时刻 t1，之后 V 一直低于 1 - margin"""
    below = values < 1.0 - margin
    if not below[-1]:
        return None
    # 从末尾往前找第一个不满足的点
    failing = np.flatnonzero(~below)
    index = 0 if failing.size == 0 else int(failing[-1]) + 1
    return float(times[index])


def scan(
    kernel: StieltjesKernel,
    lam: LambdaFunction,
    window: Tuple[float, float],
    n_samples: int = 200,
    margin: float = DEFAULT_MARGIN,
) -> CriterionReport:
    """在窗口上等距取样 V，给出 mu_hat 和判定"""
    t_start, t_end = float(window[0]), float(window[1])
    if not t_end > t_start:
        raise ValidationError("window", f"window [{t_start}, {t_end}] is empty", window)
    if n_samples < 2:
        raise ValidationError("samples", f"need at least 2 samples, got {n_samples}", n_samples)
    if not 0.0 <= margin < 1.0:
        raise ValidationError("margin", f"margin must lie in [0, 1), got {margin}", margin)
    if t_start < lam.start + kernel.r - 1e-12 * max(1.0, abs(t_start)) or t_end > lam.end + 1e-12 * max(1.0, abs(t_end)):
        raise ValidationError(
            "window",
            f"window [{t_start}, {t_end}] needs lambda on [{t_start - kernel.r}, {t_end}], "
            f"have [{lam.start}, {lam.end}]",
            window,
        )

    times = np.linspace(t_start, t_end, n_samples)
    values = criterion_batch(kernel, lam, times)
    mu_hat = float(np.max(values))
    verdict = decide(values, margin)
    t1 = translation_time(times, values, margin)
    logger.info(f"criterion scan on [{t_start}, {t_end}]: mu_hat={mu_hat:.6g}, verdict={verdict.value}")
    return CriterionReport(
        samples=[(float(t), float(v)) for t, v in zip(times, values)],
        mu_hat=mu_hat,
        window=(t_start, t_end),
        verdict=verdict,
        margin=margin,
        t1_estimate=t1,
    )
