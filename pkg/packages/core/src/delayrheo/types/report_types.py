"""
报告类型 - 判据扫描和渐近检查的结果
"""

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple


class Verdict(Enum):
    """对 limsup V(t) < 1 的判定"""
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CriterionReport:
    """
    V(t) 在窗口上的取样
    mu_hat 是取样最大值，只代表该窗口，不是真正的 limsup
    """
    samples: List[Tuple[float, float]]
    mu_hat: float
    window: Tuple[float, float]
    verdict: Verdict
    margin: float
    t1_estimate: Optional[float] = None

    @property
    def times(self) -> List[float]:
        return [t for t, _ in self.samples]

    @property
    def values(self) -> List[float]:
        return [v for _, v in self.samples]

    def summary_line(self) -> str:
        t1 = "none" if self.t1_estimate is None else repr(self.t1_estimate)
        return (
            f"verdict={self.verdict.value} mu_hat={self.mu_hat!r} "
            f"window=[{self.window[0]!r}, {self.window[1]!r}] margin={self.margin!r} t1={t1}"
        )


@dataclass(frozen=True)
class AsymptoticsReport:
    """y(t) = x(t) e^{-∫λ} 的尾部行为"""
    L_x_estimate: complex
    y_tail_variation: float
    yprime_tail: float
    envelope_ok: bool
    M_x: float
    mu_used: float
    eq24_gap: float
    tail_window: Tuple[float, float]
    limit_rhs_tail: float = 0.0
    cauchy_bound: Optional[float] = None
    cauchy_ok: Optional[bool] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
