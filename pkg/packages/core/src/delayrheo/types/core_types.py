"""
核心类型定义
Segment: 状态 x_t，即 θ ↦ x(t+θ)，θ ∈ [-r, 0]
"""

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from ..utils.errors import OutOfDomainError

Scalar = Union[float, complex]
ArrayFunction = Callable[[np.ndarray], np.ndarray]

# 端点比较的相对容差
DOMAIN_EPS = 1e-12


@dataclass(frozen=True)
class Segment:
    """
    定义在 [-r, 0] 上的连续函数
    evaluator 接受数组返回同形 complex 数组
    """
    r: float
    evaluator: ArrayFunction
    continuous: bool = True

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        eps = DOMAIN_EPS * max(1.0, self.r)
        if np.any((s < -self.r - eps) | (s > eps)):
            bad = float(s[(s < -self.r - eps) | (s > eps)].flat[0])
            raise OutOfDomainError(bad, -self.r, 0.0, what="segment")
        values = np.asarray(self.evaluator(np.clip(s, -self.r, 0.0)), dtype=complex)
        return np.array(np.broadcast_to(values, s.shape))

    def at(self, s: float) -> complex:
        return complex(self(np.asarray(s)))

    @classmethod
    def constant(cls, r: float, value: Scalar) -> "Segment":
        return cls(r, lambda s: np.full(np.shape(s), complex(value)))

    def scaled(self, alpha: Scalar) -> "Segment":
        return Segment(self.r, lambda s: alpha * self(s), self.continuous)

    def __add__(self, other: "Segment") -> "Segment":
        return Segment(self.r, lambda s: self(s) + other(s), self.continuous and other.continuous)
