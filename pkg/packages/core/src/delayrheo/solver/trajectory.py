"""
Trajectory - 带稠密输出的解记录
区间 [t0 - r, T] 上逐段三次 Hermite 插值；节点处的值和导数精确返回
"""

from typing import Iterator, Tuple, Union

import numpy as np
from scipy.interpolate import PPoly

from ..types.core_types import DOMAIN_EPS, Segment
from ..utils.errors import OutOfDomainError, ValidationError

ArrayLike = Union[float, np.ndarray]


def hermite_ppoly(knots: np.ndarray, values: np.ndarray, right_derivs: np.ndarray,
                  left_derivs: np.ndarray, extrapolate: bool = False) -> PPoly:
    """
    逐段三次 Hermite 的 PPoly 系数
    区间 i 的左端用 right_derivs[i]，右端用 left_derivs[i+1]，
    这样 t0 处允许导数跳跃（初始数据的左导数 vs 方程给出的右导数）
    """
    dx = np.diff(knots)
    y0, y1 = values[:-1], values[1:]
    d0, d1 = right_derivs[:-1], left_derivs[1:]
    slope = (y1 - y0) / dx
    coefficients = np.array([
        (d0 + d1 - 2.0 * slope) / dx**2,
        (3.0 * slope - 2.0 * d0 - d1) / dx,
        d0,
        y0,
    ], dtype=complex)
    return PPoly(coefficients, knots, extrapolate=extrapolate)


class Trajectory:
    """
    x(·) 在 [t0 - r, T] 上的记录

    knots 严格递增，knots[0] = t0 - r，knots[-1] = T，t0 本身是节点。
    derivs 是右导数；left_derivs 只在 t0 处和 derivs 不同
    """

    def __init__(self, t0: float, r: float, knots, values, derivs, left_derivs=None):
        knots = np.array(knots, dtype=float)
        values = np.array(values, dtype=complex)
        derivs = np.array(derivs, dtype=complex)
        left_derivs = derivs.copy() if left_derivs is None else np.array(left_derivs, dtype=complex)
        if knots.ndim != 1 or knots.size < 2:
            raise ValidationError("knots", "trajectory needs at least two knots", knots.size)
        if not (values.shape == derivs.shape == left_derivs.shape == knots.shape):
            raise ValidationError("values", "knots, values and derivatives must have equal length")
        if np.any(np.diff(knots) <= 0):
            raise ValidationError("knots", "knots must be strictly increasing")
        for array in (knots, values, derivs, left_derivs):
            array.setflags(write=False)

        self.t0 = float(t0)
        self.r = float(r)
        self.knots = knots
        self.values = values
        self.derivs = derivs
        self.left_derivs = left_derivs
        self._spline = hermite_ppoly(knots, values, derivs, left_derivs)
        self._dspline = self._spline.derivative()

    @classmethod
    def from_samples(cls, t0: float, r: float, knots, values, derivs) -> "Trajectory":
        """导数处处连续的轨迹（测试和变换用）"""
        return cls(t0, r, knots, values, derivs)

    @property
    def start(self) -> float:
        return float(self.knots[0])

    @property
    def end(self) -> float:
        return float(self.knots[-1])

    def __len__(self) -> int:
        return self.knots.size

    def _check(self, t: np.ndarray, lo: float, what: str = "trajectory") -> None:
        eps = DOMAIN_EPS * max(1.0, abs(lo), abs(self.end))
        outside = (t < lo - eps) | (t > self.end + eps)
        if np.any(outside):
            raise OutOfDomainError(float(t[outside].flat[0]), lo, self.end, what=what)

    def _at_knots(self, t: np.ndarray, spline: PPoly, stored: np.ndarray) -> np.ndarray:
        t = np.clip(t, self.start, self.end)
        result = np.asarray(spline(t), dtype=complex)
        index = np.clip(np.searchsorted(self.knots, t), 0, self.knots.size - 1)
        exact = self.knots[index] == t
        return np.where(exact, stored[index], result)

    def eval(self, t: ArrayLike) -> Union[complex, np.ndarray]:
        """x(t)；节点处返回存储值"""
        array = np.asarray(t, dtype=float)
        self._check(array, self.start)
        result = self._at_knots(array, self._spline, self.values)
        return complex(result) if result.ndim == 0 else result

    __call__ = eval

    def derivative(self, t: ArrayLike) -> Union[complex, np.ndarray]:
        """x'(t)；节点处返回存储的右导数（T 处为存储值）"""
        array = np.asarray(t, dtype=float)
        self._check(array, self.start)
        result = self._at_knots(array, self._dspline, self.derivs)
        return complex(result) if result.ndim == 0 else result

    def segment_at(self, t: float) -> Segment:
        """x_t: s ↦ x(t + s)，s ∈ [-r, 0]，要求 t ∈ [t0, T]"""
        self._check(np.asarray(float(t)), self.t0, what="segment time")
        t = float(t)
        return Segment(self.r, lambda s: self.eval(t + np.asarray(s, dtype=float)))

    def rows(self) -> Iterator[Tuple[float, float, float, float, float]]:
        """CSV 行：t, Re x, Im x, Re x', Im x'"""
        for t, x, dx in zip(self.knots, self.values, self.derivs):
            yield float(t), float(x.real), float(x.imag), float(dx.real), float(dx.imag)

    def map(self, values, derivs, left_derivs=None) -> "Trajectory":
        """同一节点网格上的新轨迹"""
        return Trajectory(self.t0, self.r, self.knots, values, derivs, left_derivs)

    def __repr__(self) -> str:
        return f"Trajectory(t0={self.t0}, r={self.r}, knots={self.knots.size}, T={self.end})"
