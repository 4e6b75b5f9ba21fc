"""
StieltjesKernel - 随时间变化的有界变差函数 η(t,·)
表示为原子（时滞, 质量）和密度片段 k(t,θ) 的组合，只存增量，
因此 η(t,0)=0 和右连续性自然成立，|η| 有闭式
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .quadrature import composite_rule
from ..exprparse import Expression, constant, parse
from ..telemetry.logger import get_logger
from ..types.core_types import DOMAIN_EPS, Segment
from ..utils.errors import DelayRangeError, ValidationError

logger = get_logger(__name__)

# f(t_col, theta) -> 数组，t_col 形状 (n, 1)，theta 形状 (n, m) 或 (1, m)
BatchIntegrand = Callable[[np.ndarray, np.ndarray], np.ndarray]
ExpressionLike = Union[Expression, str, float]


def _as_expression(value: ExpressionLike) -> Expression:
    if isinstance(value, Expression):
        return value
    if isinstance(value, str):
        return parse(value)
    return constant(value)


@dataclass(frozen=True)
class Atom:
    """点质量：b_j(t) 作用在 x(t - τ_j(t)) 上"""
    delay: Expression
    mass: Expression

    @classmethod
    def of(cls, delay: ExpressionLike, mass: ExpressionLike) -> "Atom":
        return cls(_as_expression(delay), _as_expression(mass))

    def delays_at(self, ts: np.ndarray, r: float) -> np.ndarray:
        """计算 τ_j(ts)，检查实值且落在 [0, r]"""
        values = self.delay.evaluate_array(ts)
        eps = DOMAIN_EPS * max(1.0, r)
        bad = (values.imag != 0) | (values.real < -eps) | (values.real > r + eps)
        if np.any(bad):
            index = int(np.argmax(bad))
            raise DelayRangeError(values[index], float(ts[index]), r)
        return np.clip(values.real, 0.0, r)

    def masses_at(self, ts: np.ndarray) -> np.ndarray:
        return self.mass.evaluate_array(ts)


@dataclass(frozen=True)
class DensityPiece:
    """绝对连续部分：d_θη = k(t,θ) dθ，θ ∈ [lo, hi]"""
    kernel: Expression
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValidationError(
                "support", f"density support requires lo < hi, got [{self.lo}, {self.hi}]",
                (self.lo, self.hi)
            )

    @classmethod
    def of(cls, kernel: ExpressionLike, lo: float, hi: float) -> "DensityPiece":
        return cls(_as_expression(kernel), float(lo), float(hi))

    @property
    def support(self) -> Tuple[float, float]:
        return (self.lo, self.hi)


@dataclass(frozen=True)
class StieltjesKernel:
    """
    L(t)φ = ∫_0^r d_θη(t,θ) φ(-θ)

    原子部分精确求和，密度部分用复合 Gauss-Legendre（每段 quadrature_order 点，
    支撑区间等分 panels 段）。不可变，所有方法都是纯函数
    """
    r: float
    atoms: Tuple[Atom, ...] = ()
    densities: Tuple[DensityPiece, ...] = ()
    quadrature_order: int = 16
    panels: int = 8

    def __post_init__(self):
        if not self.r > 0:
            raise ValidationError("r", f"delay horizon r must be positive, got {self.r}", self.r)
        if self.quadrature_order < 1 or self.panels < 1:
            raise ValidationError(
                "quadrature", "quadrature order and panel count must be positive",
                (self.quadrature_order, self.panels)
            )
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "densities", tuple(self.densities))
        eps = DOMAIN_EPS * max(1.0, self.r)
        for piece in self.densities:
            if piece.lo < -eps or piece.hi > self.r + eps:
                raise ValidationError(
                    "support", f"density support [{piece.lo}, {piece.hi}] not inside [0, {self.r}]",
                    piece.support
                )

    @cached_property
    def _rules(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        return [
            composite_rule(piece.lo, piece.hi, self.quadrature_order, self.panels)
            for piece in self.densities
        ]

    @classmethod
    def from_discrete(
        cls,
        r: float,
        a: Optional[ExpressionLike] = None,
        terms: Iterable[Tuple[ExpressionLike, ExpressionLike]] = (),
        **kwargs
    ) -> "StieltjesKernel":
        """
        x'(t) = a(t)x(t) + Σ b_j(t) x(t - τ_j(t)) 的核
        terms 为 (b_j, τ_j) 序列
        """
        atoms = [] if a is None else [Atom.of(0.0, a)]
        atoms.extend(Atom.of(delay, mass) for mass, delay in terms)
        return cls(r, tuple(atoms), (), **kwargs)

    @property
    def is_empty(self) -> bool:
        return not self.atoms and not self.densities

    @property
    def atoms_only(self) -> bool:
        return not self.densities

    @cached_property
    def has_constant_delays(self) -> bool:
        return all(atom.delay.is_constant for atom in self.atoms)

    @cached_property
    def constant_delays(self) -> Tuple[float, ...]:
        """常时滞取值；仅在 has_constant_delays 时有意义"""
        return tuple(atom.delay.evaluate().real for atom in self.atoms if atom.delay.is_constant)

    def integrate(self, ts, f: BatchIntegrand, absolute: bool = False) -> np.ndarray:
        """
        批量 Stieltjes 积分，对每个 t 返回 Σ b_j f(τ_j) + Σ ∫ k f dθ

        absolute=True 时用 |b_j| 和 |k|，即对 |η| 积分
        求和顺序固定：先原子（按声明顺序），再各密度片段，结果与批大小无关
        """
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        col = ts[:, None]
        total = np.zeros(ts.shape, dtype=complex)
        if self.atoms:
            delays = np.column_stack([atom.delays_at(ts, self.r) for atom in self.atoms])
            masses = np.column_stack([atom.masses_at(ts) for atom in self.atoms])
            weights = np.abs(masses) if absolute else masses
            values = np.broadcast_to(f(col, delays), delays.shape)
            for j in range(len(self.atoms)):
                total = total + weights[:, j] * values[:, j]
        for piece, (nodes, quad_weights) in zip(self.densities, self._rules):
            theta = nodes[None, :]
            k = piece.kernel.evaluate_array(col, theta)
            if absolute:
                k = np.abs(k)
            values = np.broadcast_to(f(col, theta), k.shape)
            total = total + (k * values * quad_weights).sum(axis=1)
        return total

    def variation(self, t: float) -> float:
        """|η|(t, [0, r])，即 ‖L(t)‖"""
        return total_variation_integral(self, t, lambda theta: np.ones_like(theta))


ThetaFunction = Callable[[np.ndarray], np.ndarray]


def _pointwise(f: ThetaFunction) -> BatchIntegrand:
    return lambda _t, theta: np.asarray(f(theta), dtype=complex)


def stieltjes_integral(kernel: StieltjesKernel, t: float, f: ThetaFunction) -> complex:
    """∫_0^r d_θη(t,θ) f(θ)，f 接受 θ 数组"""
    return complex(kernel.integrate([t], _pointwise(f))[0])


def total_variation_integral(kernel: StieltjesKernel, t: float, f: ThetaFunction) -> float:
    """∫_0^r f(θ) d_θ|η|(t,θ)，f 取非负实值"""
    return float(kernel.integrate([t], _pointwise(f), absolute=True)[0].real)


def apply_functional(kernel: StieltjesKernel, t: float, segment: Segment) -> complex:
    """L(t)φ，f(θ) = φ(-θ)"""
    return stieltjes_integral(kernel, t, lambda theta: segment(-theta))


def build_kernel(
    r: float,
    atoms: Sequence[Tuple[ExpressionLike, ExpressionLike]] = (),
    densities: Sequence[Tuple[ExpressionLike, float, float]] = (),
    quadrature_order: int = 16,
    panels: int = 8,
) -> StieltjesKernel:
    """由 (delay, mass) 和 (kernel, lo, hi) 元组构造核"""
    kernel = StieltjesKernel(
        r,
        tuple(Atom.of(delay, mass) for delay, mass in atoms),
        tuple(DensityPiece.of(k, lo, hi) for k, lo, hi in densities),
        quadrature_order,
        panels,
    )
    if not kernel.has_constant_delays:
        logger.debug("kernel has variable delays: %s",
                     [str(atom.delay) for atom in kernel.atoms if not atom.delay.is_constant])
    return kernel
