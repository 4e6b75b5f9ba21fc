"""
LambdaFunction - [start, end] 上的连续 λ(·) 及其累积积分 Λ(t) = ∫_start^t λ
两种形式：
- 闭式表达式：常数和 c/(t+a) 用精确原函数，其余用分段 Gauss-Legendre
- 网格：线性插值，Λ 为精确的梯形累加
integral(a, b) 一律定义为 Λ(b) - Λ(a)，保证可加性
"""

import math
from enum import Enum
from typing import Callable, Iterator, Optional, Tuple, Union

import numpy as np

from ..exprparse import Expression, constant, parse
from ..exprparse.nodes import BinaryOp, Constant, Negate, Node, Variable
from ..measure.quadrature import mapped_rule
from ..types.core_types import DOMAIN_EPS
from ..utils.errors import OutOfDomainError, ValidationError

ArrayLike = Union[float, np.ndarray]

# 非查表闭式的锚点间距和每段求积点数
ANCHOR_SPACING = 0.25
ANCHOR_ORDER = 16


class LambdaForm(Enum):
    CLOSED_FORM = "closed_form"
    GRID = "grid"


def _number(node: Node) -> Optional[float]:
    if isinstance(node, Constant):
        return node.value
    if isinstance(node, Negate) and isinstance(node.operand, Constant):
        return -node.operand.value
    return None


def _shift(node: Node) -> Optional[float]:
    """匹配 t、t + c、c + t、t - c，返回 c"""
    if isinstance(node, Variable) and node.name == "t":
        return 0.0
    if isinstance(node, BinaryOp) and node.op in ("+", "-"):
        left, right = node.left, node.right
        if isinstance(left, Variable) and left.name == "t":
            c = _number(right)
            if c is not None:
                return c if node.op == "+" else -c
        if node.op == "+" and isinstance(right, Variable) and right.name == "t":
            return _number(left)
    return None


def antiderivative(expression: Expression, start: float, end: float) -> Optional[Callable[[np.ndarray], np.ndarray]]:
    """
    查表得到 Λ(t) = ∫_start^t λ 的闭式
    支持 常数 和 k/(t + c)（要求 t + c 在 [start, end] 上为正）
    """
    if expression.is_constant:
        c = expression.evaluate()
        return lambda t: c * (np.asarray(t, dtype=float) - start)
    node = expression.ast
    if isinstance(node, BinaryOp) and node.op == "/":
        k = _number(node.left)
        c = _shift(node.right)
        if k is not None and c is not None and start + c > 0 and end + c > 0:
            base = math.log(start + c)
            return lambda t: (k * (np.log(np.asarray(t, dtype=float) + c) - base)).astype(complex)
    return None


class LambdaFunction:
    """λ(·) 与 Λ(·)"""

    def __init__(self, form: LambdaForm, start: float, end: float,
                 expression: Optional[Expression] = None,
                 knots: Optional[np.ndarray] = None,
                 values: Optional[np.ndarray] = None):
        if not end > start:
            raise ValidationError("lambda", f"lambda domain [{start}, {end}] is empty", (start, end))
        self.form = form
        self.start = float(start)
        self.end = float(end)
        self.expression = expression
        self.knots = knots
        self.values = values
        self._exact: Optional[Callable[[np.ndarray], np.ndarray]] = None
        if form is LambdaForm.GRID:
            steps = np.diff(knots) * (values[:-1] + values[1:]) / 2.0
            self._cumulative = np.concatenate([[0.0 + 0.0j], np.cumsum(steps)])
            for array in (knots, values, self._cumulative):
                array.setflags(write=False)
        else:
            self._exact = antiderivative(expression, self.start, self.end)
            if self._exact is None:
                self._build_anchors()

    # ------------------------------------------------------------ 构造

    @classmethod
    def closed_form(cls, expression: Union[Expression, str], start: float, end: float) -> "LambdaFunction":
        if isinstance(expression, str):
            expression = parse(expression)
        if "theta" in expression.free_variables:
            raise ValidationError("lambda", "closed-form lambda may only depend on t", str(expression))
        return cls(LambdaForm.CLOSED_FORM, start, end, expression=expression)

    @classmethod
    def constant(cls, value: float, start: float, end: float) -> "LambdaFunction":
        return cls.closed_form(constant(value), start, end)

    @classmethod
    def from_grid(cls, knots, values) -> "LambdaFunction":
        knots = np.array(knots, dtype=float)
        values = np.array(values, dtype=complex)
        if knots.ndim != 1 or knots.size < 2 or knots.shape != values.shape:
            raise ValidationError("lambda", "grid lambda needs matching knots and values (at least two)")
        if np.any(np.diff(knots) <= 0):
            raise ValidationError("lambda", "grid knots must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValidationError("lambda", "grid values must be finite")
        return cls(LambdaForm.GRID, knots[0], knots[-1], knots=knots, values=values)

    def _build_anchors(self) -> None:
        count = max(1, math.ceil((self.end - self.start) / ANCHOR_SPACING))
        anchors = np.linspace(self.start, self.end, count + 1)
        nodes, weights = mapped_rule(anchors[:-1], anchors[1:], ANCHOR_ORDER)
        pieces = (self.expression.evaluate_array(nodes) * weights).sum(axis=-1)
        self._anchors = anchors
        self._anchor_values = np.concatenate([[0.0 + 0.0j], np.cumsum(pieces)])

    # ------------------------------------------------------------ 求值

    @property
    def is_closed_form(self) -> bool:
        return self.form is LambdaForm.CLOSED_FORM

    @property
    def has_exact_cumulative(self) -> bool:
        return self._exact is not None

    def _check(self, t: np.ndarray) -> np.ndarray:
        eps = DOMAIN_EPS * max(1.0, abs(self.start), abs(self.end))
        outside = (t < self.start - eps) | (t > self.end + eps)
        if np.any(outside):
            raise OutOfDomainError(float(t[outside].flat[0]), self.start, self.end, what="lambda")
        return np.clip(t, self.start, self.end)

    def value(self, t: ArrayLike) -> Union[complex, np.ndarray]:
        """λ(t)"""
        array = self._check(np.asarray(t, dtype=float))
        if self.is_closed_form:
            result = self.expression.evaluate_array(array)
        else:
            result = np.interp(array, self.knots, self.values.real) \
                + 1j * np.interp(array, self.knots, self.values.imag)
        return complex(result) if np.ndim(result) == 0 else np.asarray(result, dtype=complex)

    __call__ = value

    def cumulative(self, t: ArrayLike) -> Union[complex, np.ndarray]:
        """Λ(t) = ∫_start^t λ(s) ds"""
        array = self._check(np.asarray(t, dtype=float))
        if self._exact is not None:
            result = self._exact(array)
        elif self.is_closed_form:
            result = self._anchored(array)
        else:
            index = np.clip(np.searchsorted(self.knots, array, side="right") - 1, 0, self.knots.size - 2)
            dt = array - self.knots[index]
            here = np.asarray(self.value(array), dtype=complex)
            result = self._cumulative[index] + dt * (self.values[index] + here) / 2.0
        result = np.asarray(result, dtype=complex)
        return complex(result) if result.ndim == 0 else result

    def _anchored(self, t: np.ndarray) -> np.ndarray:
        index = np.clip(np.searchsorted(self._anchors, t, side="right") - 1, 0, self._anchors.size - 2)
        nodes, weights = mapped_rule(self._anchors[index], t, ANCHOR_ORDER)
        return self._anchor_values[index] + (self.expression.evaluate_array(nodes) * weights).sum(axis=-1)

    def integral(self, a: ArrayLike, b: ArrayLike) -> Union[complex, np.ndarray]:
        """∫_a^b λ = Λ(b) - Λ(a)，按 numpy 规则广播"""
        return np.subtract(self.cumulative(b), self.cumulative(a))

    # ------------------------------------------------------------ 输出

    def sample_knots(self, step: Optional[float] = None) -> np.ndarray:
        """网格形式返回自身节点；闭式按 step 等距取样"""
        if not self.is_closed_form:
            return self.knots
        if step is None:
            raise ValidationError("step", "closed-form lambda needs a sampling step")
        count = max(1, math.ceil((self.end - self.start) / step - 1e-9))
        return np.linspace(self.start, self.end, count + 1)

    def rows(self, step: Optional[float] = None) -> Iterator[Tuple[float, float, float, float, float]]:
        """CSV 行：t, Re λ, Im λ, Re Λ, Im Λ"""
        ts = self.sample_knots(step)
        lam = np.atleast_1d(self.value(ts))
        cum = np.atleast_1d(self.cumulative(ts))
        for t, v, c in zip(ts, lam, cum):
            yield float(t), float(v.real), float(v.imag), float(c.real), float(c.imag)

    def __repr__(self) -> str:
        if self.is_closed_form:
            return f"LambdaFunction(closed_form={self.expression.source!r}, domain=[{self.start}, {self.end}])"
        return f"LambdaFunction(grid={self.knots.size} knots, domain=[{self.start}, {self.end}])"
