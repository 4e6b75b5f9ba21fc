"""
Expression - 解析后的算术公式
系数、时滞、密度核和闭式 λ 都用它表示；解析后不可变，可跨线程共享
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Optional, Union

import numpy as np

from .evaluator import Evaluator
from .nodes import Constant, Node, free_variables, to_source
from .parser import Parser

ArrayLike = Union[float, complex, np.ndarray]


@dataclass(frozen=True)
class Expression:
    """带源码的表达式语法树"""
    source: str
    ast: Node = field(compare=False)

    @cached_property
    def free_variables(self) -> FrozenSet[str]:
        return free_variables(self.ast)

    @property
    def is_constant(self) -> bool:
        return not self.free_variables

    def to_source(self) -> str:
        """全括号打印，可再次解析"""
        return to_source(self.ast)

    def evaluate(self, t: Optional[float] = None, theta: Optional[float] = None) -> complex:
        """标量求值"""
        return complex(self._run(t, theta))

    def evaluate_array(self, t: ArrayLike = None, theta: Optional[ArrayLike] = None) -> np.ndarray:
        """
        向量化求值，t 和 theta 按 numpy 规则广播
        返回 complex128 数组，形状为广播后的形状
        """
        result = self._run(t, theta)
        inputs = [np.shape(v) for v in (t, theta) if v is not None]
        shape = np.broadcast_shapes(*inputs) if inputs else ()
        return np.array(np.broadcast_to(result, shape), dtype=complex)

    def _run(self, t, theta) -> np.ndarray:
        bindings: Dict[str, np.ndarray] = {}
        if t is not None:
            bindings["t"] = np.asarray(t, dtype=complex)
        if theta is not None:
            bindings["theta"] = np.asarray(theta, dtype=complex)
        return Evaluator(self.source, bindings).evaluate(self.ast)

    def __str__(self) -> str:
        return self.source


def parse(source: str) -> Expression:
    """解析源码为 Expression；语法错误和未知标识符带位置抛出"""
    return Expression(source, Parser(source).parse())


def evaluate(expression: Expression, t: Optional[float] = None,
             theta: Optional[float] = None) -> complex:
    """evaluate(e, t, theta) 的函数形式"""
    return expression.evaluate(t, theta)


def constant(value: float) -> Expression:
    """由数值直接构造常量表达式"""
    node = Constant(float(value))
    return Expression(to_source(node), node)
