"""
表达式求值器 - 基于 numpy 的树遍历
标量和数组共用一条路径；两个操作数都是实数时走实数运算，
保证实数输入得到的结果虚部严格为零
"""

from typing import Dict

import numpy as np

from .nodes import BinaryOp, Call, Constant, Negate, Node, Variable
from ..utils.errors import EvaluationDomainError, EvaluationError, MissingBindingError


def _is_real(z: np.ndarray) -> bool:
    return not np.any(z.imag)


class Evaluator:
    """
    一次求值的上下文：持有源码（用于错误信息）和变量绑定
    绑定值必须已经是 complex128 数组（可以是 0 维）
    """

    def __init__(self, source: str, bindings: Dict[str, np.ndarray]):
        self.source = source
        self.bindings = bindings

    def evaluate(self, node: Node) -> np.ndarray:
        with np.errstate(all="ignore"):
            result = self._visit(node)
        if not np.all(np.isfinite(result)):
            raise EvaluationDomainError(self.source, "non-finite result")
        return result

    def _visit(self, node: Node) -> np.ndarray:
        if isinstance(node, Constant):
            return np.asarray(complex(node.value))
        if isinstance(node, Variable):
            try:
                return self.bindings[node.name]
            except KeyError:
                raise MissingBindingError(self.source, node.name) from None
        if isinstance(node, Negate):
            return -self._visit(node.operand)
        if isinstance(node, BinaryOp):
            return self._binary(node.op, self._visit(node.left), self._visit(node.right))
        if isinstance(node, Call):
            return self._call(node.function, self._visit(node.argument))
        raise EvaluationError(self.source, f"unsupported node {type(node).__name__}")

    def _binary(self, op: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        both_real = _is_real(a) and _is_real(b)
        if op == "*":
            if both_real:
                return (a.real * b.real).astype(complex)
            return a * b
        if op == "/":
            if np.any(b == 0):
                raise EvaluationDomainError(self.source, "division by zero")
            if both_real:
                return (a.real / b.real).astype(complex)
            return a / b
        if op == "^":
            return self._power(a, b, both_real)
        raise EvaluationError(self.source, f"unknown operator {op!r}")

    def _power(self, a: np.ndarray, b: np.ndarray, both_real: bool) -> np.ndarray:
        if np.any((a == 0) & (b.real < 0)):
            raise EvaluationDomainError(self.source, "division by zero in power")
        if both_real:
            base, exponent = a.real, b.real
            # 负底数的非整数次幂不选分支，直接报错
            if np.any((base < 0) & (exponent != np.round(exponent))):
                raise EvaluationDomainError(
                    self.source, "non-integer power of a negative base"
                )
            return np.power(base, exponent).astype(complex)
        return np.power(a, b)

    def _call(self, function: str, z: np.ndarray) -> np.ndarray:
        real = _is_real(z)
        if function == "exp":
            return np.exp(z.real).astype(complex) if real else np.exp(z)
        if function == "ln":
            if real:
                if np.any(z.real <= 0):
                    raise EvaluationDomainError(self.source, "ln of a nonpositive real")
                return np.log(z.real).astype(complex)
            if np.any(z == 0):
                raise EvaluationDomainError(self.source, "ln of zero")
            return np.log(z)
        if function == "sin":
            return np.sin(z.real).astype(complex) if real else np.sin(z)
        if function == "cos":
            return np.cos(z.real).astype(complex) if real else np.cos(z)
        if function == "sqrt":
            if real:
                if np.any(z.real < 0):
                    raise EvaluationDomainError(self.source, "sqrt of a negative real")
                return np.sqrt(z.real).astype(complex)
            return np.sqrt(z)
        if function == "abs":
            return np.abs(z).astype(complex)
        raise EvaluationError(self.source, f"unknown function {function!r}")
