"""
表达式语法树节点
常量、变量、一元负号、二元运算、函数调用五种节点，全部不可变
"""

from dataclasses import dataclass
from typing import FrozenSet, Union


# 允许的自由变量和内置函数（固定的最小计算器语法）
VARIABLES = ("t", "theta")
FUNCTIONS = ("exp", "ln", "sin", "cos", "sqrt", "abs")
BINARY_OPERATORS = ("+", "-", "*", "/", "^")


@dataclass(frozen=True)
class Constant:
    """数值常量"""
    value: float


@dataclass(frozen=True)
class Variable:
    """自由变量 t 或 theta"""
    name: str


@dataclass(frozen=True)
class Negate:
    """一元负号"""
    operand: "Node"


@dataclass(frozen=True)
class BinaryOp:
    """二元运算 + - * / ^"""
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    """内置函数调用"""
    function: str
    argument: "Node"


Node = Union[Constant, Variable, Negate, BinaryOp, Call]


def to_source(node: Node) -> str:
    """
    打印为全括号形式的源码
    parse(to_source(node)) 与 node 求值完全一致
    """
    if isinstance(node, Constant):
        return repr(float(node.value))
    if isinstance(node, Variable):
        return node.name
    if isinstance(node, Negate):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, BinaryOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.function}({to_source(node.argument)})"
    raise TypeError(f"not an expression node: {node!r}")


def free_variables(node: Node) -> FrozenSet[str]:
    """收集自由变量"""
    if isinstance(node, Variable):
        return frozenset((node.name,))
    if isinstance(node, Constant):
        return frozenset()
    if isinstance(node, Negate):
        return free_variables(node.operand)
    if isinstance(node, BinaryOp):
        return free_variables(node.left) | free_variables(node.right)
    if isinstance(node, Call):
        return free_variables(node.argument)
    raise TypeError(f"not an expression node: {node!r}")
