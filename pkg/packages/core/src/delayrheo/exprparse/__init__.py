"""
表达式语言 - 定义系数、时滞、密度核和闭式 λ
"""

from .expression import Expression, constant, evaluate, parse
from .nodes import FUNCTIONS, VARIABLES

__all__ = [
    "Expression",
    "parse",
    "evaluate",
    "constant",
    "FUNCTIONS",
    "VARIABLES",
]
