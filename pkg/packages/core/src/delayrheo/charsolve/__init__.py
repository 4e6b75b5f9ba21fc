"""
广义特征方程 - λ 的表示、残差检查和不动点求解
"""

from .classical import classical_roots, lambert_root
from .fixed_point import (
    FixedPointResult,
    characteristic_grid,
    initial_guess_from,
    residual,
    rhs,
    rhs_batch,
    solve_fixed_point,
)
from .lambda_function import LambdaForm, LambdaFunction

__all__ = [
    "FixedPointResult",
    "LambdaForm",
    "LambdaFunction",
    "characteristic_grid",
    "classical_roots",
    "initial_guess_from",
    "lambert_root",
    "residual",
    "rhs",
    "rhs_batch",
    "solve_fixed_point",
]
