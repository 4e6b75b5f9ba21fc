"""
测度模块 - η(t,·) 的原子加密度表示与 Riemann-Stieltjes 积分
"""

from .kernel import (
    Atom,
    DensityPiece,
    StieltjesKernel,
    apply_functional,
    build_kernel,
    stieltjes_integral,
    total_variation_integral,
)
from .quadrature import composite_rule, legendre_rule, mapped_rule

__all__ = [
    "Atom",
    "DensityPiece",
    "StieltjesKernel",
    "apply_functional",
    "build_kernel",
    "stieltjes_integral",
    "total_variation_integral",
    "composite_rule",
    "legendre_rule",
    "mapped_rule",
]
