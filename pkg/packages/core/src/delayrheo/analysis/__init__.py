"""
分析模块 - 判据扫描与渐近结论检查
"""

from .asymptotics import (
    cauchy_bound,
    check_envelope,
    envelope,
    estimate_limits,
    identity_residual,
    noise_floor,
    transform_y,
    untransform,
)
from .criterion import criterion_batch, criterion_value, decide, scan, translation_time

__all__ = [
    "cauchy_bound",
    "check_envelope",
    "criterion_batch",
    "criterion_value",
    "decide",
    "envelope",
    "estimate_limits",
    "identity_residual",
    "noise_floor",
    "scan",
    "transform_y",
    "translation_time",
    "untransform",
]
