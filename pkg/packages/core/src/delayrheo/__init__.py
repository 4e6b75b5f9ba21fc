"""
DelayRheo 时滞泛函微分方程数值工具包
导出主要API供外部使用
"""

# 表达式
from .exprparse import Expression, evaluate, parse

# 测度与积分
from .measure import (
    Atom,
    DensityPiece,
    StieltjesKernel,
    apply_functional,
    build_kernel,
    stieltjes_integral,
    total_variation_integral,
)

# 求解器
from .solver import ProblemSetup, Trajectory, solve

# 特征方程
from .charsolve import LambdaFunction, classical_roots, lambert_root, residual, rhs, solve_fixed_point

# 判据与渐近
from .analysis import check_envelope, criterion_value, estimate_limits, identity_residual, scan, transform_y

# 编排
from .core.session import ProblemSession

# 配置
from .config.base import DelayRheoConfig
from .config.problem_spec import ProblemSpec

# 监控遥测
from .telemetry.logger import DelayRheoLogger, get_logger
from .telemetry.tracer import DelayRheoTracer

# 类型与异常
from .types import AsymptoticsReport, CriterionReport, Segment, Verdict
from .utils.errors import DelayRheoError

__version__ = "0.1.0"
__all__ = [
    # 表达式
    "Expression",
    "evaluate",
    "parse",

    # 测度与积分
    "Atom",
    "DensityPiece",
    "StieltjesKernel",
    "apply_functional",
    "build_kernel",
    "stieltjes_integral",
    "total_variation_integral",

    # 求解器
    "ProblemSetup",
    "Trajectory",
    "solve",

    # 特征方程
    "LambdaFunction",
    "classical_roots",
    "lambert_root",
    "residual",
    "rhs",
    "solve_fixed_point",

    # 判据与渐近
    "check_envelope",
    "criterion_value",
    "estimate_limits",
    "identity_residual",
    "scan",
    "transform_y",

    # 编排
    "ProblemSession",

    # 配置
    "DelayRheoConfig",
    "ProblemSpec",

    # 监控遥测
    "DelayRheoLogger",
    "DelayRheoTracer",
    "get_logger",

    # 类型与异常
    "AsymptoticsReport",
    "CriterionReport",
    "DelayRheoError",
    "Segment",
    "Verdict",
]
