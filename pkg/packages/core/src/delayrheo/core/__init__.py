"""
核心编排 - 从问题文件到各阶段结果
"""

from .session import LambdaResult, ProblemSession

__all__ = ["LambdaResult", "ProblemSession"]
