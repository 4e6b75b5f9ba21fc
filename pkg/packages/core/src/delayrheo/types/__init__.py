"""
类型定义
"""

from .core_types import Segment
from .report_types import AsymptoticsReport, CriterionReport, Verdict

__all__ = ["AsymptoticsReport", "CriterionReport", "Segment", "Verdict"]
