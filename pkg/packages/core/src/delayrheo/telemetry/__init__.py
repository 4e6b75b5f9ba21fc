"""
日志与追踪 - 结构化日志和可选的 OpenTelemetry 集成
"""

from .logger import DelayRheoLogger, JsonFormatter, TextFormatter, get_logger
from .tracer import DelayRheoTracer

__all__ = [
    "DelayRheoLogger",
    "DelayRheoTracer",
    "JsonFormatter",
    "TextFormatter",
    "get_logger",
]
