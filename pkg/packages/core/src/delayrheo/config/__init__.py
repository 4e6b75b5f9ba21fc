"""
配置系统 - 分层配置与问题文件模型
"""

from .base import DelayRheoConfig
from .test_config import TestDelayRheoConfig

__all__ = ["DelayRheoConfig", "TestDelayRheoConfig"]
