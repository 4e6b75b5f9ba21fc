"""
求解器 - 方法步 RK4 积分与稠密输出轨迹
"""

from .integrator import ProblemSetup, solve
from .trajectory import Trajectory, hermite_ppoly

__all__ = ["ProblemSetup", "Trajectory", "hermite_ppoly", "solve"]
