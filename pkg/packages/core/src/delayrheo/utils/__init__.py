"""
工具模块 - 异常和数值输出
"""

from .csv_export import format_float, key_value_lines, write_csv, write_key_values
from .errors import DelayRheoError

__all__ = [
    "DelayRheoError",
    "format_float",
    "key_value_lines",
    "write_csv",
    "write_key_values",
]
