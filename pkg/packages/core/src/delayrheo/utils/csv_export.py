"""
数值输出 - CSV 和 key=value 文本
浮点数统一按 17 位有效数字打印，行尾固定为 \\n，同一输入两次输出逐字节相同
"""

import csv
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

DEFAULT_DIGITS = 17


def format_float(value: float, digits: int = DEFAULT_DIGITS) -> str:
    """固定有效位数；nan / inf 原样输出"""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}g}"


def format_value(value: Any, digits: int = DEFAULT_DIGITS) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value, digits)
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(item, digits) for item in value)
    return str(value)


def write_csv(
    path: Union[str, Path],
    header: Sequence[str],
    rows: Iterable[Sequence[float]],
    digits: int = DEFAULT_DIGITS,
) -> int:
    """写 CSV，返回数据行数"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, 'w', newline='', encoding='utf-8') as csvfile:
        writer = csv.writer(csvfile, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_float(value, digits) for value in row])
            count += 1
    return count


def flatten(mapping: Dict[str, Any]) -> Dict[str, Any]:
    """复数拆成 _re / _im 两个键"""
    flat: Dict[str, Any] = {}
    for key, value in mapping.items():
        if isinstance(value, complex):
            flat[f"{key}_re"] = value.real
            flat[f"{key}_im"] = value.imag
        else:
            flat[key] = value
    return flat


def key_value_lines(mapping: Dict[str, Any], digits: int = DEFAULT_DIGITS) -> List[str]:
    return [f"{key}={format_value(value, digits)}" for key, value in flatten(mapping).items()]


def write_key_values(path: Union[str, Path], mapping: Dict[str, Any], digits: int = DEFAULT_DIGITS) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = "\n".join(key_value_lines(mapping, digits)) + "\n"
    path.write_text(text, encoding="utf-8")
