"""
DelayRheoLogger - 结构化日志系统
模块内用 get_logger(__name__) 获取 delayrheo.* 子日志器；
DelayRheoLogger 在根日志器 delayrheo 上按配置安装文本或 JSON 处理器
"""

import json
import logging
import sys
from datetime import datetime
from typing import Any, Optional

from ..config.base import DelayRheoConfig

ROOT_LOGGER = "delayrheo"


def get_logger(name: str) -> logging.Logger:
    """
    获取标准日志器

    Args:
        name: 模块名，一般直接传 __name__

    Returns:
        标准 Python 日志器
    """
    return logging.getLogger(name)


class DelayRheoLogger:
    """
    结构化日志配置
    - 文本或 JSON 格式
    - 可选日志文件
    - 附带 OpenTelemetry trace/span id（如果可用）
    """

    def __init__(self, config: DelayRheoConfig, stream: Optional[Any] = None):
        self.config = config
        self.service_name = config.get("service_name", "delayrheo")
        self.log_level = str(config.get("log_level", "INFO")).upper()
        self.log_format = config.get("log_format", "text")  # text | json
        self.stream = stream or sys.stderr
        self.logger = self._setup_logger()

    def _setup_logger(self) -> logging.Logger:
        logger = logging.getLogger(ROOT_LOGGER)
        level = getattr(logging, self.log_level, logging.INFO)
        logger.setLevel(level)
        logger.handlers.clear()
        logger.propagate = False

        if self.log_format == "json":
            formatter: logging.Formatter = JsonFormatter(self.service_name)
        else:
            formatter = TextFormatter()

        console_handler = logging.StreamHandler(self.stream)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        console_handler.addFilter(TraceContextFilter())
        logger.addHandler(console_handler)

        log_file = self.config.get("log_file")
        if log_file:
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setLevel(level)
            file_handler.setFormatter(formatter)
            file_handler.addFilter(TraceContextFilter())
            logger.addHandler(file_handler)

        return logger


class TraceContextFilter(logging.Filter):
    """把当前 span 的 trace_id / span_id 附加到记录上"""

    def filter(self, record: logging.LogRecord) -> bool:
        try:
            from opentelemetry import trace
        except ImportError:
            return True
        span_context = trace.get_current_span().get_span_context()
        if span_context.is_valid:
            record.trace_id = format(span_context.trace_id, "032x")
            record.span_id = format(span_context.span_id, "016x")
        return True


_RESERVED = set(logging.LogRecord(
    "", logging.INFO, "", 0, "", (), None
).__dict__) | {"message", "asctime", "service"}


class JsonFormatter(logging.Formatter):
    """JSON 格式化器，一行一条记录"""

    def __init__(self, service_name: str):
        super().__init__()
        self.service_name = service_name

    def format(self, record: logging.LogRecord) -> str:
        log_entry = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "service": getattr(record, "service", self.service_name),
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }
        # 其他自定义字段
        for key, value in record.__dict__.items():
            if key not in _RESERVED and key not in log_entry:
                log_entry[key] = value
        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(log_entry, ensure_ascii=False, default=str)


class TextFormatter(logging.Formatter):
    """文本格式化器 - 人类可读"""

    def __init__(self):
        super().__init__(
            fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
