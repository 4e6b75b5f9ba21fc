"""
DelayRheoTracer - 可选的 OpenTelemetry 追踪
未安装 opentelemetry 或配置关闭时所有方法退化为空操作
"""

from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

from .logger import get_logger
from ..config.base import DelayRheoConfig

# 有条件导入，允许在没有安装的情况下降级
try:
    from opentelemetry import trace
    from opentelemetry.sdk.trace import TracerProvider
    from opentelemetry.sdk.trace.export import BatchSpanProcessor
    OTEL_AVAILABLE = True
except ImportError:
    OTEL_AVAILABLE = False

logger = get_logger(__name__)


class DelayRheoTracer:
    """
    管线阶段的追踪
    - span 上下文管理器
    - 降级模式
    """

    def __init__(self, config: DelayRheoConfig):
        self.config = config
        self.service_name = config.get("service_name", "delayrheo")
        self.enabled = bool(config.get("telemetry_enabled", False))
        self.tracer = self._setup_tracer() if self.enabled else None

    def _setup_tracer(self):
        if not OTEL_AVAILABLE:
            logger.warning("OpenTelemetry not available, tracing disabled")
            return None
        try:
            provider = TracerProvider()
            endpoint = self.config.get("otlp_endpoint")
            if endpoint:
                from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
                provider.add_span_processor(BatchSpanProcessor(OTLPSpanExporter(endpoint=endpoint)))
            trace.set_tracer_provider(provider)
            return trace.get_tracer(self.service_name)
        except Exception as e:
            logger.error(f"Failed to setup tracer: {e}")
            return None

    @property
    def active(self) -> bool:
        return self.enabled and self.tracer is not None

    @contextmanager
    def span(self, name: str, attributes: Optional[Dict[str, Any]] = None) -> Iterator[None]:
        """追踪一段代码"""
        if not self.active:
            yield
            return
        with self.tracer.start_as_current_span(name, attributes=attributes):
            yield

    def set_attribute(self, key: str, value: Any):
        if not self.active:
            return
        trace.get_current_span().set_attribute(key, value)
