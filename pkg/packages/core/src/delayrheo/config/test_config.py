"""
TestDelayRheoConfig - 支持运行时覆盖的配置
测试套件和 CLI 选项都通过它注入最高优先级的值
"""

from pathlib import Path
from typing import Any, Dict, Optional

from .base import ConfigSource, DelayRheoConfig


class OverrideConfigSource(ConfigSource):
    """覆盖配置源 - 最高优先级"""

    def __init__(self, overrides: Dict[str, Any]):
        self._overrides = overrides

    def get(self, key: str) -> Optional[Any]:
        return self._overrides.get(key)

    def get_all(self) -> Dict[str, Any]:
        return self._overrides.copy()


class TestDelayRheoConfig(DelayRheoConfig):
    """
    带覆盖层的配置
    - 继承完整的分层配置
    - set_override 支持嵌套键
    """

    __test__ = False  # 不是 pytest 测试类

    def __init__(self, workspace_root: Optional[Path] = None,
                 overrides: Optional[Dict[str, Any]] = None):
        super().__init__(workspace_root)
        self._overrides: Dict[str, Any] = dict(overrides or {})
        self.config_sources.insert(0, OverrideConfigSource(self._overrides))

    def set_override(self, key: str, value: Any) -> None:
        """
        设置覆盖值

        示例:
            config.set_override('quadrature_order', 32)
            config.set_override('lambda.relaxation', 0.5)
        """
        keys = key.split('.')
        current = self._overrides
        for k in keys[:-1]:
            current = current.setdefault(k, {})
        current[keys[-1]] = value
        self.config_sources[0] = OverrideConfigSource(self._overrides)

    def get_overrides(self) -> Dict[str, Any]:
        return self._overrides.copy()

    def clear_overrides(self) -> None:
        self._overrides.clear()
        self.config_sources[0] = OverrideConfigSource(self._overrides)
