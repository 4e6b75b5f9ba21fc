"""
DelayRheoConfig - 分层配置系统
优先级：环境变量 > System > Workspace > User > 内置默认值
"""

import json
import os
import re
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from ..utils.errors import ConfigurationError


def _load_file(config_path: Path) -> Dict[str, Any]:
    """读取 yaml / json 配置文件，内容必须是映射"""
    with open(config_path, 'r', encoding='utf-8') as f:
        if config_path.suffix in ('.yaml', '.yml'):
            data = yaml.safe_load(f) or {}
        else:
            data = json.load(f)
    if not isinstance(data, dict):
        raise ConfigurationError(str(config_path), f"config file {config_path} must contain a mapping")
    return data


class ConfigSource(ABC):
    """配置源基类"""

    @abstractmethod
    def get(self, key: str) -> Optional[Any]:
        """获取配置值"""

    @abstractmethod
    def get_all(self) -> Dict[str, Any]:
        """获取所有配置"""


class FileConfigSource(ConfigSource):
    """按候选路径顺序读取第一个存在的文件"""

    def __init__(self, config_paths: List[Path]):
        self._config: Dict[str, Any] = {}
        for config_path in config_paths:
            if config_path.exists():
                try:
                    self._config = _load_file(config_path)
                except (OSError, ValueError, yaml.YAMLError):
                    continue
                break

    def get(self, key: str) -> Optional[Any]:
        return self._config.get(key)

    def get_all(self) -> Dict[str, Any]:
        return self._config.copy()


class SystemConfig(FileConfigSource):
    """系统级配置"""

    def __init__(self):
        super().__init__([
            Path("/etc/delayrheo/config.yaml"),
            Path("/etc/delayrheo/config.json"),
        ])


class WorkspaceConfig(ConfigSource):
    """工作区级配置 - 从 workspace_root 向上查找"""

    CONFIG_NAMES = ["delayrheo.yaml", ".delayrheo.yaml", "delayrheo.config.yaml", "delayrheo.config.json"]

    def __init__(self, workspace_root: Optional[Path] = None):
        self._config: Dict[str, Any] = {}
        self._workspace_root = Path(workspace_root or Path.cwd())
        self._load_workspace_config()

    def _load_workspace_config(self):
        current = self._workspace_root.resolve()
        while True:
            for config_name in self.CONFIG_NAMES:
                config_path = current / config_name
                if config_path.exists():
                    try:
                        self._config = _load_file(config_path)
                    except (OSError, ValueError, yaml.YAMLError):
                        continue
                    return
            if current == current.parent:
                return
            current = current.parent

    def get(self, key: str) -> Optional[Any]:
        return self._config.get(key)

    def get_all(self) -> Dict[str, Any]:
        return self._config.copy()


class UserConfig(FileConfigSource):
    """用户级配置"""

    def __init__(self):
        super().__init__([
            Path.home() / ".delayrheo/config.yaml",
            Path.home() / ".delayrheo/config.json",
            Path.home() / ".config/delayrheo/config.yaml",
            Path.home() / ".config/delayrheo/config.json",
        ])


class EnvironmentConfig(ConfigSource):
    """环境变量配置 DELAYRHEO_<KEY>，可覆盖任何文件级别"""

    PREFIX = "DELAYRHEO_"

    BOOL_KEYS = {"telemetry_enabled"}
    INT_KEYS = {
        "quadrature_order", "quadrature_panels", "criterion_samples",
        "fixed_point_max_iter", "workers", "float_digits",
    }
    FLOAT_KEYS = {
        "criterion_margin", "envelope_slack", "envelope_atol", "tail_fraction",
        "fixed_point_tol", "relaxation",
    }

    def __init__(self):
        self._env_mappings = {
            "OTEL_SERVICE_NAME": "service_name",
            "OTEL_EXPORTER_OTLP_ENDPOINT": "otlp_endpoint",
        }

    def get(self, key: str) -> Optional[Any]:
        value = os.getenv(f"{self.PREFIX}{key.upper()}")
        if value is not None:
            return self._parse_value(value, key)
        for env_key, config_key in self._env_mappings.items():
            if config_key == key and os.getenv(env_key) is not None:
                return os.getenv(env_key)
        return None

    def get_all(self) -> Dict[str, Any]:
        config: Dict[str, Any] = {}
        for env_key, config_key in self._env_mappings.items():
            value = os.getenv(env_key)
            if value is not None:
                config[config_key] = value
        for env_key, value in os.environ.items():
            if env_key.startswith(self.PREFIX):
                key = env_key[len(self.PREFIX):].lower()
                config[key] = self._parse_value(value, key)
        return config

    def _parse_value(self, value: str, key: str) -> Any:
        """按键名解析类型"""
        if key in self.BOOL_KEYS:
            return value.lower() in ["true", "1", "yes", "on"]
        try:
            if key in self.INT_KEYS:
                return int(value)
            if key in self.FLOAT_KEYS:
                return float(value)
        except ValueError:
            raise ConfigurationError(key, f"environment value {value!r} for {key} is not numeric") from None
        return value


class DelayRheoConfig:
    """
    分层配置系统
    数值默认值集中在这里，问题文件中缺省的字段回退到这些值
    """

    def __init__(self, workspace_root: Optional[Path] = None):
        # 按优先级排列（高到低）
        self.config_sources: List[ConfigSource] = [
            EnvironmentConfig(),
            SystemConfig(),
            WorkspaceConfig(workspace_root),
            UserConfig(),
        ]
        self._defaults = self._load_defaults()

    def _load_defaults(self) -> Dict[str, Any]:
        return {
            # 求积
            "quadrature_order": 16,
            "quadrature_panels": 8,

            # 判据
            "criterion_margin": 0.02,
            "criterion_samples": 200,

            # 渐近检查
            "envelope_slack": 0.1,
            "envelope_atol": 0.0,
            "tail_fraction": 0.25,

            # 不动点迭代
            "fixed_point_tol": 1e-9,
            "fixed_point_max_iter": 200,
            "relaxation": 1.0,
            "workers": 1,

            # 输出
            "float_digits": 17,

            # 日志与遥测
            "log_level": "INFO",
            "log_format": "text",
            "log_file": None,
            "service_name": "delayrheo",
            "telemetry_enabled": False,
            "otlp_endpoint": None,
        }

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置值，按优先级查找
        支持嵌套键访问（用.分隔）和 ${VAR} 环境变量替换
        """
        keys = key.split('.')
        for source in self.config_sources:
            if len(keys) == 1:
                value = source.get(key)
            else:
                value = self._get_nested(source.get_all(), keys)
            if value is not None:
                return self._substitute_vars(value)

        value = self._get_nested(self._defaults, keys)
        if value is not None:
            return self._substitute_vars(value)
        return default

    def get_int(self, key: str) -> int:
        return int(self._require(key))

    def get_float(self, key: str) -> float:
        return float(self._require(key))

    def _require(self, key: str) -> Any:
        value = self.get(key)
        if value is None:
            raise ConfigurationError(key, f"missing configuration value {key!r}")
        return value

    def _get_nested(self, config: Dict[str, Any], keys: List[str]) -> Any:
        current: Any = config
        for key in keys:
            if isinstance(current, dict) and key in current:
                current = current[key]
            else:
                return None
        return current

    def _substitute_vars(self, value: Any) -> Any:
        """${VAR} 格式的环境变量替换，未定义的变量保持原样"""
        if not isinstance(value, str):
            return value
        return re.sub(
            r'\$\{([^}]+)\}',
            lambda m: os.environ.get(m.group(1), m.group(0)),
            value
        )

    def is_debug(self) -> bool:
        return str(self.get("log_level", "INFO")).upper() == "DEBUG"
