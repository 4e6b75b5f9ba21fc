"""
CLI配置管理
命令行参数优先，其次环境变量
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

from ..constants import DEFAULTS, ENV_VARS


@dataclass
class CLIConfig:
    """
    CLI专用配置
    - 问题文件与输出目录
    - 显示设置
    - verify 的窗口和取样数
    """
    spec_path: Path
    out_dir: Optional[Path] = None
    log_level: Optional[str] = None
    no_color: bool = False
    print_spec: bool = False
    samples: Optional[int] = None
    window: Optional[Tuple[float, float]] = None
    max_rows: int = DEFAULTS['MAX_ROWS']

    def __post_init__(self):
        self.spec_path = Path(self.spec_path)

        if self.out_dir is None and ENV_VARS['OUT_DIR'] in os.environ:
            self.out_dir = Path(os.environ[ENV_VARS['OUT_DIR']])
        elif self.out_dir is not None:
            self.out_dir = Path(self.out_dir)

        if self.log_level is None:
            self.log_level = os.environ.get(ENV_VARS['LOG_LEVEL'], DEFAULTS['LOG_LEVEL'])
        self.log_level = self.log_level.upper()

        if ENV_VARS['NO_COLOR'] in os.environ:
            self.no_color = self.no_color or os.environ[ENV_VARS['NO_COLOR']].lower() == 'true'

    @property
    def is_debug(self) -> bool:
        return self.log_level == 'DEBUG'
