"""
常量定义
集中管理所有硬编码的值，便于配置和修改
"""

from delayrheo.types import Verdict


# 环境变量名称
ENV_VARS = {
    'LOG_LEVEL': 'DELAYRHEO_LOG_LEVEL',
    'NO_COLOR': 'DELAYRHEO_NO_COLOR',
    'OUT_DIR': 'DELAYRHEO_OUT_DIR',
}

# 默认配置值
DEFAULTS = {
    'LOG_LEVEL': 'WARNING',  # 命令行默认只显示警告
    'MAX_ROWS': 12,          # 表格最多显示的取样行
}

LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']

# 退出码
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CODES = {
    Verdict.HOLDS: 0,
    Verdict.FAILS: 2,
    Verdict.INCONCLUSIVE: 3,
}
