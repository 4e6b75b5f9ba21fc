"""
Rich Console封装
全局Console实例和输出配置管理
"""

from rich.console import Console as RichConsole
from rich.theme import Theme


# 简洁主题
delayrheo_theme = Theme({
    "error": "red",
    "warning": "yellow",
    "info": "cyan",
    "holds": "bold green",
    "fails": "bold red",
    "inconclusive": "bold yellow",
})


def _create_console(no_color: bool = False) -> RichConsole:
    # 不自动换行，摘要行保持一行
    return RichConsole(theme=delayrheo_theme, no_color=no_color, highlight=False, soft_wrap=True)


console = _create_console()


def set_no_color(no_color: bool):
    """设置是否禁用颜色"""
    global console
    console = _create_console(no_color)


def get_console() -> RichConsole:
    return console
