"""
消息显示组件
- 警告 / 错误
- 输出文件路径
"""

from pathlib import Path

from rich.markup import escape

from .console import get_console


# 消息前缀定义
MESSAGE_PREFIXES = {
    'warning': '! ',
    'error': '✗ ',
    'artifact': '  → ',
}


def show_warning(message: str):
    get_console().print(f"[warning]{MESSAGE_PREFIXES['warning']}{escape(message)}[/warning]")


def show_error_message(message: str):
    """显示错误消息"""
    get_console().print(f"[error]{MESSAGE_PREFIXES['error']}{escape(message)}[/error]")


def show_artifact(path: Path):
    get_console().print(f"[info]{MESSAGE_PREFIXES['artifact']}{escape(str(path))}[/info]")


def show_plain(text: str):
    """原样输出，不解析 markup"""
    get_console().print(text, markup=False, emoji=False)
