"""
DelayRheo CLI - 时滞方程工具包的命令行界面

读取 TOML 问题文件，运行 simulate / lambda / verify / asymptote / report，
把数值结果写成 CSV，摘要用 Rich 显示。
"""

__version__ = "0.1.0"
__author__ = "DelayRheo Team"
