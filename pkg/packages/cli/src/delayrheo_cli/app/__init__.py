"""
应用核心模块

包含CLI应用的主类和配置管理。
"""
