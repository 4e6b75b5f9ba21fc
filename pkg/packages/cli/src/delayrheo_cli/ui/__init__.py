"""
UI层模块

控制台、消息和结果表格。
"""
