"""
工具脚本模块
"""
