"""
Utils模块 - `.phn` 与 DOT 文本格式
"""
from .phn_format import parse_network, serialize_network, serialize_subtree
from .dot_export import export_dot

__all__ = ['parse_network', 'serialize_network', 'serialize_subtree', 'export_dot']
