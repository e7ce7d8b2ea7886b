"""
核心算法：网络模型、zig-zag 分解、细分树、M-W 匹配、精确搜索、随机生成

所有函数都作用在不可变的 PhyloNetwork 上。
"""
from .exceptions import (
    FastPathInapplicableError,
    GenerationError,
    NetworkValidationError,
    NotTreeBasedError,
    PhnParseError,
    PhyloError,
    ResolutionError,
    TrailShapeError,
    VertexSurgeryError,
)
from .network import PhyloNetwork, RawGraph, is_binary, remove_vertex, validate_network
from .zigzag import ZigzagDecomposition, ZigzagTrail, decompose, delta_star, is_tree_based
from .treebase import subdivision_tree, validate_covering_subtree
from .mw import build_mcst_via_resolution, eta_fast, max_mw_matching, mw_pair_graph, resolve
from .oracle import eta_exact, search_trace
from .genkit import random_network

__all__ = [
    'PhyloError',
    'PhnParseError',
    'NetworkValidationError',
    'VertexSurgeryError',
    'NotTreeBasedError',
    'ResolutionError',
    'FastPathInapplicableError',
    'GenerationError',
    'TrailShapeError',
    'PhyloNetwork',
    'RawGraph',
    'validate_network',
    'is_binary',
    'remove_vertex',
    'ZigzagTrail',
    'ZigzagDecomposition',
    'decompose',
    'delta_star',
    'is_tree_based',
    'subdivision_tree',
    'validate_covering_subtree',
    'mw_pair_graph',
    'max_mw_matching',
    'resolve',
    'eta_fast',
    'build_mcst_via_resolution',
    'eta_exact',
    'search_trace',
    'random_network',
]
