"""
Graphviz DOT 导出：按极大链类型给边着色
"""
from typing import Optional

from config import DOT_CONFIG
from core.network import PhyloNetwork
from core.zigzag import KIND_BY_CODE


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(n: PhyloNetwork, decomposition=None, subtree=None, graph_name: str = "N") -> str:
    """
    生成 DOT 文本

    Args:
        n: 网络
        decomposition: 可选的 ZigzagDecomposition，提供时每条边按所属链类型着色
        subtree: 可选的 CoveringSubtree，未覆盖顶点灰色填充、树边加粗
    """
    colors = DOT_CONFIG["colors"]
    labels = n.leaf_labels
    uncovered = set(subtree.uncovered) if subtree is not None else set()
    tree_edges = set(map(tuple, subtree.tree_edges)) if subtree is not None else set()

    lines = [f"digraph {_quote(graph_name)} {{"]
    for v in range(n.n_vertices):
        name = n.name(v)
        attrs = []
        if n.is_leaf(v):
            attrs.append("shape=box")
            attrs.append(f"label={_quote(labels[name])}")
        if v == n.root:
            attrs.append("shape=doublecircle")
        if name in uncovered:
            attrs.append(f"style=filled fillcolor={_quote(DOT_CONFIG['uncovered_fill'])}")
        suffix = f" [{' '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(name)}{suffix};")

    for e in range(n.n_edges):
        tail, head = n.edge_names(e)
        attrs = []
        if decomposition is not None:
            t = int(decomposition.edge_to_trail[e])
            kind = KIND_BY_CODE[decomposition.kind_codes[t]]
            attrs.append(f"color={_quote(colors.get(kind.value, DOT_CONFIG['default_color']))}")
            attrs.append(f"tooltip={_quote(f'{kind.value} #{t}')}")
        if (tail, head) in tree_edges:
            attrs.append("penwidth=2.5")
        suffix = f" [{' '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(tail)} -> {_quote(head)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
