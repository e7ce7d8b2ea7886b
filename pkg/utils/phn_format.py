"""
`.phn` 边表格式的读写

格式（UTF-8，按行）：
    # 注释，`#` 之后到行尾都忽略
    edge <tail> <head>      每条有向边一行
    leaf <vertex> <label>   可选，给叶子指定标签（缺省为顶点ID）
空行忽略。覆盖子树另外附带一行 `# uncovered: v1 v2 ...`。
"""
import re
from typing import Dict, List, Optional, Tuple

from core.exceptions import PhnParseError
from core.network import PhyloNetwork, RawGraph

TOKEN_PATTERN = re.compile(r"\S+")
UNCOVERED_PREFIX = "# uncovered:"


def _tokens(line: str) -> List[Tuple[str, int]]:
    """切分一行，返回 (token, 列号)，列号从 1 开始"""
    content = line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in TOKEN_PATTERN.finditer(content)]


def parse_raw(text: str) -> RawGraph:
    """
    解析 `.phn` 文本为未校验的 RawGraph

    Raises:
        PhnParseError: 语法错误、重复边、leaf 行引用未知顶点
    """
    edges: List[Tuple[str, str]] = []
    edge_lines: Dict[Tuple[str, str], int] = {}
    leaf_entries: List[Tuple[str, str, int, int]] = []

    for line_no, line in enumerate(text.splitlines(), 1):
        tokens = _tokens(line)
        if not tokens:
            continue
        keyword, column = tokens[0]
        if keyword == "edge":
            if len(tokens) != 3:
                raise PhnParseError("`edge` expects exactly <tail> <head>", line_no, column)
            edge = (tokens[1][0], tokens[2][0])
            if edge in edge_lines:
                raise PhnParseError(
                    f"duplicate edge {edge[0]} -> {edge[1]} (first on line {edge_lines[edge]})",
                    line_no, tokens[1][1])
            edge_lines[edge] = line_no
            edges.append(edge)
        elif keyword == "leaf":
            if len(tokens) != 3:
                raise PhnParseError("`leaf` expects exactly <vertex> <label>", line_no, column)
            leaf_entries.append((tokens[1][0], tokens[2][0], line_no, tokens[1][1]))
        else:
            raise PhnParseError(f"unknown keyword {keyword!r}", line_no, column)

    known = set()
    for tail, head in edges:
        known.add(tail)
        known.add(head)
    labels: Dict[str, str] = {}
    for vertex, label, line_no, column in leaf_entries:
        if vertex not in known:
            raise PhnParseError(f"`leaf` line names unknown vertex {vertex}", line_no, column)
        if vertex in labels:
            raise PhnParseError(f"vertex {vertex} labelled twice", line_no, column)
        labels[vertex] = label

    return RawGraph(edges=tuple(edges), leaf_labels=tuple(labels.items()))


def parse_network(text: str) -> PhyloNetwork:
    """
    解析并校验 `.phn` 文本

    根取唯一的入度为 0 的顶点；没有 leaf 行的叶子以顶点ID为标签。

    Raises:
        PhnParseError: 语法错误
        NetworkValidationError: 不是合法网络（报告中含 self-loop 等规则）
    """
    return PhyloNetwork.from_raw(parse_raw(text))


def serialize_network(n: PhyloNetwork, header: Optional[str] = None) -> str:
    """网络 -> `.phn` 文本（边按网络中的顺序，叶按叶序）"""
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    for e in range(n.n_edges):
        tail, head = n.edge_names(e)
        lines.append(f"edge {tail} {head}")
    for vertex, label in n.leaf_labels.items():
        lines.append(f"leaf {vertex} {label}")
    return "\n".join(lines) + "\n"


def serialize_subtree(n: PhyloNetwork, subtree) -> str:
    """覆盖子树 -> `.phn` 文本，末尾附 `# uncovered:` 行"""
    lines = [f"# covering subtree of {subtree.network_ref}"]
    for tail, head in subtree.tree_edges:
        lines.append(f"edge {tail} {head}")
    for vertex, label in n.leaf_labels.items():
        lines.append(f"leaf {vertex} {label}")
    lines.append(f"{UNCOVERED_PREFIX} {' '.join(subtree.uncovered)}".rstrip())
    return "\n".join(lines) + "\n"


def read_uncovered(text: str) -> List[str]:
    """从覆盖子树文本中取回未覆盖顶点列表"""
    for line in text.splitlines():
        if line.startswith(UNCOVERED_PREFIX):
            return line[len(UNCOVERED_PREFIX):].split()
    return []
