"""
有根近二叉系统发生网络：类型、校验与顶点删除

外部使用字符串顶点ID，内部使用稠密整数下标；所有报告里的见证都用外部ID。
网络构造后不可变，删除顶点等操作返回新的 RawGraph，由调用方决定是否再校验。
"""
import hashlib
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from models import DegreeProfile, ValidationReport, Violation
from core.exceptions import NetworkValidationError, VertexSurgeryError

logger = logging.getLogger(__name__)

Edge = Tuple[str, str]


@dataclass(frozen=True)
class RawGraph:
    """未经校验的有向图（+ 可选的根和叶标签）"""
    edges: Tuple[Edge, ...]
    vertices: Optional[Tuple[str, ...]] = None  # None 时按边中首次出现的顺序推导
    root: Optional[str] = None
    leaf_labels: Tuple[Tuple[str, str], ...] = field(default_factory=tuple)

    def vertex_list(self) -> List[str]:
        if self.vertices is not None:
            return list(dict.fromkeys(self.vertices))
        seen: Dict[str, None] = {}
        for tail, head in self.edges:
            seen.setdefault(tail)
            seen.setdefault(head)
        return list(seen)


def _violation(rule: str, witness: str, message: str) -> Violation:
    return Violation(rule=rule, witness=witness, message=message)


def _validate_indexed(names: Sequence[str], tails: Sequence[int], heads: Sequence[int],
                      declared_root: Optional[str] = None,
                      labels: Optional[Mapping[int, str]] = None) -> List[Violation]:
    """
    在整数下标上检查定义中的度数条件、无环性和弱连通性

    Args:
        names: 顶点外部ID
        tails/heads: 边的尾、头下标（已保证无自环、无重边）
        declared_root: 声明的根（可选）
        labels: 叶下标 -> 标签（可选，缺省为顶点ID）

    Returns:
        违规列表（空表示通过）
    """
    n = len(names)
    violations: List[Violation] = []
    if n == 0:
        return [_violation("empty", "", "graph has no vertices")]

    indeg = [0] * n
    outdeg = [0] * n
    for t in tails:
        outdeg[t] += 1
    for h in heads:
        indeg[h] += 1

    roots = [v for v in range(n) if indeg[v] == 0]
    if not roots:
        violations.append(_violation("no-root", "", "no vertex has in-degree 0"))
    elif len(roots) > 1:
        witness = " ".join(sorted(names[v] for v in roots))
        violations.append(_violation(
            "multiple-roots", witness, f"{len(roots)} vertices have in-degree 0"))
    else:
        root = roots[0]
        if declared_root is not None and declared_root != names[root]:
            violations.append(_violation(
                "root-mismatch", names[root],
                f"declared root {declared_root} is not the unique in-degree-0 vertex"))
        if outdeg[root] not in (1, 2):
            violations.append(_violation(
                "root-outdegree", names[root], f"root has out-degree {outdeg[root]}"))

    for v in range(n):
        if indeg[v] == 0:
            continue
        if outdeg[v] == 0:
            if indeg[v] != 1:
                violations.append(_violation(
                    "leaf-indegree", names[v], f"leaf has in-degree {indeg[v]}"))
            continue
        if indeg[v] > 2:
            violations.append(_violation(
                "indegree", names[v], f"internal vertex has in-degree {indeg[v]}"))
        if outdeg[v] > 2:
            violations.append(_violation(
                "outdegree", names[v], f"internal vertex has out-degree {outdeg[v]}"))

    if labels:
        seen_labels: Dict[str, int] = {}
        for v in range(n):
            if outdeg[v] != 0 or indeg[v] == 0:
                continue
            label = labels.get(v, names[v])
            if label in seen_labels:
                violations.append(_violation(
                    "duplicate-label", names[v], f"label {label} already used by {names[seen_labels[label]]}"))
            else:
                seen_labels[label] = v
        for v in labels:
            if outdeg[v] != 0:
                violations.append(_violation(
                    "leaf-not-sink", names[v], "labelled vertex has out-degree > 0"))

    out_adj: List[List[int]] = [[] for _ in range(n)]
    for t, h in zip(tails, heads):
        out_adj[t].append(h)

    # Kahn 拓扑排序判环
    remaining = list(indeg)
    queue = deque(v for v in range(n) if remaining[v] == 0)
    visited = 0
    while queue:
        v = queue.popleft()
        visited += 1
        for c in out_adj[v]:
            remaining[c] -= 1
            if remaining[c] == 0:
                queue.append(c)
    if visited < n:
        witness = min(names[v] for v in range(n) if remaining[v] > 0)
        violations.append(_violation("cycle", witness, "graph contains a directed cycle"))

    # 忽略方向的遍历判连通
    undirected: List[List[int]] = [[] for _ in range(n)]
    for t, h in zip(tails, heads):
        undirected[t].append(h)
        undirected[h].append(t)
    start = roots[0] if roots else 0
    reached = [False] * n
    reached[start] = True
    stack = [start]
    while stack:
        v = stack.pop()
        for w in undirected[v]:
            if not reached[w]:
                reached[w] = True
                stack.append(w)
    if not all(reached):
        witness = min(names[v] for v in range(n) if not reached[v])
        violations.append(_violation("disconnected", witness, "graph is not weakly connected"))

    return violations


def _index_raw(raw: RawGraph):
    """把 RawGraph 映射到下标，同时收集简单性和未知顶点问题"""
    names = raw.vertex_list()
    index = {name: i for i, name in enumerate(names)}
    violations: List[Violation] = []
    tails: List[int] = []
    heads: List[int] = []
    seen = set()
    for tail, head in raw.edges:
        if tail not in index or head not in index:
            missing = tail if tail not in index else head
            violations.append(_violation("unknown-vertex", missing, f"edge ({tail},{head}) uses an unknown vertex"))
            continue
        if tail == head:
            violations.append(_violation("self-loop", f"{tail}->{head}", "self-loop"))
            continue
        if (tail, head) in seen:
            violations.append(_violation("duplicate-edge", f"{tail}->{head}", "duplicate directed edge"))
            continue
        seen.add((tail, head))
        tails.append(index[tail])
        heads.append(index[head])
    labels: Dict[int, str] = {}
    for vertex, label in raw.leaf_labels:
        if vertex not in index:
            violations.append(_violation("unknown-vertex", vertex, "leaf label for an unknown vertex"))
            continue
        labels[index[vertex]] = label
    return names, tails, heads, labels, violations


def validate_network(raw: RawGraph) -> ValidationReport:
    """
    检查任意有向图是否为有根近二叉系统发生 X-网络（不抛异常，只报告）

    Args:
        raw: 原始图

    Returns:
        ValidationReport，列出所有违反的条款
    """
    names, tails, heads, labels, violations = _index_raw(raw)
    violations.extend(_validate_indexed(names, tails, heads, raw.root, labels))
    return ValidationReport.from_violations(violations)


class PhyloNetwork:
    """
    经过校验的有根近二叉系统发生网络（不可变）

    构造请使用 from_edges / from_raw / from_indexed，它们都会先校验。
    """

    __slots__ = ("_names", "_index", "_tails", "_heads", "_out", "_in",
                 "_root", "_leaves", "_labels", "_edge_index", "_fingerprint",
                 "_tail_array", "_head_array", "_name_array")

    def __init__(self, names: Sequence[str], tails: Sequence[int], heads: Sequence[int],
                 labels: Optional[Mapping[int, str]] = None):
        n = len(names)
        self._names: Tuple[str, ...] = tuple(names)
        self._index: Dict[str, int] = {name: i for i, name in enumerate(self._names)}
        self._tails: Tuple[int, ...] = tuple(tails)
        self._heads: Tuple[int, ...] = tuple(heads)
        self._tail_array = np.fromiter(self._tails, dtype=np.int64, count=len(self._tails))
        self._head_array = np.fromiter(self._heads, dtype=np.int64, count=len(self._heads))
        self._name_array: Optional[np.ndarray] = None
        out_lists: List[List[int]] = [[] for _ in range(n)]
        in_lists: List[List[int]] = [[] for _ in range(n)]
        for e, (t, h) in enumerate(zip(self._tails, self._heads)):
            out_lists[t].append(e)
            in_lists[h].append(e)
        self._out: Tuple[Tuple[int, ...], ...] = tuple(map(tuple, out_lists))
        self._in: Tuple[Tuple[int, ...], ...] = tuple(map(tuple, in_lists))
        self._root = next(v for v in range(n) if not in_lists[v])
        labels = dict(labels or {})
        # 先按标签给出的顺序，再按下标顺序补齐其余叶子
        ordered = [v for v in labels if not out_lists[v]]
        ordered += [v for v in range(n) if not out_lists[v] and v not in labels]
        self._leaves: Tuple[int, ...] = tuple(ordered)
        self._labels: Dict[int, str] = {v: labels.get(v, self._names[v]) for v in self._leaves}
        self._edge_index: Optional[Dict[Tuple[int, int], int]] = None
        self._fingerprint: Optional[str] = None

    # ---------- 构造 ----------

    @classmethod
    def from_indexed(cls, names: Sequence[str], tails: Sequence[int], heads: Sequence[int],
                     labels: Optional[Mapping[int, str]] = None,
                     root: Optional[str] = None) -> "PhyloNetwork":
        """从下标数组构造（生成器使用），要求无自环、无重边"""
        violations = _validate_indexed(names, tails, heads, root, labels)
        if violations:
            raise NetworkValidationError(ValidationReport.from_violations(violations))
        return cls(names, tails, heads, labels)

    @classmethod
    def from_raw(cls, raw: RawGraph) -> "PhyloNetwork":
        names, tails, heads, labels, violations = _index_raw(raw)
        violations.extend(_validate_indexed(names, tails, heads, raw.root, labels))
        if violations:
            raise NetworkValidationError(ValidationReport.from_violations(violations))
        return cls(names, tails, heads, labels)

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], leaf_labels: Optional[Mapping[str, str]] = None,
                   root: Optional[str] = None) -> "PhyloNetwork":
        raw = RawGraph(edges=tuple(edges), root=root,
                       leaf_labels=tuple((leaf_labels or {}).items()))
        return cls.from_raw(raw)

    def to_raw(self) -> RawGraph:
        return RawGraph(
            edges=tuple(self.edge_names(e) for e in range(self.n_edges)),
            vertices=self._names,
            root=self.root_name,
            leaf_labels=tuple((self._names[v], self._labels[v]) for v in self._leaves),
        )

    # ---------- 基本查询 ----------

    @property
    def n_vertices(self) -> int:
        return len(self._names)

    @property
    def n_edges(self) -> int:
        return len(self._tails)

    @property
    def names(self) -> Tuple[str, ...]:
        return self._names

    @property
    def tails(self) -> Tuple[int, ...]:
        return self._tails

    @property
    def heads(self) -> Tuple[int, ...]:
        return self._heads

    @property
    def tail_array(self) -> np.ndarray:
        """边尾下标（int64，只读使用）"""
        return self._tail_array

    @property
    def head_array(self) -> np.ndarray:
        return self._head_array

    @property
    def name_array(self) -> np.ndarray:
        """顶点外部ID的 numpy 字符串数组，首次访问时构建"""
        if self._name_array is None:
            self._name_array = np.array(self._names, dtype=str)
        return self._name_array

    @property
    def root(self) -> int:
        return self._root

    @property
    def root_name(self) -> str:
        return self._names[self._root]

    @property
    def leaves(self) -> Tuple[int, ...]:
        return self._leaves

    @property
    def leaf_names(self) -> List[str]:
        return [self._names[v] for v in self._leaves]

    @property
    def leaf_labels(self) -> Dict[str, str]:
        """叶顶点ID -> 标签（X 的元素）"""
        return {self._names[v]: self._labels[v] for v in self._leaves}

    @property
    def label_set(self) -> List[str]:
        return [self._labels[v] for v in self._leaves]

    def name(self, v: int) -> str:
        return self._names[v]

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise VertexSurgeryError(f"unknown vertex {name}") from None

    def has_vertex(self, name: str) -> bool:
        return name in self._index

    def edge(self, e: int) -> Tuple[int, int]:
        return self._tails[e], self._heads[e]

    def edge_names(self, e: int) -> Edge:
        return self._names[self._tails[e]], self._names[self._heads[e]]

    def edge_id(self, tail: str, head: str) -> Optional[int]:
        """按外部ID查边下标，不存在返回 None"""
        if self._edge_index is None:
            self._edge_index = {(t, h): e for e, (t, h) in enumerate(zip(self._tails, self._heads))}
        t = self._index.get(tail)
        h = self._index.get(head)
        if t is None or h is None:
            return None
        return self._edge_index.get((t, h))

    def out_edges(self, v: int) -> Tuple[int, ...]:
        return self._out[v]

    def in_edges(self, v: int) -> Tuple[int, ...]:
        return self._in[v]

    def indeg(self, v: int) -> int:
        return len(self._in[v])

    def outdeg(self, v: int) -> int:
        return len(self._out[v])

    def children(self, v: int) -> List[int]:
        return [self._heads[e] for e in self._out[v]]

    def parents(self, v: int) -> List[int]:
        return [self._tails[e] for e in self._in[v]]

    def is_leaf(self, v: int) -> bool:
        return not self._out[v]

    def canonical_edges(self) -> List[Edge]:
        return sorted(self.edge_names(e) for e in range(self.n_edges))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhyloNetwork):
            return NotImplemented
        return fingerprint(self) == fingerprint(other)

    def __hash__(self) -> int:
        return hash(fingerprint(self))

    def __repr__(self):
        return (f"<PhyloNetwork(|V|={self.n_vertices}, |E|={self.n_edges}, "
                f"|X|={len(self._leaves)}, root={self.root_name})>")


def fingerprint(n: PhyloNetwork) -> str:
    """网络的稳定摘要：规范边表 + 叶标签的 md5"""
    if n._fingerprint is None:
        md5_hash = hashlib.md5()
        for tail, head in n.canonical_edges():
            md5_hash.update(f"{tail}\t{head}\n".encode("utf-8"))
        for vertex, label in sorted(n.leaf_labels.items()):
            md5_hash.update(f"leaf\t{vertex}\t{label}\n".encode("utf-8"))
        n._fingerprint = md5_hash.hexdigest()
    return n._fingerprint


def is_binary(n: PhyloNetwork) -> bool:
    """不含 (1,1) 和 (2,2) 顶点"""
    for v in range(n.n_vertices):
        pair = (n.indeg(v), n.outdeg(v))
        if pair == (1, 1) or pair == (2, 2):
            return False
    return True


def is_tree(n: PhyloNetwork) -> bool:
    """每个非根顶点入度为 1"""
    return all(n.indeg(v) == 1 for v in range(n.n_vertices) if v != n.root)


_KIND_BY_DEGREES = {
    (1, 2): "tree",
    (2, 1): "reticulation",
    (1, 1): "pass_through",
    (2, 2): "hub",
}


def vertex_kind(n: PhyloNetwork, v: int) -> str:
    if v == n.root:
        return "root"
    if n.is_leaf(v):
        return "leaf"
    return _KIND_BY_DEGREES[(n.indeg(v), n.outdeg(v))]


def degree_profile(n: PhyloNetwork) -> DegreeProfile:
    counts = {"root": 0, "leaf": 0, "tree": 0, "reticulation": 0, "pass_through": 0, "hub": 0}
    for v in range(n.n_vertices):
        counts[vertex_kind(n, v)] += 1
    return DegreeProfile(**counts)


def remove_vertex(n: PhyloNetwork, v: str) -> RawGraph:
    """
    删除顶点 v 及其所有关联边，返回未校验的 RawGraph

    Args:
        n: 网络
        v: 顶点外部ID（不能是根或叶）
    """
    idx = n.index_of(v)
    if idx == n.root:
        raise VertexSurgeryError(f"cannot remove the root {v}")
    if n.is_leaf(idx):
        raise VertexSurgeryError(f"cannot remove the leaf {v}")
    vertices = tuple(name for i, name in enumerate(n.names) if i != idx)
    edges = tuple(
        n.edge_names(e) for e in range(n.n_edges)
        if n.tails[e] != idx and n.heads[e] != idx
    )
    logger.debug("removed %s: %d -> %d edges", v, n.n_edges, len(edges))
    return RawGraph(
        edges=edges,
        vertices=vertices,
        root=n.root_name,
        leaf_labels=tuple(n.leaf_labels.items()),
    )
