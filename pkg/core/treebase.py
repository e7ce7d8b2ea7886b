"""
细分树构造与覆盖子树校验
"""
import logging
from collections import deque
from typing import Dict, Iterable, List, Optional, Set, Tuple

from models import CoveringSubtree, TrailKind, ValidationReport, Violation
from core.exceptions import NotTreeBasedError, PhyloError
from core.network import Edge, PhyloNetwork, fingerprint
from core.zigzag import ZigzagDecomposition, ZigzagTrail, decompose

logger = logging.getLogger(__name__)


def _select_edges(t: ZigzagTrail) -> List[int]:
    """
    每条链中选入细分树的边：奇数位置的边（1 起计），M-fence 再加上最后一条

    这样链上每个下顶点恰好得到一条入边，每个上顶点至少保留一条出边。
    """
    chosen = list(t.edges[0::2])
    if t.kind is TrailKind.M_FENCE:
        chosen.append(t.edges[-1])
    return chosen


def validate_covering_subtree(n: PhyloNetwork, edges: Iterable[Edge]) -> ValidationReport:
    """
    检查边集是否构成以 ρ 为根、叶集恰为 X 的有向树

    只报告第一条违反的条件，不抛异常。

    Args:
        n: 宿主网络
        edges: (tail, head) 外部ID对
    """
    edge_set = list(dict.fromkeys(tuple(e) for e in edges))

    def fail(rule: str, witness: str, message: str) -> ValidationReport:
        return ValidationReport.from_violations([Violation(rule=rule, witness=witness, message=message)])

    for tail, head in edge_set:
        if n.edge_id(tail, head) is None:
            return fail("foreign-edge", f"{tail}->{head}", "edge is not an edge of the network")

    root = n.root_name
    parent: Dict[str, str] = {}
    children: Dict[str, List[str]] = {root: []}
    for tail, head in edge_set:
        if head == root:
            return fail("root-has-parent", root, "the root cannot have an incoming tree edge")
        if head in parent:
            return fail("multiple-parents", head, f"{head} has two tree parents")
        parent[head] = tail
        children.setdefault(tail, []).append(head)
        children.setdefault(head, [])

    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for c in children[v]:
            if c not in seen:
                seen.add(c)
                queue.append(c)
    for v in sorted(children):
        if v not in seen:
            return fail("unreachable", v, f"{v} is not reachable from the root within the tree")

    tree_leaves = {v for v, cs in children.items() if not cs}
    expected = set(n.leaf_names)
    if tree_leaves != expected:
        diff = sorted(tree_leaves ^ expected)
        return fail("leaf-set", diff[0], "tree leaves differ from the leaf set of the network")
    return ValidationReport(ok=True)


def covering_subtree(n: PhyloNetwork, edges: Iterable[Edge]) -> CoveringSubtree:
    """
    由已知合法的边集构造 CoveringSubtree（不校验）

    被覆盖顶点为边集中出现的顶点加上根，按外部ID排序。
    """
    edges = list(edges)
    covered: Set[str] = {n.root_name}
    for tail, head in edges:
        covered.add(tail)
        covered.add(head)
    return CoveringSubtree(
        network_ref=fingerprint(n),
        tree_edges=edges,
        covered=sorted(covered),
        uncovered=sorted(set(n.names) - covered),
    )


def subdivision_tree(n: PhyloNetwork, decomposition: Optional[ZigzagDecomposition] = None) -> CoveringSubtree:
    """
    为没有 W-fence 的网络构造一棵生成细分树

    Raises:
        NotTreeBasedError: 存在 W-fence
        PhyloError: 选出的边集未通过校验（实现错误）
    """
    d = decomposition if decomposition is not None else decompose(n)
    if d.counts.w_fence:
        raise NotTreeBasedError(d.counts.w_fence)

    selected: List[int] = []
    for t in d.trails:
        selected.extend(_select_edges(t))
    selected.sort()
    edges: List[Tuple[str, str]] = [n.edge_names(e) for e in selected]

    report = validate_covering_subtree(n, edges)
    if not report.ok:
        v = report.first()
        raise PhyloError(f"subdivision tree failed validation: {v.rule} at {v.witness}")
    subtree = covering_subtree(n, edges)
    if subtree.uncovered:
        raise PhyloError(f"subdivision tree misses {subtree.uncovered}")
    logger.debug("subdivision tree with %d of %d edges", len(edges), n.n_edges)
    return subtree
