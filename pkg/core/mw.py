"""
M-W 对、最大匹配、消解与 η* 快速路径

M-fence Z_i 在 W-fence Z_j 之上，当且仅当某个顶点同时是 Z_i 的下顶点和 Z_j 的上顶点。
存在覆盖全部 W-fence 的 M-W 匹配时 η*(N) = n_w，可以逐对消解后构造覆盖子树。
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from models import CoveringSubtree, FastResult, MWMatching, MWPair, TrailKind
from core.exceptions import FastPathInapplicableError, PhyloError, ResolutionError
from core.network import PhyloNetwork, remove_vertex, validate_network
from core.treebase import covering_subtree, subdivision_tree, validate_covering_subtree
from core.zigzag import M_FENCE, NO_TRAIL, W_FENCE, ZigzagDecomposition, decompose

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MWPairGraph:
    """M-fence 与 W-fence 之间的二部图，边上记录共享顶点（按外部ID排序）"""
    m_nodes: Tuple[int, ...]
    w_nodes: Tuple[int, ...]
    adjacency: Dict[Tuple[int, int], Tuple[str, ...]]

    def __len__(self) -> int:
        return len(self.adjacency)


def above(decomposition: ZigzagDecomposition, i: int, j: int) -> bool:
    """Z_i 是否在 Z_j 之上：V_ℓ(Z_i) ∩ V_u(Z_j) 非空"""
    if i == j:
        raise ValueError("above() needs two distinct trails")
    lower_i = decomposition.trails[i].lower
    upper_j = decomposition.trails[j].upper
    # 只扫描较小的一侧
    if len(lower_i) <= len(upper_j):
        upper_trail = decomposition.upper_trail
        return any(upper_trail[v] == j for v in lower_i)
    lower_trail = decomposition.lower_trail
    return any(lower_trail[v] == i for v in upper_j)


def mw_pair_graph(decomposition: ZigzagDecomposition) -> MWPairGraph:
    """一次扫描所有顶点的角色，得到全部 M-W 对及其共享顶点"""
    n = decomposition.network
    codes = decomposition.kind_codes
    lower, upper = decomposition.lower_trail, decomposition.upper_trail
    shared = np.flatnonzero((lower != NO_TRAIL) & (upper != NO_TRAIL))
    shared = shared[(codes[lower[shared]] == M_FENCE) & (codes[upper[shared]] == W_FENCE)]
    witnesses: Dict[Tuple[int, int], List[str]] = {}
    for v, i, j in zip(shared.tolist(), lower[shared].tolist(), upper[shared].tolist()):
        witnesses.setdefault((i, j), []).append(n.name(v))
    adjacency = {pair: tuple(sorted(names)) for pair, names in sorted(witnesses.items())}
    return MWPairGraph(
        m_nodes=tuple(decomposition.indices_of(TrailKind.M_FENCE)),
        w_nodes=tuple(decomposition.indices_of(TrailKind.W_FENCE)),
        adjacency=adjacency,
    )


def max_mw_matching(g: MWPairGraph) -> MWMatching:
    """
    最大基数 M-W 匹配（增广路，迭代实现，结果确定）

    每对的消解顶点取共享顶点中外部ID最小的一个。
    """
    adj_w: Dict[int, List[int]] = {w: [] for w in g.w_nodes}
    for m, w in g.adjacency:
        adj_w[w].append(m)
    for w in adj_w:
        adj_w[w].sort()

    match_m: Dict[int, int] = {}

    def augment(root: int) -> bool:
        visited = set()
        stack: List[Tuple[int, Iterator[int]]] = [(root, iter(adj_w[root]))]
        path: List[int] = []
        while stack:
            _, candidates = stack[-1]
            advanced = False
            for m in candidates:
                if m in visited:
                    continue
                visited.add(m)
                path.append(m)
                if m not in match_m:
                    for (w, _), mm in zip(stack, path):
                        match_m[mm] = w
                    return True
                nxt = match_m[m]
                stack.append((nxt, iter(adj_w[nxt])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if path:
                    path.pop()
        return False

    for w in sorted(g.w_nodes):
        augment(w)

    pairs = sorted(
        (MWPair(m_trail=m, w_trail=w, vertex=g.adjacency[(m, w)][0]) for m, w in match_m.items()),
        key=lambda p: p.w_trail,
    )
    return MWMatching(pairs=pairs, n_w=len(g.w_nodes), saturated=len(pairs) == len(g.w_nodes))


def _resolve(n: PhyloNetwork, decomposition: ZigzagDecomposition, m_trail: int, w_trail: int,
             v: str) -> Tuple[PhyloNetwork, ZigzagDecomposition]:
    trails = decomposition.trails
    if not (0 <= m_trail < len(trails) and trails[m_trail].kind is TrailKind.M_FENCE):
        raise ResolutionError(f"trail {m_trail} is not an M-fence")
    if not (0 <= w_trail < len(trails) and trails[w_trail].kind is TrailKind.W_FENCE):
        raise ResolutionError(f"trail {w_trail} is not a W-fence")
    if not n.has_vertex(v):
        raise ResolutionError(f"unknown vertex {v}")
    idx = n.index_of(v)
    if idx not in trails[m_trail].lower or idx not in trails[w_trail].upper:
        raise ResolutionError(f"{v} is not shared by M-fence {m_trail} and W-fence {w_trail}")

    raw = remove_vertex(n, v)
    report = validate_network(raw)
    if not report.ok:
        raise ResolutionError(f"removing {v} leaves an invalid network: {report.rules()}", report)
    residual = PhyloNetwork.from_raw(raw)
    d = decompose(residual)

    before, after = decomposition.counts, d.counts
    if after.m_fence != before.m_fence - 1 or after.w_fence != before.w_fence - 1:
        raise ResolutionError(
            f"resolving at {v} changed (n_m, n_w) from ({before.m_fence}, {before.w_fence}) "
            f"to ({after.m_fence}, {after.w_fence})"
        )
    logger.debug("resolved (%d, %d) at %s, n_w now %d", m_trail, w_trail, v, after.w_fence)
    return residual, d


def resolve(n: PhyloNetwork, pair: Tuple[int, int], v: str,
            decomposition: Optional[ZigzagDecomposition] = None) -> PhyloNetwork:
    """
    在共享顶点 v 处消解 M-W 对，返回 N - {v}

    结果会重新校验，并断言 n_m、n_w 各减少 1。

    Args:
        n: 网络
        pair: (M-fence 下标, W-fence 下标)
        v: 顶点外部ID，须属于 V_ℓ(M) ∩ V_u(W)

    Raises:
        ResolutionError: v 不是共享顶点，或结果违反预期
    """
    d = decomposition if decomposition is not None else decompose(n)
    m_trail, w_trail = pair
    residual, _ = _resolve(n, d, m_trail, w_trail, v)
    return residual


def resolution_case(n: PhyloNetwork, v: str) -> str:
    """共享顶点的度数情形，"(入度,出度)" """
    idx = n.index_of(v)
    return f"({n.indeg(idx)},{n.outdeg(idx)})"


def lower_bound(n: PhyloNetwork, decomposition: Optional[ZigzagDecomposition] = None) -> int:
    """η*(N) ≥ n_w"""
    d = decomposition if decomposition is not None else decompose(n)
    return d.counts.w_fence


def eta_fast(n: PhyloNetwork, decomposition: Optional[ZigzagDecomposition] = None) -> FastResult:
    """
    快速路径：存在 W 饱和的 M-W 匹配时 η* = n_w，否则给出最大匹配（此时 η* > n_w）
    """
    d = decomposition if decomposition is not None else decompose(n)
    n_w = d.counts.w_fence
    if n_w == 0:
        empty = MWMatching(pairs=[], n_w=0, saturated=True)
        return FastResult(applicable=True, value=0, lower_bound=0, matching=empty)
    matching = max_mw_matching(mw_pair_graph(d))
    if matching.saturated:
        return FastResult(applicable=True, value=n_w, lower_bound=n_w, matching=matching)
    logger.debug("fast path inapplicable: matching %d of %d", matching.size, n_w)
    return FastResult(applicable=False, value=None, lower_bound=n_w, matching=matching)


def build_mcst_via_resolution(n: PhyloNetwork,
                              decomposition: Optional[ZigzagDecomposition] = None) -> CoveringSubtree:
    """
    逐对消解直到没有 W-fence，再把剩余网络的细分树解释为原网络的最大覆盖子树

    每次消解后重新分解并重新求匹配。

    Raises:
        FastPathInapplicableError: 原网络不存在 W 饱和匹配
        ResolutionError: 消解中间步骤违反预期
    """
    d = decomposition if decomposition is not None else decompose(n)
    original_w = d.counts.w_fence
    current = n
    removed: List[str] = []
    first = True
    while d.counts.w_fence:
        matching = max_mw_matching(mw_pair_graph(d))
        if not matching.saturated:
            if first:
                raise FastPathInapplicableError(matching)
            raise ResolutionError(
                f"residual network after removing {removed} has no W-saturated matching")
        first = False
        pair = matching.pairs[0]
        current, d = _resolve(current, d, pair.m_trail, pair.w_trail, pair.vertex)
        removed.append(pair.vertex)

    residual_tree = subdivision_tree(current, d)
    subtree = covering_subtree(n, residual_tree.tree_edges)
    report = validate_covering_subtree(n, subtree.tree_edges)
    if not report.ok:
        v = report.first()
        raise PhyloError(f"resolved subtree is not a covering subtree: {v.rule} at {v.witness}")
    if subtree.uncovered != sorted(removed) or subtree.eta != original_w:
        raise PhyloError(f"expected uncovered {sorted(removed)}, got {subtree.uncovered}")
    return subtree

