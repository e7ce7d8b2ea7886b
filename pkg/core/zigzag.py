"""
极大 zig-zag 链分解

每条边至多有两个"邻居"：同头的另一条入边、同尾的另一条出边，
所以按邻居关系连起来的边图最大度为 2，其连通分量（路径或环）恰好是极大链。

实现全部在 numpy 数组上完成：把每条边拆成两个有向"走向"（经由头离开 / 经由尾离开），
走向之间的后继关系是单射，链就是后继链；链的编号和链内位置都用指针倍增求出，
轮数只取决于最长链的长度。
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from models import StatsReport, TrailCounts, TrailKind, TrailRecord
from core.exceptions import TrailShapeError
from core.network import PhyloNetwork, degree_profile, is_binary

logger = logging.getLogger(__name__)

NO_TRAIL = -1

# 链类型在数组中的编码
CROWN, M_FENCE, N_FENCE, W_FENCE = 0, 1, 2, 3
KIND_BY_CODE = (TrailKind.CROWN, TrailKind.M_FENCE, TrailKind.N_FENCE, TrailKind.W_FENCE)
CODE_BY_KIND = {kind: code for code, kind in enumerate(KIND_BY_CODE)}


@dataclass(frozen=True, eq=False)
class ZigzagTrail:
    """
    一条极大 zig-zag 链

    edges 为规范顺序的边下标：开放链从字典序较小的端边开始，
    crown 从字典序最小的边开始并先走向与其同头的邻边。
    """
    network: PhyloNetwork = field(repr=False)
    edges: Tuple[int, ...]
    kind: TrailKind

    def __len__(self) -> int:
        return len(self.edges)

    @cached_property
    def upper(self) -> FrozenSet[int]:
        """上顶点 V_u：所有边的尾"""
        tails = self.network.tails
        return frozenset(tails[e] for e in self.edges)

    @cached_property
    def lower(self) -> FrozenSet[int]:
        """下顶点 V_ℓ：所有边的头"""
        heads = self.network.heads
        return frozenset(heads[e] for e in self.edges)

    def named_edges(self) -> List[Tuple[str, str]]:
        return [self.network.edge_names(e) for e in self.edges]

    def upper_names(self) -> List[str]:
        return sorted(self.network.name(v) for v in self.upper)

    def lower_names(self) -> List[str]:
        return sorted(self.network.name(v) for v in self.lower)


class ZigzagDecomposition:
    """
    网络的唯一极大链分解（不可变）

    内部保存数组形式：order 是按 (链, 链内位置) 排好的边下标，offsets[i]:offsets[i+1]
    是第 i 条链；ZigzagTrail 对象在第一次访问 trails 时才构建。
    """

    def __init__(self, network: PhyloNetwork, order: np.ndarray, offsets: np.ndarray,
                 kind_codes: np.ndarray, edge_to_trail: np.ndarray,
                 lower_trail: np.ndarray, upper_trail: np.ndarray, counts: TrailCounts):
        self.network = network
        self._order = order
        self._offsets = offsets
        self._kind_codes = kind_codes
        self._edge_to_trail = edge_to_trail
        self._lower_trail = lower_trail
        self._upper_trail = upper_trail
        self._counts = counts
        self._trails: Optional[Tuple[ZigzagTrail, ...]] = None

    @property
    def trails(self) -> Tuple[ZigzagTrail, ...]:
        if self._trails is None:
            order = self._order.tolist()
            bounds = self._offsets.tolist()
            self._trails = tuple(
                ZigzagTrail(self.network, tuple(order[bounds[i]:bounds[i + 1]]), KIND_BY_CODE[code])
                for i, code in enumerate(self._kind_codes.tolist())
            )
        return self._trails

    @property
    def edge_to_trail(self) -> np.ndarray:
        return self._edge_to_trail

    @property
    def counts(self) -> TrailCounts:
        return self._counts

    @property
    def kind_codes(self) -> np.ndarray:
        """每条链的类型编码（CROWN / M_FENCE / N_FENCE / W_FENCE）"""
        return self._kind_codes

    @property
    def lower_trail(self) -> np.ndarray:
        """每个顶点作为下顶点所在的链（根为 -1）"""
        return self._lower_trail

    @property
    def upper_trail(self) -> np.ndarray:
        """每个顶点作为上顶点所在的链（叶为 -1）"""
        return self._upper_trail

    def vertex_roles(self, v: int) -> Tuple[Optional[int], Optional[int]]:
        """(下顶点所在链, 上顶点所在链)，不存在时为 None"""
        lower = int(self._lower_trail[v])
        upper = int(self._upper_trail[v])
        return (None if lower == NO_TRAIL else lower, None if upper == NO_TRAIL else upper)

    def indices_of(self, kind: TrailKind) -> List[int]:
        return np.flatnonzero(self._kind_codes == CODE_BY_KIND[kind]).tolist()

    def __len__(self) -> int:
        return len(self._kind_codes)

    def __repr__(self):
        c = self._counts
        return (f"<ZigzagDecomposition(trails={len(self)}, crown={c.crown}, "
                f"m={c.m_fence}, n={c.n_fence}, w={c.w_fence})>")


def _pair_up(endpoints: np.ndarray) -> np.ndarray:
    """端点相同的两条边互为邻边（度数至多为 2，每组至多两条），没有则为 -1"""
    sibling = np.full(len(endpoints), -1, dtype=np.int64)
    order = np.argsort(endpoints, kind="stable")
    ordered = endpoints[order]
    i = np.flatnonzero(ordered[1:] == ordered[:-1])
    a, b = order[i], order[i + 1]
    sibling[a] = b
    sibling[b] = a
    return sibling


def _sibling_arrays(n: PhyloNetwork) -> Tuple[np.ndarray, np.ndarray]:
    """每条边的同头邻边和同尾邻边，没有则为 -1"""
    return _pair_up(n.head_array), _pair_up(n.tail_array)


def _successors(head_sibling: np.ndarray, tail_sibling: np.ndarray) -> np.ndarray:
    """
    走向 2e 经由 e 的头离开、2e+1 经由 e 的尾离开；返回每个走向的后继，-1 表示链在此结束

    经由头到达同头邻边 f 之后必须经由 f 的尾离开，反之亦然。
    """
    succ = np.full(2 * len(head_sibling), -1, dtype=np.int64)
    succ[0::2] = np.where(head_sibling >= 0, 2 * head_sibling + 1, -1)
    succ[1::2] = np.where(tail_sibling >= 0, 2 * tail_sibling, -1)
    return succ


def _pointer(succ: np.ndarray) -> np.ndarray:
    # 链尾指向自己
    return np.where(succ >= 0, succ, np.arange(len(succ)))


def _trail_labels(succ: np.ndarray) -> np.ndarray:
    """每条边所在链的最小边下标（允许后继成环）"""
    ptr = _pointer(succ)
    low = np.arange(len(succ)) >> 1
    while True:
        widened = np.minimum(low, low[ptr])
        if np.array_equal(widened, low):
            break
        low = widened
        ptr = ptr[ptr]
    # 两个走向分别覆盖经由头、经由尾的两半，合起来是整条链
    return np.minimum(low[0::2], low[1::2])


def _rank(succ: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """到链尾的步数和链尾走向（succ 中不能有环）"""
    ptr = _pointer(succ)
    dist = (succ >= 0).astype(np.int64)
    while True:
        jumped = ptr[ptr]
        if np.array_equal(jumped, ptr):
            return dist, ptr
        dist = dist + dist[ptr]
        ptr = jumped


def _crown_starts(n: PhyloNetwork, label: np.ndarray, crown_edge: np.ndarray) -> Dict[int, int]:
    """每个 crown（按链标签）字典序最小的边"""
    names, tails, heads = n.names, n.tails, n.heads
    best: Dict[int, Tuple[Tuple[str, str], int]] = {}
    for e in np.flatnonzero(crown_edge).tolist():
        lab = int(label[e])
        key = (names[tails[e]], names[heads[e]])
        if lab not in best or key < best[lab][0]:
            best[lab] = (key, e)
    return {lab: e for lab, (_, e) in best.items()}


def decompose(n: PhyloNetwork) -> ZigzagDecomposition:
    """
    计算唯一的极大 zig-zag 链分解

    链的编号顺序为各链中最小边下标的顺序。

    Args:
        n: 合法网络

    Returns:
        ZigzagDecomposition
    """
    m = n.n_edges
    edges = np.arange(m)
    head_sibling, tail_sibling = _sibling_arrays(n)
    succ = _successors(head_sibling, tail_sibling)
    label = _trail_labels(succ)

    # 含有开放端的链是 fence，其余是 crown
    is_open = np.zeros(m, dtype=bool)
    is_open[label[(head_sibling < 0) | (tail_sibling < 0)]] = True
    crown_edge = ~is_open[label]

    # 在 crown 的起始边之前切断两个方向的走向环
    for f in _crown_starts(n, label, crown_edge).values():
        succ[2 * tail_sibling[f] + 1] = -1
        succ[2 * head_sibling[f]] = -1
    dist, end = _rank(succ)

    # 每条链恰有两个没有前驱的走向（两个方向各一个）
    has_pred = np.zeros(2 * m, dtype=bool)
    has_pred[succ[succ >= 0]] = True
    starts = np.flatnonzero(~has_pred)
    starts = starts[np.argsort(label[starts >> 1], kind="stable")]
    pairs = starts.reshape(-1, 2)
    trail_label = label[pairs[:, 0] >> 1]
    n_trails = len(pairs)

    trail_of_label = np.empty(m, dtype=np.int64)
    trail_of_label[trail_label] = np.arange(n_trails)
    edge_to_trail = trail_of_label[label]

    # 开放链从 (tail, head) 字典序较小的端边开始；crown 取经由头离开的那个方向
    a, b = pairs[:, 0], pairs[:, 1]
    names = n.name_array
    tail_a, tail_b = names[n.tail_array[a >> 1]], names[n.tail_array[b >> 1]]
    head_a, head_b = names[n.head_array[a >> 1]], names[n.head_array[b >> 1]]
    a_first = (tail_a < tail_b) | ((tail_a == tail_b) & (head_a <= head_b))
    crown = crown_edge[a >> 1]
    start = np.where(crown | a_first, a, b)

    length = dist[start] + 1
    trail_end = end[start][edge_to_trail]
    dart = np.where(end[2 * edges] == trail_end, 2 * edges, 2 * edges + 1)
    position = dist[start][edge_to_trail] - dist[dart]
    offsets = np.zeros(n_trails + 1, dtype=np.int64)
    np.cumsum(length, out=offsets[1:])
    order = np.empty(m, dtype=np.int64)
    order[offsets[edge_to_trail] + position] = edges

    # 偶数长 fence：第一步经由头（首两条边同头）=> 端点是边尾，为 W-fence
    via_head = (start & 1) == 0
    kind_codes = np.where(crown, CROWN,
                          np.where(length % 2 == 1, N_FENCE,
                                   np.where(via_head, W_FENCE, M_FENCE)))

    lower_trail = np.full(n.n_vertices, NO_TRAIL, dtype=np.int64)
    lower_trail[n.head_array] = edge_to_trail
    upper_trail = np.full(n.n_vertices, NO_TRAIL, dtype=np.int64)
    upper_trail[n.tail_array] = edge_to_trail

    tally = np.bincount(kind_codes, minlength=4).tolist()
    counts = TrailCounts(crown=tally[CROWN], m_fence=tally[M_FENCE],
                         n_fence=tally[N_FENCE], w_fence=tally[W_FENCE])
    logger.debug("decomposed %d edges into %d trails %s", m, n_trails, counts.as_tuple())
    return ZigzagDecomposition(n, order, offsets, kind_codes, edge_to_trail,
                               lower_trail, upper_trail, counts)


def _relation(a: Tuple[Hashable, Hashable], b: Tuple[Hashable, Hashable]) -> Optional[str]:
    if a[1] == b[1]:
        return "head"
    if a[0] == b[0]:
        return "tail"
    return None


def classify_trail(edges: Sequence[Tuple[Hashable, Hashable]]) -> TrailKind:
    """
    按边序列判断链类型

    Crown 当且仅当闭合；否则奇数条边为 N-fence；偶数条边时端点是头为 M-fence，
    端点是尾为 W-fence。

    Args:
        edges: 有序的 (tail, head) 序列

    Raises:
        TrailShapeError: 空序列、重复边或相邻边不交替共享头/尾
    """
    edges = [tuple(e) for e in edges]
    if not edges:
        raise TrailShapeError("a trail needs at least one edge")
    if len(set(edges)) != len(edges):
        raise TrailShapeError("a trail cannot repeat an edge")
    relations: List[str] = []
    for i, (a, b) in enumerate(zip(edges, edges[1:]), 1):
        rel = _relation(a, b)
        if rel is None:
            raise TrailShapeError(f"edges {i} and {i + 1} share neither head nor tail")
        if relations and relations[-1] == rel:
            raise TrailShapeError(f"edges {i - 1}..{i + 1} do not alternate")
        relations.append(rel)

    m = len(edges)
    if m >= 4 and m % 2 == 0:
        closing = _relation(edges[-1], edges[0])
        if closing is not None and closing != relations[0]:
            return TrailKind.CROWN
    if m % 2 == 1:
        return TrailKind.N_FENCE
    return TrailKind.W_FENCE if relations[0] == "head" else TrailKind.M_FENCE


def upper_lower(t: ZigzagTrail) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """(V_u, V_ℓ)，用外部ID；两者可以相交"""
    return frozenset(t.upper_names()), frozenset(t.lower_names())


def is_maximal(n: PhyloNetwork, edges: Sequence[int]) -> bool:
    """
    直接按定义检查一条链是否极大：端边在开放的一侧没有链外的同头/同尾边

    不依赖 decompose 的邻边数组。
    """
    named = [n.edge_names(e) for e in edges]
    kind = classify_trail(named)
    if kind is TrailKind.CROWN:
        return True
    members = set(edges)

    def extendable(e: int, side: str) -> bool:
        t, h = n.edge(e)
        candidates = n.in_edges(h) if side == "head" else n.out_edges(t)
        return any(f not in members for f in candidates)

    if len(edges) == 1:
        return not (extendable(edges[0], "head") or extendable(edges[0], "tail"))
    first_rel = _relation(named[0], named[1])
    last_rel = _relation(named[-2], named[-1])
    open_first = "tail" if first_rel == "head" else "head"
    open_last = "tail" if last_rel == "head" else "head"
    return not (extendable(edges[0], open_first) or extendable(edges[-1], open_last))


def delta_star(n: PhyloNetwork, decomposition: Optional[ZigzagDecomposition] = None) -> int:
    """δ*(N) = W-fence 的数量"""
    d = decomposition if decomposition is not None else decompose(n)
    return d.counts.w_fence


def is_tree_based(n: PhyloNetwork, decomposition: Optional[ZigzagDecomposition] = None) -> bool:
    """没有 W-fence 当且仅当 tree-based"""
    return delta_star(n, decomposition) == 0


def check_count_identity(n: PhyloNetwork, decomposition: Optional[ZigzagDecomposition] = None) -> bool:
    """n_m - n_w == |X| - 1"""
    d = decomposition if decomposition is not None else decompose(n)
    return d.counts.m_fence - d.counts.w_fence == len(n.leaves) - 1


def trail_record(index: int, t: ZigzagTrail) -> TrailRecord:
    return TrailRecord(
        index=index,
        kind=t.kind,
        edges=t.named_edges(),
        upper=t.upper_names(),
        lower=t.lower_names(),
    )


def stats_record(n: PhyloNetwork, decomposition: Optional[ZigzagDecomposition] = None,
                 include_trails: bool = True) -> StatsReport:
    """JSON 统计记录：各类型数量、δ*、恒等式是否成立、（可选）链列表"""
    d = decomposition if decomposition is not None else decompose(n)
    return StatsReport(
        n_vertices=n.n_vertices,
        n_edges=n.n_edges,
        n_leaves=len(n.leaves),
        is_binary=is_binary(n),
        degree_profile=degree_profile(n),
        counts=d.counts,
        delta_star=d.counts.w_fence,
        tree_based=d.counts.w_fence == 0,
        identity_ok=check_count_identity(n, d),
        trails=[trail_record(i, t) for i, t in enumerate(d.trails)] if include_trails else None,
    )
