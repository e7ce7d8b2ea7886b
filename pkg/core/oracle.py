"""
η* 的精确穷举搜索，以及供交叉检查使用的朴素分解和结构性质检查

搜索按 k = 0, 1, 2, ... 枚举非根非叶顶点的 k 子集 S（字典序），
S 可行当且仅当 N - S 中每个非根顶点都能选一个剩余父亲，且每个剩余非叶顶点至少被一个孩子选中。
DAG 中每个非根顶点恰好选一个父亲时，选出的边必然构成以 ρ 为根的树。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, islice
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from config import ORACLE_CONFIG
from models import (
    CoveringSubtree, OracleResult, PropertyCheck, SearchTraceEntry, StructuralReport, TrailKind,
)
from core.network import PhyloNetwork
from core.treebase import covering_subtree
from core.zigzag import NO_TRAIL, ZigzagDecomposition

logger = logging.getLogger(__name__)

Assignment = Dict[int, int]  # 顶点 -> 选中的父亲


def reticulation_count(n: PhyloNetwork) -> int:
    """入度为 2 的顶点数（含 (2,2) 顶点）"""
    return sum(1 for v in range(n.n_vertices) if n.indeg(v) == 2)


def in_oracle_scope(n: PhyloNetwork) -> bool:
    """规模是否在 ORACLE_CONFIG 的 max_reticulations / max_vertices 之内"""
    return (reticulation_count(n) <= ORACLE_CONFIG["max_reticulations"]
            and n.n_vertices <= ORACLE_CONFIG["max_vertices"])


class _FeasibilityChecker:
    """对固定网络判断删除集合 S 后能否选出覆盖子树"""

    def __init__(self, n: PhyloNetwork):
        self.n = n
        self.parents = [tuple(n.parents(v)) for v in range(n.n_vertices)]
        self.children = [tuple(n.children(v)) for v in range(n.n_vertices)]

    def check(self, removed: Set[int]) -> Optional[Assignment]:
        n = self.n
        root = n.root
        assignment: Assignment = {}
        choices: Dict[int, Tuple[int, ...]] = {}
        for v in range(n.n_vertices):
            if v == root or v in removed:
                continue
            candidates = tuple(p for p in self.parents[v] if p not in removed)
            if not candidates:
                return None
            if len(candidates) == 1:
                assignment[v] = candidates[0]
            else:
                choices[v] = candidates

        covered = set(assignment.values())
        needed: List[int] = []
        for u in range(n.n_vertices):
            if u in removed or n.is_leaf(u) or u in covered:
                continue
            if not any(c in choices and u in choices[c] for c in self.children[u]):
                return None
            needed.append(u)

        if not self._cover(needed, 0, choices, assignment):
            return None
        # 未被约束的双亲顶点任选第一个剩余父亲
        for v, candidates in choices.items():
            assignment.setdefault(v, candidates[0])
        return assignment

    def _cover(self, needed: Sequence[int], i: int, choices: Dict[int, Tuple[int, ...]],
               assignment: Assignment) -> bool:
        """回溯：为每个仍缺孩子的顶点指派一个尚未决定的双亲孩子"""
        while i < len(needed) and needed[i] in assignment.values():
            i += 1
        if i == len(needed):
            return True
        u = needed[i]
        for c in self.children[u]:
            if c in choices and c not in assignment and u in choices[c]:
                assignment[c] = u
                if self._cover(needed, i + 1, choices, assignment):
                    return True
                del assignment[c]
        return False


def _witness(n: PhyloNetwork, assignment: Assignment) -> CoveringSubtree:
    edges = sorted(
        (n.edge_id(n.name(p), n.name(v)), (n.name(p), n.name(v))) for v, p in assignment.items()
    )
    return covering_subtree(n, [pair for _, pair in edges])


def _check_chunk(checker: _FeasibilityChecker,
                 chunk: Sequence[Tuple[int, ...]]) -> Tuple[int, Optional[Tuple[Tuple[int, ...], Assignment]]]:
    """返回 (检查的数量, 第一个可行的子集及其指派)"""
    for pos, subset in enumerate(chunk):
        assignment = checker.check(set(subset))
        if assignment is not None:
            return pos + 1, (subset, assignment)
    return len(chunk), None


def _chunks(it: Iterator[Tuple[int, ...]], size: int) -> Iterator[List[Tuple[int, ...]]]:
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def _search(n: PhyloNetwork, budget: Optional[int], threads: int, chunk_size: int,
            progress_bar: bool) -> Tuple[OracleResult, List[SearchTraceEntry]]:
    checker = _FeasibilityChecker(n)
    internal = sorted(
        (v for v in range(n.n_vertices) if v != n.root and not n.is_leaf(v)),
        key=n.name,
    )
    trace: List[SearchTraceEntry] = []
    explored = 0
    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        levels = range(len(internal) + 1)
        for k in tqdm(levels, desc="oracle levels", disable=not progress_bar):
            candidates: Iterator[Tuple[int, ...]] = combinations(internal, k)
            if budget is not None:
                candidates = islice(candidates, max(budget - explored, 0))
            tried = 0
            found = None
            if executor is None:
                for chunk in _chunks(candidates, chunk_size):
                    count, found = _check_chunk(checker, chunk)
                    tried += count
                    if found is not None:
                        break
            else:
                # 按批提交，每批内按字典序取第一个可行子集，保证结果与串行一致
                for batch in _chunks(_chunks(candidates, chunk_size), threads):
                    results = list(executor.map(lambda c: _check_chunk(checker, c), batch))
                    for count, hit in results:
                        tried += count
                        if hit is not None:
                            found = hit
                            break
                    if found is not None:
                        break
            explored += tried

            if found is not None:
                subset, assignment = found
                names = sorted(n.name(v) for v in subset)
                trace.append(SearchTraceEntry(k=k, tried=tried, feasible=True, witness=names))
                logger.debug("oracle: k=%d feasible after %d candidates", k, explored)
                return OracleResult(eta=k, witness=_witness(n, assignment), explored=explored), trace

            trace.append(SearchTraceEntry(k=k, tried=tried, feasible=False))
            if budget is not None and explored >= budget:
                logger.debug("oracle: budget %d exhausted at k=%d", budget, k)
                # 完整检查过的层都不可行，下界为下一层
                complete = tried == comb(len(internal), k)
                bound = k + 1 if complete else k
                return OracleResult(eta=bound, explored=explored, budget_exceeded=True), trace
    finally:
        if executor is not None:
            executor.shutdown(wait=True)
    # 删除全部内部顶点时根的孩子都是叶子，总是可行，走不到这里
    raise AssertionError("exhaustive search found no covering subtree")


def eta_exact(n: PhyloNetwork, budget: Optional[int] = None, threads: Optional[int] = None,
              progress_bar: bool = False) -> OracleResult:
    """
    穷举求 η*(N)

    Args:
        n: 网络（建议在 in_oracle_scope 范围内）
        budget: 最多检查的候选集合数，None 不限
        threads: 并行线程数，缺省取 ORACLE_CONFIG

    Returns:
        OracleResult；预算耗尽时 budget_exceeded=True，eta 为已证明的下界，没有 witness
    """
    threads = threads or ORACLE_CONFIG["threads"]
    result, _ = _search(n, budget, threads, ORACLE_CONFIG["chunk_size"], progress_bar)
    return result


def search_trace(n: PhyloNetwork, budget: Optional[int] = None,
                 threads: Optional[int] = None) -> List[SearchTraceEntry]:
    """与 eta_exact 相同的搜索，返回每一层 k 的记录"""
    threads = threads or ORACLE_CONFIG["threads"]
    _, trace = _search(n, budget, threads, ORACLE_CONFIG["chunk_size"], False)
    return trace


def naive_decompose(n: PhyloNetwork) -> List[Tuple[int, ...]]:
    """
    朴素的二次分解：反复合并共享头或尾的边所在的组，直到不动点

    返回按最小边下标排序的组（组内升序），用于和 decompose 对照。
    """
    group = list(range(n.n_edges))
    changed = True
    while changed:
        changed = False
        for i in range(n.n_edges):
            ti, hi = n.edge(i)
            for j in range(i + 1, n.n_edges):
                if group[i] == group[j]:
                    continue
                tj, hj = n.edge(j)
                if ti == tj or hi == hj:
                    old, new = group[j], group[i]
                    group = [new if g == old else g for g in group]
                    changed = True
    members: Dict[int, List[int]] = {}
    for e, g in enumerate(group):
        members.setdefault(g, []).append(e)
    return sorted(tuple(edges) for edges in members.values())


def check_structural_properties(n: PhyloNetwork, decomposition: ZigzagDecomposition,
                                subtree: CoveringSubtree) -> StructuralReport:
    """
    在一棵最大覆盖子树上检查三条结构性质

    upper_le_lower: 每条链 |V_u ∩ V(T)| ≤ |V_ℓ ∩ V(T)|
    w_fence_misses_upper: 每个 W-fence 至少有一个上顶点不在 T 中
    missing_vertices_spread: 不在任何 M-fence 之下的 W-fence，其上方有一条非 M-fence 的链缺失上顶点
    """
    covered = {n.index_of(v) for v in subtree.covered}
    trails = decomposition.trails

    upper_le_lower = [
        i for i, t in enumerate(trails)
        if len(t.upper & covered) > len(t.lower & covered)
    ]

    w_indices = decomposition.indices_of(TrailKind.W_FENCE)
    misses_upper = [i for i in w_indices if trails[i].upper <= covered]

    spread: List[int] = []
    for j in w_indices:
        above_j = {int(decomposition.lower_trail[v]) for v in trails[j].upper} - {NO_TRAIL, j}
        if any(trails[i].kind is TrailKind.M_FENCE for i in above_j):
            continue
        if not any(trails[i].upper - covered for i in above_j):
            spread.append(j)

    return StructuralReport(checks=[
        PropertyCheck(name="upper_le_lower", ok=not upper_le_lower, failing_trails=upper_le_lower),
        PropertyCheck(name="w_fence_misses_upper", ok=not misses_upper, failing_trails=misses_upper),
        PropertyCheck(name="missing_vertices_spread", ok=not spread, failing_trails=spread),
    ])
