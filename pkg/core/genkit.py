"""
带种子的随机网络生成

先生成随机有根二叉树（Yule 过程），再反复在两条边上各插入一个新顶点并连边形成网状结构；
每个顶点维护一个浮点拓扑序 rank，只在 rank(u1) < rank(v2) 时连边，从而保证无环。
之后可以在若干条 rank 区间相交的边上放置小结构（crown，或共享顶点度数为
(1,2) (2,1) (1,1) (2,2) 的 M-W 对），最后按概率插入 (1,1) 顶点、把相邻的
(2,1)->(1,2) 顶点收缩成 (2,2) 顶点。

输出网络的顶点按从根出发的 BFS 顺序编号，边按尾顶点的顺序排列。
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from config import GEN_CONFIG
from models import GenParams
from core.exceptions import GenerationError
from core.network import PhyloNetwork

logger = logging.getLogger(__name__)

ROOT_NAME = "ρ"

# 可放置的小结构；除 crown 外都以共享顶点的度数命名
MOTIFS = ("crown", "(1,2)", "(2,1)", "(1,1)", "(2,2)")


class _Builder:
    """生成过程中的可变边表，顶点为整数，0 是根"""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.tails: List[int] = []
        self.heads: List[int] = []
        self.rank: List[float] = []
        self.removed_edges: set = set()
        self.merged: set = set()

    def new_vertex(self, rank: float) -> int:
        self.rank.append(rank)
        return len(self.rank) - 1

    def add_edge(self, tail: int, head: int) -> int:
        self.tails.append(tail)
        self.heads.append(head)
        return len(self.tails) - 1

    def subdivide(self, e: int, rank: float) -> int:
        """把边 (u,v) 替换为 (u,x),(x,v)，返回 x"""
        x = self.new_vertex(rank)
        v = self.heads[e]
        self.heads[e] = x
        self.add_edge(x, v)
        return x

    def split(self, e: int, ranks: Sequence[float]) -> List[int]:
        """沿边 e 依次插入 rank 递增的顶点"""
        made = []
        for rank in ranks:
            made.append(self.subdivide(e, rank))
            e = len(self.tails) - 1
        return made

    # ---------- 各阶段 ----------

    def grow_tree(self, n_leaves: int) -> None:
        root = self.new_vertex(0.0)
        if n_leaves == 1:
            self.add_edge(root, self.new_vertex(1.0))
            return
        leaves = []
        for _ in range(2):
            leaf = self.new_vertex(1.0)
            self.add_edge(root, leaf)
            leaves.append(leaf)
        for _ in range(n_leaves - 2):
            i = int(self.rng.integers(len(leaves)))
            parent = leaves[i]
            leaves[i] = leaves[-1]
            leaves.pop()
            for _ in range(2):
                child = self.new_vertex(self.rank[parent] + 1.0)
                self.add_edge(parent, child)
                leaves.append(child)

    def add_reticulation(self, max_retries: int) -> None:
        rank = self.rank
        for _ in range(max_retries):
            e1, e2 = (int(x) for x in self.rng.integers(len(self.tails), size=2))
            if e1 == e2:
                continue
            u1, v1 = self.tails[e1], self.heads[e1]
            u2, v2 = self.tails[e2], self.heads[e2]
            if not rank[u1] < rank[v2]:
                continue
            a, b = rank[u1], min(rank[v1], rank[v2])
            p1 = a + (b - a) / 3.0
            c = max(rank[u2], p1)
            p2 = c + (rank[v2] - c) / 2.0
            # 浮点精度耗尽时重新抽样
            if not (a < p1 < b and c < p2 < rank[v2]):
                continue
            x1 = self.subdivide(e1, p1)
            x2 = self.subdivide(e2, p2)
            self.add_edge(x1, x2)
            return
        raise GenerationError(f"could not place a reticulation edge after {max_retries} attempts")

    def pick_pair(self, max_retries: int) -> Tuple[int, int, List[float]]:
        """
        抽两条不同的边，使它们的 rank 区间有公共部分 (lo, hi)

        Returns:
            (e1, e2, 公共区间的 1/6 .. 5/6 分位点)
        """
        if len(self.tails) < 2:
            raise GenerationError(f"a motif needs two edges, the network has {len(self.tails)}")
        rank = np.asarray(self.rank)
        lo_all = rank[np.asarray(self.tails)]
        hi_all = rank[np.asarray(self.heads)]
        for _ in range(max_retries):
            e1 = int(self.rng.integers(len(self.tails)))
            overlap = (lo_all < hi_all[e1]) & (hi_all > lo_all[e1])
            overlap[e1] = False
            candidates = np.flatnonzero(overlap)
            if len(candidates) == 0:
                continue
            e2 = int(self.rng.choice(candidates))
            lo = max(lo_all[e1], lo_all[e2])
            hi = min(hi_all[e1], hi_all[e2])
            marks = [float(lo + (hi - lo) * i / 6.0) for i in range(1, 6)]
            # 浮点精度耗尽时重新抽样
            if lo < marks[0] and all(x < y for x, y in zip(marks, marks[1:])) and marks[-1] < hi:
                return e1, e2, marks
        raise GenerationError(f"could not find two overlapping edges after {max_retries} attempts")

    def plant(self, motif: str, max_retries: int) -> None:
        """
        在两条 rank 区间相交的边上放置一个小结构

        crown:  u1,u2 各有两个孩子 r1,r2
        (1,2):  v 是 M-fence {(s,w),(s,v)} 的端点，又在 W-fence {(w,r1),(v,r1),(v,r2),(b,r2)} 中间
        (2,1):  v 的两条入边在 M-fence {(p,y),(p,v),(q,v),(q,k)} 中，出边在 W-fence {(y,r),(v,r)} 中
        (1,1):  a 同时是 M-fence {(t,k),(t,a)} 和 W-fence {(a,r),(b,r)} 的端点
        (2,2):  h 的入边在 M-fence {(p,y),(p,h),(q,h),(q,z)} 中，出边在 W-fence {(y,r1),(h,r1),(h,r2),(z,r2)} 中
        """
        e1, e2, marks = self.pick_pair(max_retries)
        if motif == "crown":
            u1, r1 = self.split(e1, [marks[1], marks[3]])
            u2, r2 = self.split(e2, [marks[1], marks[3]])
            self.add_edge(u1, r2)
            self.add_edge(u2, r1)
        elif motif == "(1,2)":
            s, _, r1 = self.split(e1, [marks[0], marks[1], marks[3]])
            _, r2 = self.split(e2, [marks[1], marks[3]])
            v = self.new_vertex(marks[2])
            for tail, head in ((s, v), (v, r1), (v, r2)):
                self.add_edge(tail, head)
        elif motif == "(2,1)":
            p, _, r = self.split(e1, [marks[0], marks[1], marks[3]])
            q, _ = self.split(e2, [marks[0], marks[1]])
            v = self.new_vertex(marks[2])
            for tail, head in ((p, v), (q, v), (v, r)):
                self.add_edge(tail, head)
        elif motif == "(1,1)":
            t, _ = self.split(e1, [marks[0], marks[1]])
            _, r = self.split(e2, [marks[1], marks[3]])
            a = self.new_vertex(marks[2])
            self.add_edge(t, a)
            self.add_edge(a, r)
        elif motif == "(2,2)":
            p, _, r1 = self.split(e1, [marks[0], marks[1], marks[3]])
            q, _, r2 = self.split(e2, [marks[0], marks[1], marks[3]])
            h = self.new_vertex(marks[2])
            for tail, head in ((p, h), (q, h), (h, r1), (h, r2)):
                self.add_edge(tail, head)
        else:
            raise GenerationError(f"unknown motif {motif}")

    def add_pass_through(self, p: float) -> None:
        if p <= 0:
            return
        chosen = np.flatnonzero(self.rng.random(len(self.tails)) < p)
        for e in chosen.tolist():
            u, v = self.tails[e], self.heads[e]
            self.subdivide(e, (self.rank[u] + self.rank[v]) / 2.0)

    def contract_hubs(self, p: float) -> None:
        """把 (2,1) 顶点 x 与其唯一孩子 (1,2) 顶点 y 合并成 (2,2) 顶点"""
        if p <= 0:
            return
        n = len(self.rank)
        out_edges: List[List[int]] = [[] for _ in range(n)]
        in_deg = [0] * n
        for e, (t, h) in enumerate(zip(self.tails, self.heads)):
            out_edges[t].append(e)
            in_deg[h] += 1
        draws = self.rng.random(len(self.tails))
        for e in range(len(self.tails)):
            x, y = self.tails[e], self.heads[e]
            if x in self.merged or y in self.merged:
                continue
            if not (in_deg[x] == 2 and len(out_edges[x]) == 1 and in_deg[y] == 1 and len(out_edges[y]) == 2):
                continue
            if draws[e] >= p:
                continue
            for f in out_edges[y]:
                self.tails[f] = x
            out_edges[x] = list(out_edges[y])
            out_edges[y] = []
            self.removed_edges.add(e)
            # 合并后的顶点和被并入的顶点都不再参与收缩
            self.merged.add(x)
            self.merged.add(y)

    def build(self) -> PhyloNetwork:
        n = len(self.rank)
        children: List[List[int]] = [[] for _ in range(n)]
        for e, (t, h) in enumerate(zip(self.tails, self.heads)):
            if e not in self.removed_edges:
                children[t].append(h)

        # 从根 BFS 编号；被并入的顶点已没有边，不会被访问到
        order = [0]
        seen = [False] * n
        seen[0] = True
        for v in order:
            for c in children[v]:
                if not seen[c]:
                    seen[c] = True
                    order.append(c)

        index = {v: i for i, v in enumerate(order)}
        names: List[str] = []
        leaf_no = internal_no = 0
        for v in order:
            if v == 0:
                names.append(ROOT_NAME)
            elif children[v]:
                internal_no += 1
                names.append(f"v{internal_no}")
            else:
                leaf_no += 1
                names.append(str(leaf_no))
        tails: List[int] = []
        heads: List[int] = []
        for v in order:
            for c in children[v]:
                tails.append(index[v])
                heads.append(index[c])
        return PhyloNetwork.from_indexed(names, tails, heads, root=ROOT_NAME)


def random_network(params: GenParams, max_retries: Optional[int] = None) -> PhyloNetwork:
    """
    按参数生成一个合法网络，同一 seed 输出完全相同

    p_degree22 > 0 时先以该概率放置一个位于 M-fence 之下、W-fence 之上的 (2,2) 顶点，
    再以同一概率收缩相邻的 (2,1)->(1,2) 顶点对。

    Raises:
        GenerationError: 参数无法实现（例如单叶网络上加网状边）
    """
    retries = max_retries if max_retries is not None else GEN_CONFIG["max_retries"]
    rng = np.random.default_rng(params.seed)
    builder = _Builder(rng)
    builder.grow_tree(params.n_leaves)
    for _ in range(params.n_reticulations):
        builder.add_reticulation(retries)
    for _ in range(params.n_motifs):
        builder.plant(MOTIFS[int(rng.integers(len(MOTIFS)))], retries)
    # 单叶且无网状边时只有一条边，放不下
    if params.p_degree22 > 0 and len(builder.tails) >= 2 and rng.random() < params.p_degree22:
        builder.plant("(2,2)", retries)
    builder.add_pass_through(params.p_degree11)
    builder.contract_hubs(params.p_degree22)
    network = builder.build()
    logger.debug("generated %r from %s", network, params.model_dump())
    return network


def params_for_edges(n_edges: int, seed: int) -> GenParams:
    """约 n_edges 条边的二叉网络参数：2|X| + 3r ≈ |E|"""
    n_leaves = max(2, n_edges // 4)
    n_reticulations = max(0, (n_edges - 2 * n_leaves) // 3)
    return GenParams(n_leaves=n_leaves, n_reticulations=n_reticulations, seed=seed)
