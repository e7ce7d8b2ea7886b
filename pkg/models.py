"""
统一数据模型定义

所有对外输出（JSON 报告、CLI 结果）都使用这里的 pydantic 模型；
网络、链分解等热点结构见 core/ 下的不可变类。
"""
from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator


class TrailKind(str, Enum):
    """极大 zig-zag 链的四种类型"""
    CROWN = "crown"
    M_FENCE = "m_fence"
    N_FENCE = "n_fence"
    W_FENCE = "w_fence"


# ==========================================
# 网络校验
# ==========================================

class Violation(BaseModel):
    """一条违反的规则"""
    rule: str = Field(description="规则ID，如 cycle / multiple-roots")
    witness: str = Field(description="违规的顶点或边（外部ID）")
    message: str = Field(description="可读说明")


class ValidationReport(BaseModel):
    """网络（或覆盖子树）的校验结果，ok 当且仅当没有违规"""
    ok: bool = Field(description="是否通过")
    violations: List[Violation] = Field(default_factory=list, description="全部违规项")

    @model_validator(mode="after")
    def _ok_matches_violations(self):
        if self.ok != (not self.violations):
            raise ValueError("ok must be true iff violations is empty")
        return self

    @classmethod
    def from_violations(cls, violations: List[Violation]) -> "ValidationReport":
        return cls(ok=not violations, violations=list(violations))

    def rules(self) -> List[str]:
        return [v.rule for v in self.violations]

    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None


# ==========================================
# 链分解统计
# ==========================================

class TrailCounts(BaseModel):
    """各类型极大链的数量"""
    crown: int = 0
    m_fence: int = 0
    n_fence: int = 0
    w_fence: int = 0

    def as_tuple(self) -> Tuple[int, int, int, int]:
        """(n_crown, n_m, n_n, n_w)"""
        return (self.crown, self.m_fence, self.n_fence, self.w_fence)


class TrailRecord(BaseModel):
    """单条链的 JSON 表示"""
    index: int
    kind: TrailKind
    edges: List[Tuple[str, str]] = Field(description="规范顺序的边序列")
    upper: List[str] = Field(description="上顶点（边尾）")
    lower: List[str] = Field(description="下顶点（边头）")


class DegreeProfile(BaseModel):
    """按 (入度, 出度) 分类的顶点数"""
    root: int = 0
    leaf: int = 0
    tree: int = 0  # (1,2)
    reticulation: int = 0  # (2,1)
    pass_through: int = 0  # (1,1)
    hub: int = 0  # (2,2)


class StatsReport(BaseModel):
    """decompose / stats 子命令的输出"""
    n_vertices: int
    n_edges: int
    n_leaves: int
    is_binary: bool
    degree_profile: DegreeProfile
    counts: TrailCounts
    delta_star: int
    tree_based: bool
    identity_ok: bool = Field(description="n_m - n_w == |X| - 1")
    trails: Optional[List[TrailRecord]] = None


# ==========================================
# M-W 匹配与 η*
# ==========================================

class MWPair(BaseModel):
    """匹配中的一对 (M-fence, W-fence) 及选定的消解顶点"""
    m_trail: int
    w_trail: int
    vertex: str


class MWMatching(BaseModel):
    """M-W 匹配：M 两两不同、W 两两不同"""
    pairs: List[MWPair] = Field(default_factory=list)
    n_w: int = Field(ge=0, description="网络中 W-fence 的总数")
    saturated: bool

    @model_validator(mode="after")
    def _check_matching(self):
        m_ids = [p.m_trail for p in self.pairs]
        w_ids = [p.w_trail for p in self.pairs]
        if len(set(m_ids)) != len(m_ids) or len(set(w_ids)) != len(w_ids):
            raise ValueError("M-W matching must use pairwise distinct fences")
        if self.saturated != (len(self.pairs) == self.n_w):
            raise ValueError("saturated must be true iff |pairs| == n_w")
        return self

    @property
    def size(self) -> int:
        return len(self.pairs)


class FastResult(BaseModel):
    """快速路径结果：Applicable(value, matching) 或 Inapplicable(max_matching)"""
    applicable: bool
    value: Optional[int] = Field(default=None, description="applicable 时等于 η*(N) = n_w")
    lower_bound: int = Field(description="η* 的下界 n_w；不可用时 η* 严格大于它")
    matching: MWMatching


class CoveringSubtree(BaseModel):
    """与宿主网络共享根和叶集的子树"""
    network_ref: str = Field(description="宿主网络指纹")
    tree_edges: List[Tuple[str, str]]
    covered: List[str]
    uncovered: List[str]

    @property
    def eta(self) -> int:
        return len(self.uncovered)


class OracleResult(BaseModel):
    """穷举搜索结果"""
    eta: int = Field(description="η*；超出预算时为已证明的下界")
    witness: Optional[CoveringSubtree] = None
    explored: int = Field(description="检查过的候选集合数")
    budget_exceeded: bool = False


class SearchTraceEntry(BaseModel):
    """穷举搜索中每一层 k 的记录"""
    k: int
    tried: int
    feasible: bool
    witness: Optional[List[str]] = None


# ==========================================
# 随机生成
# ==========================================

class GenParams(BaseModel):
    """随机网络生成参数"""
    n_leaves: int = Field(ge=1)
    n_reticulations: int = Field(default=0, ge=0)
    p_degree11: float = Field(default=0.0, ge=0.0, le=1.0, description="插入 (1,1) 顶点的概率")
    p_degree22: float = Field(default=0.0, ge=0.0, le=1.0, description="放置并收缩成 (2,2) 顶点的概率")
    n_motifs: int = Field(default=0, ge=0, description="放置的小结构个数（crown 或四种共享顶点情形）")
    seed: int = Field(default=0, ge=0, lt=2 ** 64)


# ==========================================
# 报告
# ==========================================

class EtaReport(BaseModel):
    """eta / mcst 子命令的 JSON 报告"""
    method: Literal["fast", "oracle"]
    eta: Optional[int] = Field(description="η*(N)；快速路径不可用或预算不足时为 None")
    delta_star: int
    saturated: bool
    matching: List[MWPair] = Field(default_factory=list)
    uncovered: List[str] = Field(default_factory=list)
    lower_bound: int = 0
    explored: Optional[int] = None
    budget_exceeded: bool = False


class PropertyCheck(BaseModel):
    """最大覆盖子树的一条结构性质"""
    name: str
    ok: bool
    failing_trails: List[int] = Field(default_factory=list)


class StructuralReport(BaseModel):
    checks: List[PropertyCheck] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


class CheckReport(BaseModel):
    """eta --check：快速路径与精确搜索对比"""
    fast: EtaReport
    oracle: EtaReport
    agree: bool
    structural: Optional[StructuralReport] = None


class BenchRow(BaseModel):
    n_edges: int
    n_vertices: int
    n_w: int
    decompose_s: float
    eta_fast_s: float
    total_s: float
    per_edge_us: float


class BenchReport(BaseModel):
    rows: List[BenchRow] = Field(default_factory=list)
    slope_s_per_edge: float
    intercept_s: float
    per_edge_ratio: float = Field(description="每边耗时 最大/最小")
    flat_ok: bool
    largest_within_limit: bool


class CorpusReport(BaseModel):
    """验收语料的统计"""
    samples: int
    oracle_samples: int
    failures: Dict[str, int] = Field(default_factory=dict)
    coverage: Dict[str, int] = Field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


class GenReport(BaseModel):
    """gen --json：生成参数 + `.phn` 文本"""
    params: GenParams
    n_vertices: int
    n_edges: int
    phn: str = Field(description="生成网络的 `.phn` 文本")
