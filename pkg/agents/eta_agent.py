"""
Eta Agent - η*(N) 计算流程
快速路径（M-W 匹配 + 消解）/ 精确搜索 / 两者对比
"""
from typing import Any, Dict, Optional, Tuple

from .base import BaseAgent
from config import ORACLE_CONFIG
from core.mw import build_mcst_via_resolution, eta_fast
from core.network import PhyloNetwork
from core.oracle import check_structural_properties, eta_exact, in_oracle_scope
from core.zigzag import ZigzagDecomposition, decompose
from models import CheckReport, CoveringSubtree, EtaReport, FastResult, OracleResult


class EtaAgent(BaseAgent):
    """η* 计算Agent：mode 为 fast / oracle / check"""

    MODES = ("fast", "oracle", "check")

    def __init__(self, config: Optional[Dict[str, Any]] = None, progress_bar: bool = False):
        merged = dict(ORACLE_CONFIG)
        merged.update(config or {})
        super().__init__("EtaAgent", merged)
        self.progress_bar = progress_bar

    def process(self, input_data: Any, mode: str = "fast"):
        """
        Args:
            input_data: PhyloNetwork
            mode: fast 返回 EtaReport；oracle 返回 EtaReport；check 返回 CheckReport
        """
        if not self.validate_input(input_data):
            raise TypeError(f"EtaAgent expects a PhyloNetwork, got {type(input_data).__name__}")
        if mode not in self.MODES:
            raise ValueError(f"unknown mode {mode!r}, expected one of {self.MODES}")
        if mode == "fast":
            return self.run_fast(input_data)[0]
        if mode == "oracle":
            return self.run_oracle(input_data)[0]
        return self.check(input_data)

    # ---------- 快速路径 ----------

    def run_fast(self, n: PhyloNetwork,
                 decomposition: Optional[ZigzagDecomposition] = None) -> Tuple[EtaReport, FastResult]:
        d = decomposition if decomposition is not None else decompose(n)
        result = eta_fast(n, d)
        uncovered = []
        if result.applicable:
            uncovered = build_mcst_via_resolution(n, d).uncovered
            self.log(f"✅ 快速路径可用: η* = {result.value}", "debug")
        else:
            self.log(f"⚠️ 快速路径不可用: 最大匹配 {result.matching.size}/{result.matching.n_w}", "debug")
        report = EtaReport(
            method="fast",
            eta=result.value,
            delta_star=d.counts.w_fence,
            saturated=result.matching.saturated,
            matching=result.matching.pairs,
            uncovered=uncovered,
            lower_bound=result.lower_bound,
        )
        return report, result

    # ---------- 精确搜索 ----------

    def run_oracle(self, n: PhyloNetwork,
                   decomposition: Optional[ZigzagDecomposition] = None) -> Tuple[EtaReport, OracleResult]:
        d = decomposition if decomposition is not None else decompose(n)
        fast = eta_fast(n, d)
        if self.config.get("budget") is None and not in_oracle_scope(n):
            self.log(f"⚠️ 网络超出精确搜索的建议规模: |V|={n.n_vertices}，可能耗时很长", "warning")
        result = eta_exact(
            n,
            budget=self.config.get("budget"),
            threads=self.config.get("threads"),
            progress_bar=self.progress_bar,
        )
        if result.budget_exceeded:
            self.log(f"⚠️ 搜索预算耗尽: 已检查 {result.explored} 个候选, η* ≥ {result.eta}", "warning")
        report = EtaReport(
            method="oracle",
            eta=None if result.budget_exceeded else result.eta,
            delta_star=d.counts.w_fence,
            saturated=fast.matching.saturated,
            matching=fast.matching.pairs,
            uncovered=result.witness.uncovered if result.witness is not None else [],
            lower_bound=max(result.eta, fast.lower_bound) if result.budget_exceeded else result.eta,
            explored=result.explored,
            budget_exceeded=result.budget_exceeded,
        )
        return report, result

    def mcst(self, n: PhyloNetwork, use_oracle: bool = False) -> Tuple[CoveringSubtree, Optional[OracleResult]]:
        """
        最大覆盖子树：默认走消解构造；use_oracle 时取精确搜索的见证

        Raises:
            FastPathInapplicableError: 快速路径不可用且未指定 use_oracle
        """
        if not use_oracle:
            return build_mcst_via_resolution(n), None
        _, result = self.run_oracle(n)
        return result.witness, result

    # ---------- 对比 ----------

    def check(self, n: PhyloNetwork) -> CheckReport:
        """快速路径与精确搜索对比，并在见证上检查结构性质"""
        d = decompose(n)
        fast_report, fast = self.run_fast(n, d)
        oracle_report, oracle = self.run_oracle(n, d)

        if oracle.budget_exceeded:
            agree = False
        elif fast.applicable:
            agree = fast.value == oracle.eta and len(fast_report.uncovered) == oracle.eta
        else:
            agree = oracle.eta > fast.lower_bound

        structural = None
        if oracle.witness is not None:
            structural = check_structural_properties(n, d, oracle.witness)
        if not agree:
            self.log(f"❌ 快速路径与精确搜索不一致: fast={fast.value} oracle={oracle.eta}", "error")
        return CheckReport(fast=fast_report, oracle=oracle_report, agree=agree, structural=structural)
