"""
Corpus Agent - 在带种子的随机网络语料上逐条验收

每个网络都检查分解的划分性、极大性、计数恒等式和上下顶点数差；
规模在精确搜索范围内的网络再检查 η* 相关的全部结论。
"""
from collections import Counter
from typing import Any, Dict, Optional

import numpy as np
from tqdm import tqdm

from .base import BaseAgent
from config import CORPUS_CONFIG
from core.exceptions import GenerationError, PhyloError
from core.genkit import random_network
from core.mw import build_mcst_via_resolution, eta_fast, mw_pair_graph, resolution_case, resolve
from core.network import PhyloNetwork
from core.oracle import (
    check_structural_properties, eta_exact, in_oracle_scope, naive_decompose, reticulation_count,
)
from core.treebase import subdivision_tree, validate_covering_subtree
from core.zigzag import ZigzagDecomposition, check_count_identity, decompose, is_maximal
from models import CorpusReport, GenParams, TrailKind

# 每种链类型的 |V_ℓ| - |V_u|
LOWER_MINUS_UPPER = {
    TrailKind.M_FENCE: 1,
    TrailKind.CROWN: 0,
    TrailKind.N_FENCE: 0,
    TrailKind.W_FENCE: -1,
}

FAILURE_KEYS = (
    "generation", "partition", "maximality", "naive", "lower_minus_upper", "identity",
    "tree_based", "subdivision", "lower_bound", "equality", "constructive", "structural", "resolution",
)


class CorpusAgent(BaseAgent):
    """验收语料Agent"""

    def __init__(self, config: Optional[Dict[str, Any]] = None, progress_bar: bool = False):
        merged = dict(CORPUS_CONFIG)
        merged.update(config or {})
        super().__init__("CorpusAgent", merged)
        self.progress_bar = progress_bar

    def process(self, input_data: Any = None) -> CorpusReport:
        """
        Args:
            input_data: 可选的配置覆盖 dict（samples / seed / max_edges / oracle_samples）
        """
        if input_data:
            self.config.update(input_data)
        return self.run()

    # ---------- 参数采样 ----------

    def sample_params(self, rng: np.random.Generator, small: bool) -> GenParams:
        if small:
            n_leaves = int(rng.integers(1, 6))
            n_reticulations = 0 if n_leaves == 1 else int(rng.integers(0, 4))
            n_motifs = 0 if n_leaves == 1 else int(rng.integers(0, 2))
        else:
            budget = max(4, int(self.config["max_edges"]) // 2)
            n_leaves = int(rng.integers(2, max(3, budget // 3)))
            room = max(0, (budget - 2 * n_leaves) // 3)
            n_reticulations = int(rng.integers(0, room + 1))
            n_motifs = int(rng.integers(0, int(self.config["max_motifs"]) + 1))
        return GenParams(
            n_leaves=n_leaves,
            n_reticulations=n_reticulations,
            p_degree11=float(rng.choice([0.0, 0.1, 0.3])),
            p_degree22=float(rng.choice([0.0, 0.3, 0.8])),
            n_motifs=n_motifs,
            seed=int(rng.integers(0, 2 ** 63)),
        )

    # ---------- 单个网络 ----------

    def check_decomposition(self, n: PhyloNetwork, d: ZigzagDecomposition, failures: Counter) -> None:
        seen = [0] * n.n_edges
        for t in d.trails:
            for e in t.edges:
                seen[e] += 1
        if any(c != 1 for c in seen) or any(d.edge_to_trail[e] != i for i, t in enumerate(d.trails) for e in t.edges):
            failures["partition"] += 1
        if not all(is_maximal(n, t.edges) for t in d.trails):
            failures["maximality"] += 1
        if any(len(t.lower) - len(t.upper) != LOWER_MINUS_UPPER[t.kind] for t in d.trails):
            failures["lower_minus_upper"] += 1
        if not check_count_identity(n, d):
            failures["identity"] += 1
        if n.n_edges <= int(self.config["naive_max_edges"]):
            if naive_decompose(n) != sorted(tuple(sorted(t.edges)) for t in d.trails):
                failures["naive"] += 1

    def check_eta(self, n: PhyloNetwork, d: ZigzagDecomposition, failures: Counter) -> None:
        n_w = d.counts.w_fence
        oracle = eta_exact(n)
        fast = eta_fast(n, d)

        if (oracle.eta == 0) != (n_w == 0):
            failures["tree_based"] += 1
        if n_w == 0:
            try:
                subdivision_tree(n, d)
            except PhyloError:
                failures["subdivision"] += 1
        if oracle.eta < n_w:
            failures["lower_bound"] += 1
        if (oracle.eta == n_w) != fast.matching.saturated:
            failures["equality"] += 1
        if fast.applicable and n_w:
            try:
                subtree = build_mcst_via_resolution(n, d)
                if subtree.eta != oracle.eta or not validate_covering_subtree(n, subtree.tree_edges).ok:
                    failures["constructive"] += 1
            except PhyloError:
                failures["constructive"] += 1
        if oracle.witness is not None and not check_structural_properties(n, d, oracle.witness).ok:
            failures["structural"] += 1

    def check_resolution(self, n: PhyloNetwork, d: ZigzagDecomposition, failures: Counter,
                         coverage: Counter) -> None:
        """在每个 M-W 对的每个共享顶点处消解一次，并按顶点度数计数"""
        for (m, w), witnesses in mw_pair_graph(d).adjacency.items():
            for v in witnesses:
                coverage[resolution_case(n, v)] += 1
                try:
                    resolve(n, (m, w), v, d)
                except PhyloError:
                    failures["resolution"] += 1

    # ---------- 语料 ----------

    def run(self) -> CorpusReport:
        rng = np.random.default_rng(int(self.config["seed"]))
        samples = int(self.config["samples"])
        oracle_quota = int(self.config["oracle_samples"])
        failures: Counter = Counter({key: 0 for key in FAILURE_KEYS})
        coverage: Counter = Counter()
        oracle_done = 0

        for i in tqdm(range(samples), desc="corpus", disable=not self.progress_bar):
            small = i < oracle_quota
            params = self.sample_params(rng, small)
            try:
                n = random_network(params)
            except GenerationError as exc:
                self.log(f"⚠️ 生成失败 {params.model_dump()}: {exc}", "warning")
                failures["generation"] += 1
                continue
            if n.n_edges > int(self.config["max_edges"]):
                continue
            d = decompose(n)
            for kind in TrailKind:
                if d.indices_of(kind):
                    coverage[kind.value] += 1
            self.check_decomposition(n, d, failures)

            if n.n_edges <= int(self.config["resolve_max_edges"]):
                self.check_resolution(n, d, failures, coverage)
            if small and in_oracle_scope(n):
                self.check_eta(n, d, failures)
                oracle_done += 1

        report = CorpusReport(
            samples=samples,
            oracle_samples=oracle_done,
            failures=dict(failures),
            coverage=dict(sorted(coverage.items())),
        )
        status = "✅" if report.ok else "❌"
        self.log(f"{status} corpus of {samples} networks, {oracle_done} checked against the oracle")
        return report


def run_corpus(samples: int, seed: int, max_edges: int, oracle_samples: int,
               progress_bar: bool = False) -> CorpusReport:
    """按给定规模运行验收语料"""
    agent = CorpusAgent(
        {"samples": samples, "seed": seed, "max_edges": max_edges, "oracle_samples": oracle_samples},
        progress_bar=progress_bar,
    )
    return agent.run()
