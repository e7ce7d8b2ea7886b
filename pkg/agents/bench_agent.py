"""
Bench Agent - 分解 + 快速路径的线性时间基准
"""
import time
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from .base import BaseAgent
from config import BENCH_CONFIG
from core.genkit import params_for_edges, random_network
from core.mw import eta_fast
from core.zigzag import decompose
from models import BenchReport, BenchRow


class BenchAgent(BaseAgent):
    """按规模生成随机网络，记录每条边的耗时并做最小二乘拟合"""

    def __init__(self, config: Optional[Dict[str, Any]] = None, progress_bar: bool = False):
        merged = dict(BENCH_CONFIG)
        merged.update(config or {})
        super().__init__("BenchAgent", merged)
        self.progress_bar = progress_bar

    def process(self, input_data: Any = None) -> BenchReport:
        """
        Args:
            input_data: 边数列表，None 时使用配置中的 sizes
        """
        sizes = list(input_data) if input_data is not None else list(self.config["sizes"])
        if not sizes or any(int(s) < 4 for s in sizes):
            raise ValueError("bench sizes must be a non-empty list of integers >= 4")
        return self.run(sizes)

    def _time_one(self, n) -> Dict[str, float]:
        best = None
        for _ in range(max(1, int(self.config["repeats"]))):
            t0 = time.perf_counter()
            d = decompose(n)
            t1 = time.perf_counter()
            eta_fast(n, d)
            t2 = time.perf_counter()
            sample = {"decompose_s": t1 - t0, "eta_fast_s": t2 - t1, "total_s": t2 - t0, "n_w": d.counts.w_fence}
            if best is None or sample["total_s"] < best["total_s"]:
                best = sample
        return best

    def run(self, sizes: Sequence[int]) -> BenchReport:
        rows: List[BenchRow] = []
        seed = int(self.config["seed"])
        for i, size in enumerate(tqdm(sizes, desc="bench", disable=not self.progress_bar)):
            n = random_network(params_for_edges(int(size), seed + i))
            timing = self._time_one(n)
            rows.append(BenchRow(
                n_edges=n.n_edges,
                n_vertices=n.n_vertices,
                n_w=int(timing["n_w"]),
                decompose_s=timing["decompose_s"],
                eta_fast_s=timing["eta_fast_s"],
                total_s=timing["total_s"],
                per_edge_us=timing["total_s"] / n.n_edges * 1e6,
            ))
            self.log(f"|E|={n.n_edges}: {timing['total_s']:.3f}s", "debug")

        df = to_frame(rows)
        if len(df) >= 2:
            slope, intercept = np.polyfit(df["n_edges"].to_numpy(float), df["total_s"].to_numpy(float), 1)
        else:
            slope, intercept = float(df["total_s"].iloc[0] / df["n_edges"].iloc[0]), 0.0
        per_edge = df["per_edge_us"]
        ratio = float(per_edge.max() / per_edge.min()) if per_edge.min() > 0 else float("inf")
        largest = df.loc[df["n_edges"].idxmax()]
        report = BenchReport(
            rows=rows,
            slope_s_per_edge=float(slope),
            intercept_s=float(intercept),
            per_edge_ratio=ratio,
            flat_ok=ratio <= float(self.config["flat_ratio"]),
            largest_within_limit=float(largest["total_s"]) <= float(self.config["time_limit_s"]),
        )
        self.log(f"per-edge ratio {ratio:.2f}, slope {slope * 1e6:.3f} us/edge")
        return report


def to_frame(rows: Sequence[BenchRow]) -> pd.DataFrame:
    """基准结果表，按边数排序"""
    df = pd.DataFrame([r.model_dump() for r in rows])
    return df.sort_values("n_edges").reset_index(drop=True)
