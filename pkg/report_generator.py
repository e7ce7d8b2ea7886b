"""
报告生成模块 - 仅负责把报告模型渲染成人类可读的文本（CLI 默认输出）
"""
from typing import List, Optional

from models import (
    BenchReport, CheckReport, CorpusReport, EtaReport, StatsReport, StructuralReport,
    ValidationReport,
)


class ReportGenerator:
    """报告生成器 - 每个子命令一种文本格式"""

    def __init__(self):
        self.lines: List[str] = []

    def _reset(self) -> None:
        self.lines = []

    def _add(self, text: str = "") -> None:
        self.lines.append(text)

    def _heading(self, text: str) -> None:
        self._add(text)
        self._add("=" * max(20, len(text)))

    def _render(self) -> str:
        return "\n".join(self.lines) + "\n"

    # ---------- validate ----------

    def validation_report(self, report: ValidationReport, source: str = "") -> str:
        self._reset()
        if report.ok:
            self._add(f"✅ valid network{f' ({source})' if source else ''}")
            return self._render()
        self._add(f"❌ invalid network{f' ({source})' if source else ''}: {len(report.violations)} violation(s)")
        for v in report.violations:
            self._add(f"  - [{v.rule}] {v.witness}: {v.message}")
        return self._render()

    # ---------- decompose / stats ----------

    def stats_report(self, stats: StatsReport) -> str:
        self._reset()
        self._heading("Zig-zag decomposition")
        self._add(f"vertices: {stats.n_vertices}  edges: {stats.n_edges}  leaves: {stats.n_leaves}"
                  f"  binary: {'yes' if stats.is_binary else 'no'}")
        p = stats.degree_profile
        self._add(f"degree profile: root={p.root} leaf={p.leaf} tree={p.tree} "
                  f"reticulation={p.reticulation} (1,1)={p.pass_through} (2,2)={p.hub}")
        c = stats.counts
        self._add(f"trails: crown={c.crown} M={c.m_fence} N={c.n_fence} W={c.w_fence}")
        self._add(f"δ* = {stats.delta_star}  tree-based: {'✅ yes' if stats.tree_based else '⚠️ no'}")
        self._add(f"n_m - n_w = |X| - 1: {'✅' if stats.identity_ok else '❌'}")
        if stats.trails:
            self._add()
            for t in stats.trails:
                edges = " ".join(f"{a}->{b}" for a, b in t.edges)
                self._add(f"  #{t.index} {t.kind.value:<8} {edges}")
                self._add(f"      upper: {' '.join(t.upper)}  lower: {' '.join(t.lower)}")
        return self._render()

    # ---------- eta ----------

    def _eta_lines(self, report: EtaReport) -> None:
        self._add(f"method: {report.method}")
        if report.eta is not None:
            self._add(f"η* = {report.eta}")
        elif report.budget_exceeded:
            self._add(f"⚠️ budget exceeded after {report.explored} candidates; η* ≥ {report.lower_bound}")
        else:
            self._add(f"⚠️ no W-saturated M-W matching; η* > {report.lower_bound}")
        self._add(f"δ* = {report.delta_star}  saturated: {'yes' if report.saturated else 'no'}")
        if report.matching:
            pairs = ", ".join(f"(M#{p.m_trail}, W#{p.w_trail}) @ {p.vertex}" for p in report.matching)
            self._add(f"matching: {pairs}")
        if report.uncovered:
            self._add(f"uncovered: {' '.join(report.uncovered)}")
        if report.explored is not None and not report.budget_exceeded:
            self._add(f"explored: {report.explored}")

    def eta_report(self, report: EtaReport) -> str:
        self._reset()
        self._heading("η*(N)")
        self._eta_lines(report)
        if report.method == "fast" and report.eta is None:
            self._add("hint: rerun with --oracle for the exact value")
        return self._render()

    def check_report(self, report: CheckReport) -> str:
        self._reset()
        self._heading("η*(N): fast path vs exhaustive search")
        self._add("一、fast path")
        self._eta_lines(report.fast)
        self._add()
        self._add("二、oracle")
        self._eta_lines(report.oracle)
        self._add()
        self._add(f"agree: {'✅ yes' if report.agree else '❌ no'}")
        if report.structural is not None:
            self._structural_lines(report.structural)
        return self._render()

    def _structural_lines(self, report: StructuralReport) -> None:
        for check in report.checks:
            mark = "✅" if check.ok else "❌"
            failing = f" failing trails: {check.failing_trails}" if check.failing_trails else ""
            self._add(f"  {mark} {check.name}{failing}")

    # ---------- bench / corpus ----------

    def bench_report(self, report: BenchReport, table: Optional[str] = None) -> str:
        self._reset()
        self._heading("Linear-time benchmark")
        if table:
            self._add(table)
        self._add(f"slope: {report.slope_s_per_edge * 1e6:.3f} us/edge  intercept: {report.intercept_s:.4f} s")
        self._add(f"per-edge ratio: {report.per_edge_ratio:.2f}  {'✅ flat' if report.flat_ok else '⚠️ not flat'}")
        self._add(f"largest size within limit: {'✅ yes' if report.largest_within_limit else '⚠️ no'}")
        return self._render()

    def corpus_report(self, report: CorpusReport) -> str:
        self._reset()
        self._heading("Acceptance corpus")
        self._add(f"networks: {report.samples}  checked against oracle: {report.oracle_samples}")
        for key, count in report.failures.items():
            self._add(f"  {'✅' if count == 0 else '❌'} {key}: {count} failure(s)")
        if report.coverage:
            self._add("coverage: " + "  ".join(f"{k}={v}" for k, v in report.coverage.items()))
        return self._render()
