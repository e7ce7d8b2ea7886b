import logging
from collections import Counter

import pytest

from agents import BenchAgent, CorpusAgent, EtaAgent, run_corpus
from agents.bench_agent import to_frame
from agents.corpus_agent import FAILURE_KEYS, reticulation_count
from config import ORACLE_CONFIG
from core.zigzag import decompose
from models import CheckReport, EtaReport
from report_generator import ReportGenerator
from tests.conftest import load_fixture


def test_eta_agent_modes(fix_a, fix_b):
    agent = EtaAgent()
    report = agent.process(fix_a)
    assert isinstance(report, EtaReport)
    assert report.eta == 1

    report = agent.process(fix_b, mode="oracle")
    assert report.eta == 3
    assert report.explored > 0

    check = agent.process(fix_b, mode="check")
    assert isinstance(check, CheckReport)
    assert check.agree
    assert check.fast.eta is None
    assert check.structural.ok


def test_eta_agent_rejects_bad_input(fix_a):
    agent = EtaAgent()
    with pytest.raises(TypeError):
        agent.process("edge ρ 1")
    with pytest.raises(ValueError):
        agent.process(fix_a, mode="fastest")


def test_eta_agent_budget_warns(fix_b, caplog):
    agent = EtaAgent({"budget": 5})
    with caplog.at_level(logging.WARNING, logger="EtaAgent"):
        report, result = agent.run_oracle(fix_b)
    assert result.budget_exceeded
    assert report.eta is None
    assert "[EtaAgent]" in caplog.text


def test_mcst_with_oracle(fix_b):
    subtree, result = EtaAgent().mcst(fix_b, use_oracle=True)
    assert subtree.uncovered == ["a1", "a2", "u"]
    assert result.eta == 3


def test_bench_agent():
    report = BenchAgent({"repeats": 1}).process([100, 300])
    assert [row.n_edges for row in report.rows] == sorted(row.n_edges for row in report.rows)
    assert report.per_edge_ratio >= 1.0
    table = to_frame(report.rows)
    assert list(table["n_edges"]) == [row.n_edges for row in report.rows]
    assert "Linear-time benchmark" in ReportGenerator().bench_report(report, table.to_string())


def test_bench_agent_rejects_tiny_sizes():
    with pytest.raises(ValueError):
        BenchAgent().process([3])


def test_reticulation_count(fix_b, fix_tree):
    assert reticulation_count(fix_b) == 2
    assert reticulation_count(fix_tree) == 0


def test_small_corpus_passes():
    report = run_corpus(samples=60, seed=3, max_edges=120, oracle_samples=30)
    assert set(FAILURE_KEYS) <= set(report.failures)
    assert report.ok, report.failures
    assert report.oracle_samples > 0
    assert "✅" in ReportGenerator().corpus_report(report)


def test_corpus_agent_config_override():
    agent = CorpusAgent({"samples": 5})
    report = agent.process({"oracle_samples": 0, "max_edges": 60})
    assert report.samples == 5
    assert report.oracle_samples == 0


def test_bench_per_edge_time_is_flat():
    report = BenchAgent({"repeats": 3}).process([20_000, 60_000, 200_000])
    assert report.flat_ok, report.per_edge_ratio
    assert report.largest_within_limit


def test_corpus_covers_every_trail_kind_and_case():
    report = run_corpus(samples=200, seed=11, max_edges=150, oracle_samples=0)
    assert report.ok, report.failures
    for key in ("crown", "m_fence", "n_fence", "w_fence", "(1,2)", "(2,1)", "(1,1)", "(2,2)"):
        assert report.coverage.get(key, 0) > 0, (key, report.coverage)


def test_check_resolution_counts_cases():
    agent = CorpusAgent()
    for name, case in (("FIX-CASE1", "(1,2)"), ("FIX-CASE2", "(2,1)"),
                       ("FIX-CASE3", "(1,1)"), ("FIX-CASE4", "(2,2)")):
        n = load_fixture(name)
        failures, coverage = Counter(), Counter()
        agent.check_resolution(n, decompose(n), failures, coverage)
        assert coverage[case] >= 1, name
        assert failures["resolution"] == 0


def test_oracle_outside_scope_warns(fix_b, caplog, monkeypatch):
    monkeypatch.setitem(ORACLE_CONFIG, "max_vertices", 5)
    with caplog.at_level(logging.WARNING, logger="EtaAgent"):
        report, _ = EtaAgent().run_oracle(fix_b)
    assert report.eta == 3
    assert "⚠️" in caplog.text
