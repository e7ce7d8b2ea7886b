import io
import json
import logging

import pytest

from cli import EXIT_BUDGET, EXIT_INAPPLICABLE, EXIT_INVALID, EXIT_OK, run
from config import FIXTURES_DIR
from utils.phn_format import parse_network, read_uncovered


@pytest.fixture(autouse=True)
def restore_root_logging():
    # run() 会用 basicConfig(force=True) 重设根 logger
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run_json(capsys, argv):
    code = run(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_validate_fixture(capsys):
    code, report = run_json(capsys, ["validate", "FIX-A"])
    assert code == EXIT_OK
    assert report == {"ok": True, "violations": []}


def test_validate_reports_cycle(tmp_path, capsys):
    path = tmp_path / "cycle.phn"
    path.write_text((FIXTURES_DIR / "fix_a.phn").read_text(encoding="utf-8") + "edge r ρ\n", encoding="utf-8")
    code = run(["validate", str(path)])
    assert code == EXIT_INVALID
    assert "[cycle]" in capsys.readouterr().out


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.phn"
    path.write_text("edge ρ\n", encoding="utf-8")
    assert run(["decompose", str(path)]) == EXIT_INVALID
    assert "line 1" in capsys.readouterr().err


def test_missing_file(capsys):
    assert run(["stats", "does/not/exist.phn"]) == EXIT_INVALID


def test_unknown_command():
    assert run(["frobnicate"]) == EXIT_INVALID


def test_decompose_json_and_dot(tmp_path, capsys):
    dot = tmp_path / "fix_a.dot"
    code, stats = run_json(capsys, ["decompose", "FIX-A", "--dot", str(dot)])
    assert code == EXIT_OK
    assert stats["counts"] == {"crown": 0, "m_fence": 1, "n_fence": 1, "w_fence": 1}
    assert stats["delta_star"] == 1
    assert stats["identity_ok"] is True
    assert [t["kind"] for t in stats["trails"]] == ["m_fence", "w_fence", "n_fence"]
    assert dot.read_text(encoding="utf-8").startswith("digraph")


def test_stats_omits_trails(capsys):
    code, stats = run_json(capsys, ["stats", "-i", "FIX-C"])
    assert code == EXIT_OK
    assert stats["trails"] is None
    assert stats["tree_based"] is True


def test_reads_stdin(monkeypatch, capsys):
    text = (FIXTURES_DIR / "fix_tree.phn").read_text(encoding="utf-8")
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    code, stats = run_json(capsys, ["stats", "-"])
    assert code == EXIT_OK
    assert stats["n_edges"] == 4


def test_eta_fast(capsys):
    code, report = run_json(capsys, ["eta", "FIX-A"])
    assert code == EXIT_OK
    assert report["method"] == "fast"
    assert report["eta"] == 1
    assert report["saturated"] is True
    assert report["uncovered"] == ["a"]
    assert report["matching"] == [{"m_trail": 0, "w_trail": 1, "vertex": "a"}]


def test_eta_fast_inapplicable(capsys):
    assert run(["eta", "FIX-B"]) == EXIT_INAPPLICABLE
    assert "--oracle" in capsys.readouterr().err


def test_eta_oracle(capsys):
    code, report = run_json(capsys, ["eta", "FIX-B", "--oracle"])
    assert code == EXIT_OK
    assert report["method"] == "oracle"
    assert report["eta"] == 3
    assert report["uncovered"] == ["a1", "a2", "u"]


def test_eta_oracle_budget(capsys):
    code, report = run_json(capsys, ["eta", "FIX-B", "--oracle", "--budget", "5"])
    assert code == EXIT_BUDGET
    assert report["eta"] is None
    assert report["budget_exceeded"] is True
    assert report["lower_bound"] == 2


@pytest.mark.parametrize("name", ["FIX-A", "FIX-B", "FIX-C", "FIX-CASE4"])
def test_eta_check_agrees(capsys, name):
    code, report = run_json(capsys, ["eta", name, "--check", "--threads", "2"])
    assert code == EXIT_OK
    assert report["agree"] is True


def test_mcst_writes_subtree(tmp_path):
    out = tmp_path / "tree.phn"
    assert run(["mcst", "FIX-A", "-o", str(out)]) == EXIT_OK
    text = out.read_text(encoding="utf-8")
    assert read_uncovered(text) == ["a"]
    assert parse_network(text).n_edges == 3


def test_mcst_writes_dot(tmp_path):
    dot = tmp_path / "tree.dot"
    assert run(["mcst", "FIX-A", "-o", str(tmp_path / "tree.phn"), "--dot", str(dot)]) == EXIT_OK
    text = dot.read_text(encoding="utf-8")
    assert text.count("penwidth=2.5") == 3
    assert '"a" [style=filled fillcolor="#dddddd"];' in text


def test_mcst_needs_oracle_for_fix_b(capsys):
    assert run(["mcst", "FIX-B"]) == EXIT_INAPPLICABLE
    code, subtree = run_json(capsys, ["mcst", "FIX-B", "--oracle"])
    assert code == EXIT_OK
    assert subtree["uncovered"] == ["a1", "a2", "u"]


def test_gen_is_deterministic(capsys):
    argv = ["gen", "--leaves", "5", "--reticulations", "3", "--p11", "0.3", "--p22", "0.2", "--seed", "7"]
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert len(parse_network(first).leaves) == 5


def test_gen_motifs(capsys):
    assert run(["gen", "--leaves", "4", "--motifs", "2", "--seed", "3"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "motifs=2" in text
    assert len(parse_network(text).leaves) == 4
    assert run(["gen", "--leaves", "1", "--motifs", "1"]) == EXIT_INVALID


def test_gen_json_and_bad_params(capsys):
    code, report = run_json(capsys, ["gen", "--leaves", "3", "--seed", "1"])
    assert code == EXIT_OK
    assert report["params"]["n_leaves"] == 3
    assert parse_network(report["phn"]).n_edges == report["n_edges"]
    assert run(["gen", "--leaves", "0"]) == EXIT_INVALID


def test_bench_small(capsys):
    code, report = run_json(capsys, ["bench", "--sizes", "200", "400"])
    assert code == EXIT_OK
    assert len(report["rows"]) == 2
    assert all(row["n_edges"] > 0 for row in report["rows"])
    assert run(["bench", "--sizes", "2"]) == EXIT_INVALID
