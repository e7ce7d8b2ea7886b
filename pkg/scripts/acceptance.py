"""
验收语料运行工具

    python scripts/acceptance.py                  # 完整语料（10^4 个网络，其中 10^3 个对照精确搜索）
    python scripts/acceptance.py --samples 500 --oracle-samples 100
    python scripts/acceptance.py --bench          # 同时运行线性时间基准
"""
import argparse
import logging
import sys
from pathlib import Path

# 添加项目根目录到路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from agents import BenchAgent, run_corpus
from agents.bench_agent import to_frame
from config import CORPUS_CONFIG
from report_generator import ReportGenerator


def main() -> int:
    parser = argparse.ArgumentParser(description="在随机网络语料上运行全部验收检查")
    parser.add_argument("--samples", type=int, default=CORPUS_CONFIG["samples"])
    parser.add_argument("--oracle-samples", type=int, default=CORPUS_CONFIG["oracle_samples"])
    parser.add_argument("--max-edges", type=int, default=CORPUS_CONFIG["max_edges"])
    parser.add_argument("--seed", type=int, default=CORPUS_CONFIG["seed"])
    parser.add_argument("--bench", action="store_true", help="同时运行线性时间基准")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    generator = ReportGenerator()

    print("=" * 80)
    print("验收语料")
    print("=" * 80)
    report = run_corpus(args.samples, args.seed, args.max_edges, args.oracle_samples, progress_bar=True)
    print(generator.corpus_report(report))
    ok = report.ok

    if args.bench:
        bench = BenchAgent(progress_bar=True).process()
        print(generator.bench_report(bench, to_frame(bench.rows).to_string(index=False)))
        ok = ok and bench.flat_ok and bench.largest_within_limit

    print("✅ 全部通过" if ok else "❌ 存在失败项")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
