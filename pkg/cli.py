"""
命令行入口

    python cli.py validate FIX-A
    python cli.py decompose net.phn --json --dot net.dot
    python cli.py eta FIX-B --oracle --json
    python cli.py mcst FIX-A -o tree.phn --dot tree.dot
    python cli.py gen --leaves 5 --reticulations 3 --seed 7
    python cli.py bench --sizes 10000 100000

退出码：0 成功，1 输入无效，2 快速路径不可用（未加 --oracle），3 搜索预算耗尽，
4 --check 结果不一致或内部断言失败。
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ValidationError

from agents import BenchAgent, EtaAgent
from agents.bench_agent import to_frame
from config import BENCH_CONFIG, FIXTURE_NAMES, FIXTURES_DIR, GEN_CONFIG, ORACLE_CONFIG
from core.exceptions import (
    FastPathInapplicableError, GenerationError, NetworkValidationError, PhnParseError, PhyloError,
    VertexSurgeryError,
)
from core.genkit import random_network
from core.network import validate_network
from core.zigzag import decompose, stats_record
from models import GenParams, GenReport
from report_generator import ReportGenerator
from utils.dot_export import export_dot
from utils.phn_format import parse_network, parse_raw, serialize_network, serialize_subtree

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INAPPLICABLE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


# ==========================================
# 输入输出
# ==========================================

def read_input(source: Optional[str]) -> str:
    """路径、`-`/缺省（标准输入）或样例名（如 FIX-A）"""
    if source is None or source == "-":
        return sys.stdin.read()
    if source in FIXTURE_NAMES:
        return (FIXTURES_DIR / FIXTURE_NAMES[source]).read_text(encoding="utf-8")
    return Path(source).read_text(encoding="utf-8")


def write_output(text: str, path: Optional[str] = None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def emit(args: argparse.Namespace, model: BaseModel, text: str) -> None:
    if args.json:
        write_output(model.model_dump_json(indent=2) + "\n")
    else:
        write_output(text)


def _source(args: argparse.Namespace) -> Optional[str]:
    return args.input if args.input is not None else args.path


def _progress(args: argparse.Namespace) -> bool:
    return not args.json and sys.stderr.isatty()


# ==========================================
# 子命令
# ==========================================

def cmd_validate(args: argparse.Namespace) -> int:
    report = validate_network(parse_raw(read_input(_source(args))))
    emit(args, report, ReportGenerator().validation_report(report, _source(args) or "stdin"))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_decompose(args: argparse.Namespace, include_trails: bool = True) -> int:
    n = parse_network(read_input(_source(args)))
    d = decompose(n)
    stats = stats_record(n, d, include_trails=include_trails)
    if getattr(args, "dot", None):
        write_output(export_dot(n, decomposition=d), args.dot)
        logger.info("DOT written to %s", args.dot)
    emit(args, stats, ReportGenerator().stats_report(stats))
    return EXIT_OK if stats.identity_ok else EXIT_INTERNAL


def cmd_stats(args: argparse.Namespace) -> int:
    return cmd_decompose(args, include_trails=False)


def _eta_agent(args: argparse.Namespace) -> EtaAgent:
    config = {}
    if args.budget is not None:
        config["budget"] = args.budget
    if args.threads is not None:
        config["threads"] = args.threads
    return EtaAgent(config, progress_bar=_progress(args))


def cmd_eta(args: argparse.Namespace) -> int:
    n = parse_network(read_input(_source(args)))
    agent = _eta_agent(args)
    generator = ReportGenerator()

    if args.check:
        report = agent.check(n)
        emit(args, report, generator.check_report(report))
        if report.oracle.budget_exceeded:
            return EXIT_BUDGET
        structural_ok = report.structural is None or report.structural.ok
        return EXIT_OK if report.agree and structural_ok else EXIT_INTERNAL

    if args.oracle:
        report, _ = agent.run_oracle(n)
        emit(args, report, generator.eta_report(report))
        return EXIT_BUDGET if report.budget_exceeded else EXIT_OK

    report, _ = agent.run_fast(n)
    emit(args, report, generator.eta_report(report))
    if report.eta is None:
        print("fast path inapplicable (no W-saturated M-W matching); use --oracle", file=sys.stderr)
        return EXIT_INAPPLICABLE
    return EXIT_OK


def cmd_mcst(args: argparse.Namespace) -> int:
    n = parse_network(read_input(_source(args)))
    agent = _eta_agent(args)
    subtree, oracle = agent.mcst(n, use_oracle=args.oracle)
    if oracle is not None and oracle.budget_exceeded:
        print(f"oracle budget exhausted; η* ≥ {oracle.eta}", file=sys.stderr)
        return EXIT_BUDGET
    if args.json:
        write_output(subtree.model_dump_json(indent=2) + "\n", args.output)
    else:
        write_output(serialize_subtree(n, subtree), args.output)
    if args.dot:
        write_output(export_dot(n, decomposition=decompose(n), subtree=subtree), args.dot)
        logger.info("DOT written to %s", args.dot)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    params = GenParams(
        n_leaves=args.leaves,
        n_reticulations=args.reticulations,
        p_degree11=args.p11,
        p_degree22=args.p22,
        n_motifs=args.motifs,
        seed=args.seed,
    )
    n = random_network(params)
    header = (f"generated: leaves={params.n_leaves} reticulations={params.n_reticulations} "
              f"p11={params.p_degree11} p22={params.p_degree22} motifs={params.n_motifs} seed={params.seed}")
    text = serialize_network(n, header=header)
    if args.json:
        report = GenReport(params=params, n_vertices=n.n_vertices, n_edges=n.n_edges, phn=text)
        write_output(report.model_dump_json(indent=2) + "\n", args.output)
    else:
        write_output(text, args.output)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    config = {"repeats": args.repeats, "seed": args.seed}
    agent = BenchAgent(config, progress_bar=_progress(args))
    report = agent.process(args.sizes)
    table = to_frame(report.rows).to_string(index=False)
    emit(args, report, ReportGenerator().bench_report(report, table))
    return EXIT_OK


# ==========================================
# 参数解析
# ==========================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="输出 JSON")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="DEBUG 日志")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="只输出警告和错误")

    network_input = argparse.ArgumentParser(add_help=False)
    network_input.add_argument("path", nargs="?", default=None,
                               help="`.phn` 文件、`-`（标准输入）或样例名如 FIX-A")
    network_input.add_argument("--input", "-i", default=None, help="同 path")

    oracle_opts = argparse.ArgumentParser(add_help=False)
    oracle_opts.add_argument("--oracle", action="store_true", help="使用精确搜索")
    oracle_opts.add_argument("--budget", type=int, default=ORACLE_CONFIG["budget"],
                             help="精确搜索最多检查的候选集合数")
    oracle_opts.add_argument("--threads", type=int, default=None, help="精确搜索并行线程数")

    parser = argparse.ArgumentParser(prog="cli.py", description="zig-zag 分解与最大覆盖子树工具")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common, network_input], help="校验网络")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("decompose", parents=[common, network_input], help="极大 zig-zag 链分解")
    p.add_argument("--dot", default=None, help="按链类型着色的 DOT 输出路径")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("stats", parents=[common, network_input], help="计数统计（不列出链）")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("eta", parents=[common, network_input, oracle_opts], help="计算 η*(N)")
    p.add_argument("--check", action="store_true", help="同时运行快速路径和精确搜索并对比")
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("mcst", parents=[common, network_input, oracle_opts], help="最大覆盖子树")
    p.add_argument("--output", "-o", default=None, help="输出路径（缺省为标准输出）")
    p.add_argument("--dot", default=None, help="标出树边和未覆盖顶点的 DOT 输出路径")
    p.set_defaults(func=cmd_mcst)

    p = sub.add_parser("gen", parents=[common], help="生成随机网络")
    p.add_argument("--leaves", type=int, default=GEN_CONFIG["n_leaves"])
    p.add_argument("--reticulations", type=int, default=GEN_CONFIG["n_reticulations"])
    p.add_argument("--p11", type=float, default=GEN_CONFIG["p_degree11"])
    p.add_argument("--p22", type=float, default=GEN_CONFIG["p_degree22"])
    p.add_argument("--motifs", type=int, default=GEN_CONFIG["n_motifs"], help="放置的小结构个数")
    p.add_argument("--seed", type=int, default=GEN_CONFIG["seed"])
    p.add_argument("--output", "-o", default=None, help="输出路径（缺省为标准输出）")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common], help="线性时间基准")
    p.add_argument("--sizes", type=int, nargs="+", default=list(BENCH_CONFIG["sizes"]))
    p.add_argument("--repeats", type=int, default=BENCH_CONFIG["repeats"])
    p.add_argument("--seed", type=int, default=BENCH_CONFIG["seed"])
    p.set_defaults(func=cmd_bench)
    return parser


def configure_logging(args: argparse.Namespace) -> None:
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet or args.json:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse 用 2 表示用法错误，这里统一为无效输入
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    configure_logging(args)

    try:
        return args.func(args)
    except (PhnParseError, NetworkValidationError, VertexSurgeryError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FastPathInapplicableError as exc:
        print(f"{exc}; use --oracle", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except PhyloError as exc:
        logger.exception("internal failure")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
