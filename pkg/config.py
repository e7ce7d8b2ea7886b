"""
系统配置文件
"""
from pathlib import Path

# 项目路径
PROJECT_ROOT = Path(__file__).parent
FIXTURES_DIR = PROJECT_ROOT / "fixtures"

# 随仓库发布的样例网络（符号名 -> 文件）
FIXTURE_NAMES = {
    "FIX-TREE": "fix_tree.phn",
    "FIX-A": "fix_a.phn",
    "FIX-B": "fix_b.phn",
    "FIX-C": "fix_c.phn",
    # 消解的四种情形，共享顶点度数分别为 (1,2) (2,1) (1,1) (2,2)
    "FIX-CASE1": "fix_case1.phn",
    "FIX-CASE2": "fix_case2.phn",
    "FIX-CASE3": "fix_case3.phn",
    "FIX-CASE4": "fix_case4.phn",
}

# 精确搜索（oracle）配置
ORACLE_CONFIG = {
    "budget": None,  # 最多检查的候选集合数，None 表示不限
    "max_reticulations": 12,  # in_oracle_scope 的规模上限
    "max_vertices": 40,
    "threads": 1,  # >1 时并行检查同一层的候选集合
    "chunk_size": 256,  # 并行时每个任务包含的候选集合数
}

# 随机网络生成配置
GEN_CONFIG = {
    "n_leaves": 5,
    "n_reticulations": 2,
    "p_degree11": 0.0,
    "p_degree22": 0.0,
    "n_motifs": 0,
    "seed": 0,
    "max_retries": 200,  # 每次添加网状边的最大重试次数
}

# 线性时间基准测试配置
BENCH_CONFIG = {
    "sizes": [10_000, 100_000, 1_000_000],
    "repeats": 1,
    "seed": 20240601,
    "flat_ratio": 2.0,  # 每条边耗时的最大/最小比值上限
    "time_limit_s": 10.0,  # 最大规模的耗时上限
}

# 验收语料配置
CORPUS_CONFIG = {
    "samples": 10_000,
    "oracle_samples": 1_000,
    "max_edges": 500,
    "naive_max_edges": 20,
    "resolve_max_edges": 150,  # 不超过此边数的网络在每个共享顶点处试消解
    "max_motifs": 3,
    "seed": 7,
}

# DOT 导出：按链类型着色
DOT_CONFIG = {
    "colors": {
        "crown": "#9467bd",
        "m_fence": "#1f77b4",
        "n_fence": "#2ca02c",
        "w_fence": "#d62728",
    },
    "default_color": "#333333",
    "uncovered_fill": "#dddddd",
}
