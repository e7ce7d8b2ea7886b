"""
编排Agent

主要Agent：
- EtaAgent: η* 计算（快速路径 / 精确搜索 / 对比检查）与最大覆盖子树
- BenchAgent: 分解 + 快速路径的线性时间基准
- CorpusAgent: 随机网络语料上的逐条验收
"""
from .eta_agent import EtaAgent
from .bench_agent import BenchAgent
from .corpus_agent import CorpusAgent, run_corpus

__all__ = [
    'EtaAgent',
    'BenchAgent',
    'CorpusAgent',
    'run_corpus',
]
