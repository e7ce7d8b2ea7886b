"""
共享测试夹具：随仓库发布的样例网络 + hypothesis 随机网络策略
"""
import pytest
from hypothesis import strategies as st

from config import FIXTURE_NAMES, FIXTURES_DIR
from core.genkit import random_network
from models import GenParams
from utils.phn_format import parse_network


def load_fixture(name: str):
    return parse_network((FIXTURES_DIR / FIXTURE_NAMES[name]).read_text(encoding="utf-8"))


@pytest.fixture
def fix_tree():
    return load_fixture("FIX-TREE")


@pytest.fixture
def fix_a():
    return load_fixture("FIX-A")


@pytest.fixture
def fix_b():
    return load_fixture("FIX-B")


@pytest.fixture
def fix_c():
    return load_fixture("FIX-C")


@st.composite
def gen_params(draw, max_leaves: int = 8, max_reticulations: int = 6,
               p11=(0.0, 0.1, 0.3), p22=(0.0, 0.3, 0.8), motifs=(0, 1, 2)):
    n_leaves = draw(st.integers(min_value=1, max_value=max_leaves))
    n_reticulations = 0 if n_leaves == 1 else draw(st.integers(min_value=0, max_value=max_reticulations))
    n_motifs = 0 if n_leaves == 1 else draw(st.sampled_from(motifs))
    return GenParams(
        n_leaves=n_leaves,
        n_reticulations=n_reticulations,
        p_degree11=draw(st.sampled_from(p11)),
        p_degree22=draw(st.sampled_from(p22)),
        n_motifs=n_motifs,
        seed=draw(st.integers(min_value=0, max_value=2 ** 32)),
    )


def networks(**kwargs):
    """随机合法网络"""
    return gen_params(**kwargs).map(random_network)


def small_networks():
    """精确搜索范围内的小网络"""
    return networks(max_leaves=5, max_reticulations=3, p11=(0.0, 0.15), p22=(0.0, 0.5, 1.0), motifs=(0,))
