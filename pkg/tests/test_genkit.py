import numpy as np
import pytest
from hypothesis import given, settings
from pydantic import ValidationError

from core.exceptions import GenerationError
from core.genkit import MOTIFS, ROOT_NAME, _Builder, params_for_edges, random_network
from core.mw import mw_pair_graph, resolution_case
from core.network import is_binary, validate_network
from core.zigzag import check_count_identity, decompose, is_tree_based
from models import GenParams, TrailKind
from tests.conftest import gen_params


def test_tree_without_reticulations_is_tree_based():
    n = random_network(GenParams(n_leaves=3, seed=11))
    assert n.n_edges == 4
    assert is_binary(n)
    assert is_tree_based(n)
    assert n.root_name == ROOT_NAME
    assert sorted(n.label_set) == ["1", "2", "3"]


def test_same_seed_same_network():
    params = GenParams(n_leaves=5, n_reticulations=3, p_degree11=0.3, p_degree22=0.2, seed=7)
    a = random_network(params)
    b = random_network(params)
    assert a == b
    assert a.canonical_edges() == b.canonical_edges()
    assert a.names == b.names


def test_binary_network_edge_count():
    n = random_network(GenParams(n_leaves=6, n_reticulations=4, seed=3))
    # 二叉网络：|E| = 2|X| - 2 + 3r
    assert n.n_edges == 2 * 6 - 2 + 3 * 4
    assert is_binary(n)


def test_single_leaf_cannot_take_reticulations():
    with pytest.raises(GenerationError):
        random_network(GenParams(n_leaves=1, n_reticulations=1, seed=0), max_retries=10)


def test_single_leaf_network():
    n = random_network(GenParams(n_leaves=1, seed=0))
    assert n.canonical_edges() == [(ROOT_NAME, "1")]


def test_pass_through_vertices_appear():
    n = random_network(GenParams(n_leaves=4, n_reticulations=1, p_degree11=1.0, seed=5))
    assert not is_binary(n)
    assert any(n.indeg(v) == 1 and n.outdeg(v) == 1 for v in range(n.n_vertices))


@pytest.mark.parametrize("field, value", [("p_degree11", 1.5), ("p_degree22", -0.1), ("n_leaves", 0)])
def test_params_are_checked(field, value):
    kwargs = {"n_leaves": 3, field: value}
    with pytest.raises(ValidationError):
        GenParams(**kwargs)


def test_params_for_edges():
    params = params_for_edges(1000, seed=1)
    assert params.n_leaves == 250
    assert params.n_reticulations == 166
    n = random_network(params)
    assert n.n_edges == 2 * 250 - 2 + 3 * 166


@settings(max_examples=100, deadline=None)
@given(gen_params())
def test_generated_networks_validate(params):
    n = random_network(params)
    assert validate_network(n.to_raw()).ok
    assert check_count_identity(n)
    assert len(n.leaves) == params.n_leaves


def planted(motif: str, seed: int):
    builder = _Builder(np.random.default_rng(seed))
    builder.grow_tree(4)
    builder.plant(motif, 100)
    return builder.build()


def shared_cases(n):
    adjacency = mw_pair_graph(decompose(n)).adjacency
    return {resolution_case(n, v) for witnesses in adjacency.values() for v in witnesses}


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize("motif", [m for m in MOTIFS if m != "crown"])
def test_motif_plants_shared_vertex_of_its_degree(motif, seed):
    n = planted(motif, seed)
    assert validate_network(n.to_raw()).ok
    assert motif in shared_cases(n)
    assert check_count_identity(n)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_crown_motif(seed):
    n = planted("crown", seed)
    d = decompose(n)
    assert d.counts.crown == 1
    crown = d.trails[d.indices_of(TrailKind.CROWN)[0]]
    assert len(crown) == 4
    assert len(crown.upper) == len(crown.lower) == 2


def test_hub_probability_one_plants_a_degree22_vertex():
    n = random_network(GenParams(n_leaves=3, p_degree22=1.0, seed=4))
    assert any(n.indeg(v) == 2 and n.outdeg(v) == 2 for v in range(n.n_vertices))
    assert "(2,2)" in shared_cases(n)


def test_single_leaf_cannot_take_motifs():
    with pytest.raises(GenerationError):
        random_network(GenParams(n_leaves=1, n_motifs=1, seed=0), max_retries=10)


def test_vertices_are_numbered_from_the_root():
    n = random_network(GenParams(n_leaves=6, n_reticulations=3, n_motifs=2, seed=9))
    assert n.names[0] == ROOT_NAME
    tails = list(n.tails)
    assert tails == sorted(tails)
    # BFS 顺序：每个非根顶点的首个父亲下标都小于它自己
    assert all(min(n.parents(v)) < v for v in range(1, n.n_vertices))
