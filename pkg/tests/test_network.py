import pytest
from hypothesis import given, settings

from core.exceptions import NetworkValidationError, VertexSurgeryError
from core.network import (
    PhyloNetwork, RawGraph, degree_profile, fingerprint, is_binary, is_tree, remove_vertex,
    validate_network, vertex_kind,
)
from tests.conftest import networks

FIX_A_EDGES = [("ρ", "a"), ("ρ", "b"), ("a", "r"), ("b", "r"), ("r", "1")]


def test_fixture_tree_shape(fix_tree):
    assert fix_tree.n_vertices == 5
    assert fix_tree.n_edges == 4
    assert fix_tree.root_name == "ρ"
    assert sorted(fix_tree.label_set) == ["1", "2", "3"]


def test_fixture_a_root_and_leaves(fix_a):
    assert fix_a.root_name == "ρ"
    assert fix_a.label_set == ["1"]


def test_all_fixtures_validate(fix_tree, fix_a, fix_b, fix_c):
    for n in (fix_tree, fix_a, fix_b, fix_c):
        assert validate_network(n.to_raw()).ok


def test_extra_edge_creates_cycle():
    report = validate_network(RawGraph(edges=tuple(FIX_A_EDGES + [("r", "ρ")])))
    assert not report.ok
    assert "cycle" in report.rules()


def test_missing_root_edge_gives_two_roots():
    edges = [e for e in FIX_A_EDGES if e != ("ρ", "a")]
    report = validate_network(RawGraph(edges=tuple(edges)))
    assert "multiple-roots" in report.rules()
    assert report.first().witness == "a ρ"


def test_self_loop_and_duplicate_edges_reported():
    report = validate_network(RawGraph(edges=(("ρ", "1"), ("ρ", "ρ"), ("ρ", "1"))))
    assert {"self-loop", "duplicate-edge"} <= set(report.rules())


def test_internal_indegree_three_rejected():
    edges = [("ρ", "a"), ("ρ", "b"), ("a", "c"), ("a", "d"), ("b", "d"), ("c", "d"), ("d", "1")]
    report = validate_network(RawGraph(edges=tuple(edges)))
    assert "indegree" in report.rules()
    assert any(v.witness == "d" for v in report.violations)


def test_leaf_with_two_parents_rejected():
    report = validate_network(RawGraph(edges=(("ρ", "a"), ("ρ", "1"), ("a", "1"))))
    assert "leaf-indegree" in report.rules()


def test_root_without_children_rejected():
    report = validate_network(RawGraph(edges=(), vertices=("ρ",)))
    assert report.rules() == ["root-outdegree"]


def test_declared_root_mismatch():
    report = validate_network(RawGraph(edges=tuple(FIX_A_EDGES), root="a"))
    assert "root-mismatch" in report.rules()


def test_disconnected_component_reported():
    edges = FIX_A_EDGES + [("x", "y"), ("y", "x2")]
    report = validate_network(RawGraph(edges=tuple(edges)))
    assert not report.ok


def test_duplicate_leaf_label():
    raw = RawGraph(edges=(("ρ", "p"), ("ρ", "q")), leaf_labels=(("p", "A"), ("q", "A")))
    assert "duplicate-label" in validate_network(raw).rules()


def test_from_edges_raises_with_report():
    with pytest.raises(NetworkValidationError) as exc_info:
        PhyloNetwork.from_edges(FIX_A_EDGES + [("r", "ρ")])
    assert "cycle" in exc_info.value.report.rules()


def test_is_binary(fix_tree, fix_a, fix_c):
    assert is_binary(fix_tree)
    assert not is_binary(fix_a)
    assert is_binary(fix_c)


def test_is_tree(fix_tree, fix_a):
    assert is_tree(fix_tree)
    assert not is_tree(fix_a)


def test_vertex_kinds(fix_a):
    assert vertex_kind(fix_a, fix_a.index_of("ρ")) == "root"
    assert vertex_kind(fix_a, fix_a.index_of("a")) == "pass_through"
    assert vertex_kind(fix_a, fix_a.index_of("r")) == "reticulation"
    assert vertex_kind(fix_a, fix_a.index_of("1")) == "leaf"
    profile = degree_profile(fix_a)
    assert (profile.root, profile.leaf, profile.pass_through, profile.reticulation) == (1, 1, 2, 1)


def test_remove_vertex(fix_a):
    raw = remove_vertex(fix_a, "a")
    assert len(raw.vertex_list()) == 4
    assert len(raw.edges) == 3
    assert ("ρ", "a") not in raw.edges
    assert validate_network(raw).ok


@pytest.mark.parametrize("vertex", ["ρ", "1", "missing"])
def test_remove_vertex_refuses(fix_a, vertex):
    with pytest.raises(VertexSurgeryError):
        remove_vertex(fix_a, vertex)


def test_fingerprint_ignores_edge_order():
    a = PhyloNetwork.from_edges(FIX_A_EDGES)
    b = PhyloNetwork.from_edges(list(reversed(FIX_A_EDGES)))
    assert fingerprint(a) == fingerprint(b)
    assert a == b


def test_leaf_labels_from_edges():
    n = PhyloNetwork.from_edges([("ρ", "p"), ("ρ", "q")], leaf_labels={"q": "B", "p": "A"})
    assert n.leaf_labels == {"q": "B", "p": "A"}
    assert n.leaf_names == ["q", "p"]


@settings(max_examples=60, deadline=None)
@given(networks())
def test_handshake(n):
    indeg = sum(n.indeg(v) for v in range(n.n_vertices))
    outdeg = sum(n.outdeg(v) for v in range(n.n_vertices))
    assert indeg == outdeg == n.n_edges
