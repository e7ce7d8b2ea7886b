import pytest
from hypothesis import assume, given, settings

from core.exceptions import NotTreeBasedError
from core.treebase import covering_subtree, subdivision_tree, validate_covering_subtree
from core.zigzag import decompose
from tests.conftest import networks

FIX_C_TREE = [("ρ", "u"), ("ρ", "v"), ("u", "r1"), ("v", "r2"), ("r1", "1"), ("r2", "2")]


def test_tree_is_its_own_subdivision_tree(fix_tree):
    subtree = subdivision_tree(fix_tree)
    assert subtree.uncovered == []
    assert sorted(subtree.tree_edges) == fix_tree.canonical_edges()


def test_fix_c_subdivision_tree(fix_c):
    subtree = subdivision_tree(fix_c)
    assert sorted(subtree.tree_edges) == sorted(FIX_C_TREE)
    assert subtree.uncovered == []
    assert subtree.eta == 0


def test_fix_a_is_not_tree_based(fix_a):
    with pytest.raises(NotTreeBasedError) as exc_info:
        subdivision_tree(fix_a)
    assert exc_info.value.n_w == 1


def test_validate_accepts_fix_c_tree(fix_c):
    assert validate_covering_subtree(fix_c, FIX_C_TREE).ok


def test_validate_reports_missing_leaf(fix_c):
    edges = [e for e in FIX_C_TREE if e != ("r1", "1")]
    report = validate_covering_subtree(fix_c, edges)
    assert not report.ok
    assert report.first().rule == "leaf-set"


def test_validate_reports_two_parents(fix_a):
    report = validate_covering_subtree(fix_a, fix_a.canonical_edges())
    assert report.first().rule == "multiple-parents"
    assert report.first().witness == "r"


def test_validate_reports_foreign_edge(fix_c):
    report = validate_covering_subtree(fix_c, FIX_C_TREE + [("u", "v")])
    assert report.first().rule == "foreign-edge"


def test_validate_reports_unreachable(fix_b):
    edges = [("d1", "b1"), ("b1", "r1"), ("r1", "1"), ("ρ", "u"), ("u", "a2"), ("a2", "r2"), ("r2", "2")]
    report = validate_covering_subtree(fix_b, edges)
    assert report.first().rule == "unreachable"
    assert report.first().witness == "1"


def test_covering_subtree_keeps_root_covered(fix_a):
    subtree = covering_subtree(fix_a, [("ρ", "b"), ("b", "r"), ("r", "1")])
    assert subtree.covered == ["1", "b", "r", "ρ"]
    assert subtree.uncovered == ["a"]


@settings(max_examples=80, deadline=None)
@given(networks())
def test_tree_based_networks_get_spanning_trees(n):
    d = decompose(n)
    assume(d.counts.w_fence == 0)
    subtree = subdivision_tree(n, d)
    assert subtree.uncovered == []
    assert validate_covering_subtree(n, subtree.tree_edges).ok
    assert len(subtree.tree_edges) == n.n_vertices - 1
