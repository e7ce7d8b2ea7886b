import pytest
from hypothesis import given, settings

from core.exceptions import NetworkValidationError, PhnParseError
from core.mw import build_mcst_via_resolution
from core.treebase import subdivision_tree
from core.zigzag import decompose
from utils.dot_export import export_dot
from utils.phn_format import (
    parse_network, parse_raw, read_uncovered, serialize_network, serialize_subtree,
)
from tests.conftest import networks


def test_comments_and_blank_lines_ignored():
    raw = parse_raw("# header\n\nedge ρ 1   # trailing\n  \n")
    assert raw.edges == (("ρ", "1"),)


def test_leaf_labels_parsed():
    n = parse_network("edge ρ p\nedge ρ q\nleaf p A\nleaf q B\n")
    assert n.leaf_labels == {"p": "A", "q": "B"}


@pytest.mark.parametrize("text, line, column", [
    ("edge ρ\n", 1, 1),
    ("edge ρ 1\nnode x\n", 2, 1),
    ("edge ρ 1\n  leaf 1\n", 2, 3),
    ("edge ρ 1\nedge ρ 1\n", 2, 6),
    ("edge ρ 1\nleaf z Z\n", 2, 6),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(PhnParseError) as exc_info:
        parse_raw(text)
    assert exc_info.value.line == line
    assert exc_info.value.column == column


def test_self_loop_is_a_validation_error():
    with pytest.raises(NetworkValidationError) as exc_info:
        parse_network("edge ρ a\nedge a a\nedge a 1\n")
    assert "self-loop" in exc_info.value.report.rules()


def test_serialize_then_parse_keeps_network(fix_b):
    text = serialize_network(fix_b, header="FIX-B copy")
    assert text.startswith("# FIX-B copy\n")
    assert parse_network(text) == fix_b


def test_subtree_text_lists_uncovered(fix_a):
    n = parse_network("edge ρ a\nedge ρ 2\nedge a 1\n")
    text = serialize_subtree(n, subdivision_tree(n))
    assert read_uncovered(text) == []
    assert "edge ρ a" in text
    subtree = build_mcst_via_resolution(fix_a)
    text = serialize_subtree(fix_a, subtree)
    assert read_uncovered(text) == ["a"]
    tree = parse_network(text)
    assert tree.n_edges == 3


def test_dot_colours_edges_by_trail(fix_a):
    dot = export_dot(fix_a, decomposition=decompose(fix_a))
    assert dot.startswith('digraph "N" {')
    assert '"a" -> "r" [color="#d62728"' in dot
    assert '"ρ" -> "a" [color="#1f77b4"' in dot
    assert '"1" [shape=box label="1"];' in dot
    assert '"r" -> "1" [color="#2ca02c"' in dot
    colours = {line.split('color="')[1].split('"')[0] for line in dot.splitlines() if "color=" in line}
    assert colours == {"#1f77b4", "#d62728", "#2ca02c"}


def test_dot_marks_covering_subtree(fix_a):
    subtree = build_mcst_via_resolution(fix_a)
    dot = export_dot(fix_a, decomposition=decompose(fix_a), subtree=subtree)
    assert '"a" [style=filled fillcolor="#dddddd"];' in dot
    assert '"ρ" -> "b" [color="#1f77b4" tooltip="m_fence #0" penwidth=2.5];' in dot
    assert "penwidth" not in next(line for line in dot.splitlines() if line.startswith('  "ρ" -> "a"'))


@settings(max_examples=60, deadline=None)
@given(networks())
def test_parse_of_serialized_network_is_identity(n):
    back = parse_network(serialize_network(n, header="round trip"))
    assert back == n
    assert [back.edge_names(e) for e in range(back.n_edges)] == [n.edge_names(e) for e in range(n.n_edges)]
    assert back.leaf_labels == n.leaf_labels
    assert back.root_name == n.root_name
