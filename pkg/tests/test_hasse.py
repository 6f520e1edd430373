from __future__ import annotations

from fintop.hasse import covering_pairs, to_dot
from fintop.preorder import parse


def test_chain():
    dot = to_dot(parse("{a<b}"))
    assert dot.count("[label=") == 2
    assert dot.count("->") == 1
    assert "rankdir=BT" in dot


def test_indiscrete_pair_is_one_box():
    dot = to_dot(parse("{a~b}"))
    assert dot.count("[label=") == 1
    assert '[label="a,b" shape=box]' in dot
    assert "->" not in dot


def test_diamond_covers_only():
    classes, edges = covering_pairs(parse("{a<b, a<c, b<d, c<d}"))
    assert len(classes) == 4
    assert sorted(edges) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_name_and_empty():
    assert to_dot(parse("{}"), name="G").startswith("digraph G {")
