from __future__ import annotations

import pytest
from hypothesis import given

from fintop.canonical import canonical_key
from fintop.errors import GroundSetMismatch, LabelClash, RankMismatch, RankOverflow
from fintop.linear import (
    EMPTY,
    LinComb,
    from_lines,
    pair_functional,
    project_unlabeled,
    scale,
    tensor,
)
from fintop.preorder import parse
from strategies import preorders

A = LinComb.of(parse("{a<b}"))
B = LinComb.of(parse("{b<a}"))


def test_vector_space_basics():
    assert A + LinComb.zero() == A
    assert A - A == LinComb.zero()
    assert not (A - A)
    assert 2 * A + A == scale(3, A)
    assert (A + B).coeff((parse("{b<a}"),)) == 1


def test_rank_and_ground_checks():
    with pytest.raises(RankMismatch):
        A + LinComb.of(parse("{a}"), parse("{b}"))
    with pytest.raises(GroundSetMismatch):
        A + LinComb.of(parse("{a<c}"))
    with pytest.raises(LabelClash):
        LinComb.of(parse("{a}"), parse("{a}"))


def test_tensor():
    t = LinComb.of(parse("{x}"))
    assert tensor(t, LinComb.unit()) == LinComb.of(parse("{x}"), EMPTY)
    assert tensor(LinComb.unit(), LinComb.unit()) == LinComb.of(EMPTY, EMPTY)
    s = LinComb.of(parse("{y, z}")) + LinComb.of(parse("{y<z}")) - LinComb.of(parse("{z<y}"))
    lhs = tensor(t, s)
    rhs = LinComb.sum_of(tensor(t, LinComb({w: c})) for w, c in s.items())
    assert lhs == rhs
    with pytest.raises(LabelClash):
        tensor(A, A)
    with pytest.raises(RankOverflow):
        tensor(LinComb.of(parse("{x}"), parse("{y}")), LinComb.of(parse("{u}"), parse("{v}")))


def test_tensor_associative():
    x, y, z = (LinComb.of(parse(f"{{{c}}}")) for c in "xyz")
    assert tensor(tensor(x, y), z) == tensor(x, tensor(y, z))


def test_project_unlabeled():
    # Different ground sets cannot share one LinComb; projection is linear,
    # so the classes are summed after projecting each side.
    p = project_unlabeled(LinComb.of(parse("{a<b}"))) + project_unlabeled(LinComb.of(parse("{x<y}")))
    assert p == LinComb({(canonical_key(parse("{a<b}")),): 2})
    assert project_unlabeled(p) == p
    assert project_unlabeled(LinComb.zero()) == LinComb.zero()


def test_pair_functional_examples():
    dot2 = LinComb.of(parse("{a}"), parse("{b}"))
    assert pair_functional([parse("{p}"), parse("{q}")], dot2) == 1
    lam = parse("{a<c, b<c}")
    assert pair_functional([lam], 3 * LinComb.of(parse("{x<z, y<z}"))) == 6
    assert pair_functional([parse("{a}")], LinComb.of(parse("{a<b}"))) == 0
    with pytest.raises(RankMismatch):
        pair_functional([lam], dot2)


@given(preorders(prefix="a"), preorders(prefix="b"))
def test_serialization_round_trip(s, t):
    lc = 3 * LinComb.of(s, t) - LinComb.of(t, s)
    assert from_lines(lc.to_lines()) == lc


def test_lines_are_sorted_and_tab_separated():
    lc = LinComb.of(EMPTY, parse("{a}")) + 2 * LinComb.of(parse("{a}"), EMPTY)
    assert lc.to_lines() == ["2\t{a} | {}", "1\t{} | {a}"]
