from __future__ import annotations

from itertools import product as cartesian

import pytest
from hypothesis import given

import oracles
from fintop.canonical import enumerate_labeled, enumerate_unlabeled, eval_functional
from fintop.coproducts import GraftedAt, admissible_graft_cuts
from fintop.envelope import (
    ForestView,
    canonical_star,
    extended_graft,
    extended_graft_recursive,
    gl_star,
    gl_star_lin,
    pairing_lhs,
    pairing_rhs,
    star_tensor,
    unshuffle,
    unshuffle_lin,
)
from fintop.errors import LabelClash, SizeMismatch
from fintop.grafting import graft
from fintop.linear import EMPTY, LinComb
from fintop.preorder import parse, product
from strategies import on, preorders


def test_unshuffle():
    x = parse("{x}")
    assert unshuffle(x) == LinComb.of(x, EMPTY) + LinComb.of(EMPTY, x)
    assert len(unshuffle(parse("{x, y}"))) == 4
    c = parse("{a<b}")
    assert unshuffle(c) == LinComb.of(c, EMPTY) + LinComb.of(EMPTY, c)
    assert len(unshuffle(ForestView(parse("{a, b<c, d}")))) == 8


def test_extended_graft_examples():
    dots, z = parse("{x, y}"), parse("{z}")
    assert extended_graft_recursive(dots, z) == LinComb.of(parse("{z<x, z<y}"))
    assert extended_graft(dots, z) == extended_graft_recursive(dots, z)
    assert extended_graft(parse("{x}"), parse("{a<b}")) == graft(parse("{x}"), parse("{a<b}"))
    assert extended_graft(parse("{x}"), EMPTY) == LinComb.zero()
    assert extended_graft(EMPTY, EMPTY) == LinComb.of(EMPTY)
    with pytest.raises(LabelClash):
        extended_graft(parse("{a}"), parse("{a}"))


def _forests(max_n: int, prefix: str):
    return [on(prefix, t) for n in range(max_n + 1) for t in enumerate_labeled(n)]


def test_recursion_equals_closed_form_exhaustively():
    """All left operands with at most 3 points against targets with at most 3 points."""
    for a in _forests(3, "a"):
        for b in _forests(3, "b"):
            closed = extended_graft(a, b)
            assert extended_graft_recursive(a, b, "first") == closed
            assert extended_graft_recursive(a, b, "last") == closed


def test_star_examples():
    x, y = parse("{x}"), parse("{y}")
    assert gl_star(x, y) == LinComb.of(parse("{x, y}")) + LinComb.of(parse("{y<x}"))
    b = parse("{a<b}")
    assert gl_star(EMPTY, b) == LinComb.of(b)
    assert gl_star(b, EMPTY) == LinComb.of(b)


def test_lambda_dot_star_chain_has_nine_classes():
    # Frozen from a hand expansion: four terms of (Λ·•)∘chain, Λ·•·chain,
    # Λ·(3-chain), Λ·∨, •·(Λ grafted at the chain's bottom) and
    # •·(Λ grafted at the chain's top), each with coefficient 1.
    lam_dot = parse("{a<c, b<c, d}")
    chain = parse("{x<y}")
    out = canonical_star(lam_dot, chain)
    assert len(out) == 9
    assert all(c == 1 for _, c in out.items())
    assert sum(c for _, c in gl_star(lam_dot, chain).items()) == 9


@given(preorders(max_size=2, prefix="a"), preorders(max_size=2, prefix="b"), preorders(max_size=1, prefix="c"))
def test_star_associative(a, b, c):
    assert gl_star_lin(gl_star(a, b), LinComb.of(c)) == gl_star_lin(LinComb.of(a), gl_star(b, c))


@given(preorders(max_size=3, prefix="a"), preorders(max_size=2, prefix="b"))
def test_unshuffle_multiplicative(a, b):
    assert unshuffle_lin(gl_star(a, b)) == star_tensor(unshuffle(a), unshuffle(b))


@given(preorders(max_size=2, prefix="a"), preorders(max_size=2, prefix="b"))
def test_star_descends_to_classes(a, b):
    ra = a.relabel({lab: f"u{i}" for i, lab in enumerate(reversed(a.elements))})
    assert canonical_star(a, b) == canonical_star(ra, b)


@pytest.mark.parametrize(
    "t1, t2, tp, expected",
    [
        ("{a}", "{b}", "{x<y}", 1),
        ("{a}", "{b<c}", "{o<t1, o<t2}", 2),
        ("{a<b}", "{c}", "{p<r, q<r}", 0),
    ],
)
def test_pairing_examples(t1, t2, tp, expected):
    args = [parse(t1), parse(t2), parse(tp)]
    assert pairing_lhs(*args) == expected
    assert pairing_rhs(*args) == expected


def test_pairing_size_mismatch():
    with pytest.raises(SizeMismatch):
        pairing_lhs(parse("{a}"), parse("{b}"), parse("{x}"))
    with pytest.raises(SizeMismatch):
        pairing_rhs(parse("{a}"), parse("{b}"), parse("{x}"))


def _class_weighted_rhs(t1, t2, tp):
    """Cut side of the pairing, with each grafted component weighted by the
    size of the equivalence class it hangs from."""
    total = 0
    for cut in admissible_graft_cuts(tp):
        w = eval_functional(t1, tp.restrict(cut.y)) * eval_functional(t2, tp.restrict(tp.full_mask & ~cut.y))
        for _, tag in cut.components:
            if isinstance(tag, GraftedAt):
                v = tp.index[tag.vertex]
                w *= bin(tp.up[v] & tp.down[v]).count("1")
        total += w
    return total


def test_pairing_discrepancy_is_class_multiplicity():
    """The graft side counts one assignment per vertex, the cut side one per
    equivalence class; the sides agree once that multiplicity is restored,
    and agree outright whenever the second factor is a poset."""
    for n1, n2 in cartesian((1, 2), repeat=2):
        for t1, t2 in cartesian(enumerate_unlabeled(n1), enumerate_unlabeled(n2)):
            for tp in enumerate_labeled(n1 + n2):
                lhs = pairing_lhs(t1, t2, tp)
                assert lhs == _class_weighted_rhs(t1, t2, tp)
                if t2.is_t0():
                    assert lhs == pairing_rhs(t1, t2, tp)


def test_smallest_pairing_counterexample():
    t1, t2, tp = parse("{x}"), parse("{a~b}"), parse("{a~b<x}")
    assert pairing_lhs(t1, t2, tp) == 4
    assert pairing_rhs(t1, t2, tp) == 2


@given(preorders(max_size=2, prefix="x"), preorders(min_size=1, max_size=2, prefix="y"))
def test_star_terms_are_graft_cuts(a, b):
    for (w,), _ in gl_star(a, b).items():
        cuts = {frozenset(w.labels(c.y)) for c in admissible_graft_cuts(w)}
        assert frozenset(a.elements) in cuts
        assert frozenset(a.elements) in set(oracles.graft_cuts(w))


def test_product_is_star_term():
    a, b = parse("{x<y}"), parse("{z}")
    assert gl_star(a, b).coeff((product(a, b),)) == 1
