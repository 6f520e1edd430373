"""Extension of grafting to forests, the unshuffle coproduct and the ``⋆`` product.

Every topology is a forest: the disjoint product of its connected
components.  ``extended_graft_recursive`` follows the defining recursion of
the extension literally; ``extended_graft`` is the closed form (each
component of the left operand grafted independently at some vertex of the
right operand).  Tests assert the two agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as cartesian
from typing import Literal

from .coproducts import delta_graft
from .errors import SizeMismatch
from .grafting import bplus, graft, graft_at
from .linear import EMPTY, LinComb, bilinear, pair_functional, project_unlabeled
from .preorder import Preorder, check_disjoint, product

Peel = Literal["first", "last"]


@dataclass(frozen=True)
class ForestView:
    """A topology viewed as the product of its connected components."""

    base: Preorder

    @cached_property
    def components(self) -> tuple[Preorder, ...]:
        return self.base.components

    def __len__(self) -> int:
        return len(self.components)


def _prod(parts) -> Preorder:
    return product(*parts) if parts else EMPTY


def _splits(comps: tuple[Preorder, ...]):
    """All ordered pairs (S, complement) of sub-families of ``comps``."""
    k = len(comps)
    for m in range(1 << k):
        yield (
            tuple(c for i, c in enumerate(comps) if m >> i & 1),
            tuple(c for i, c in enumerate(comps) if not m >> i & 1),
        )


def unshuffle(a: Preorder | ForestView) -> LinComb:
    """``Σ_S prod(S) (x) prod(rest)`` over subsets of connected components."""
    comps = a.components if isinstance(a, ForestView) else a.components
    return LinComb.sum_of(LinComb.of(_prod(s), _prod(r)) for s, r in _splits(comps))


def counit(t: Preorder) -> int:
    return 1 if t.n == 0 else 0


# -- the recursion -----------------------------------------------------------


def _mul(a: LinComb, b: LinComb) -> LinComb:
    return bilinear(a, b, lambda wa, wb: LinComb.of(product(wa[0], wb[0])))


def _og_lin(a: LinComb, b: LinComb, peel: Peel) -> LinComb:
    return bilinear(a, b, lambda wa, wb: extended_graft_recursive(wa[0], wb[0], peel))


@lru_cache(maxsize=65536)
def extended_graft_recursive(a: Preorder, b: Preorder, peel: Peel = "first") -> LinComb:
    """``a ∘ b`` via the recursive rules.

    ``1∘b = b``; ``a∘1 = ε(a)``; connected on connected is ``graft``;
    ``(x·a')∘b = x∘(a'∘b) − (x∘a')∘b`` when ``a`` has several components
    (``peel`` picks which one plays ``x``); otherwise
    ``a∘(b1·b') = Σ (a(1)∘b1)·(a(2)∘b')`` over the unshuffle of ``a``.
    """
    check_disjoint(a, b)
    if a.n == 0:
        return LinComb.of(b)
    if b.n == 0:
        return LinComb.zero()
    ca, cb = a.components, b.components
    if len(ca) > 1:
        i = 0 if peel == "first" else len(ca) - 1
        x = LinComb.of(ca[i])
        rest = LinComb.of(_prod(ca[:i] + ca[i + 1:]))
        lb = LinComb.of(b)
        return _og_lin(x, _og_lin(rest, lb, peel), peel) - _og_lin(_og_lin(x, rest, peel), lb, peel)
    if len(cb) == 1:
        return graft(a, b)
    b1, b2 = LinComb.of(cb[0]), LinComb.of(_prod(cb[1:]))
    out = LinComb.zero()
    for (p, q), k in unshuffle(a).items():
        out = out + k * _mul(_og_lin(LinComb.of(p), b1, peel), _og_lin(LinComb.of(q), b2, peel))
    return out


def extended_graft(a: Preorder, b: Preorder) -> LinComb:
    """Closed form of ``a ∘ b``: each component of ``a`` grafted at a chosen vertex of ``b``."""
    check_disjoint(a, b)
    if a.n == 0:
        return LinComb.of(b)
    if b.n == 0:
        return LinComb.zero()
    comps = a.components
    acc: dict[tuple, int] = {}
    for targets in cartesian(b.elements, repeat=len(comps)):
        t = b
        # Grafted pieces sit above b, so down-sets of b's points never change.
        for c, v in zip(comps, targets):
            t = graft_at(c, t, v)
        acc[(t,)] = acc.get((t,), 0) + 1
    return LinComb(acc)


def gl_star(a: Preorder, b: Preorder) -> LinComb:
    """``a ⋆ b = Σ a(1) · (a(2) ∘ b)`` over the unshuffle of ``a``."""
    check_disjoint(a, b)
    out: dict[tuple, int] = {}
    for s, r in _splits(a.components):
        left = _prod(s)
        for (w,), k in extended_graft(_prod(r), b).items():
            key = (product(left, w),)
            out[key] = out.get(key, 0) + k
    return LinComb(out)


def gl_star_lin(a: LinComb, b: LinComb) -> LinComb:
    return bilinear(a, b, lambda wa, wb: gl_star(wa[0], wb[0]))


def star_tensor(a: LinComb, b: LinComb) -> LinComb:
    """``⋆`` on rank-2 combinations, slot by slot."""

    def on_words(wa, wb):
        out = LinComb.zero()
        for (p,), k in gl_star(wa[0], wb[0]).items():
            for (q,), m in gl_star(wa[1], wb[1]).items():
                out = out + LinComb({(p, q): k * m})
        return out

    return bilinear(a, b, on_words)


def unshuffle_lin(a: LinComb) -> LinComb:
    return LinComb.sum_of(k * unshuffle(w[0]) for w, k in a.items())


# -- duality pairing --------------------------------------------------------


def _fresh(t: Preorder, prefix: str) -> Preorder:
    return t.relabel({lab: f"{prefix}{i}" for i, lab in enumerate(t.elements)})


def _check_sizes(t1: Preorder, t2: Preorder, tp: Preorder) -> None:
    if t1.n + t2.n != tp.n:
        raise SizeMismatch(f"|X1|+|X2| = {t1.n + t2.n} but target has {tp.n} points")


def pairing_lhs(t1: Preorder, t2: Preorder, tp: Preorder) -> int:
    """``<e_{B tp}, t1 ∘ B(t2)>``: symmetry factor of ``B(tp)`` times the
    number of graft assignments of ``t1``'s components into ``B(t2)`` that
    produce a space homeomorphic to ``B(tp)``.
    """
    _check_sizes(t1, t2, tp)
    x1, x2 = _fresh(t1, "x"), _fresh(t2, "y")
    target = bplus(_fresh(tp, "z"))
    return pair_functional([target], extended_graft(x1, bplus(x2)))


def pairing_rhs(t1: Preorder, t2: Preorder, tp: Preorder) -> int:
    """``<e_{t1} (x) e_{t2}, Δ_↘(tp)>``."""
    _check_sizes(t1, t2, tp)
    return pair_functional([t1, t2], delta_graft(tp))


def canonical_star(a: Preorder, b: Preorder) -> LinComb:
    """``⋆`` read on homeomorphism classes (operands relabeled apart first)."""
    return project_unlabeled(gl_star(_fresh(a, "x"), _fresh(b, "y")))
