"""Coproducts on labeled topologies.

* ``delta_ffm``: one term ``T|X∖Y (x) T|Y`` per open set ``Y``.
* ``delta_graft``: one term ``T|Y (x) T|X∖Y`` per admissible graft-cut ``Y``
  (note the factor order is reversed relative to ``delta_ffm``).
* ``gamma``: the internal coproduct ``Σ T' (x) T/T'`` over admissible finer
  topologies ``T'``.

A graft-cut is an open ``Y`` such that each connected component ``C`` of
``T|Y`` either has no comparabilities with the closed complement ``R`` at all
(detached) or every point of ``C`` has the same down-set inside ``R`` and
that down-set is the principal down-set of some ``v`` in ``R`` (grafted at
``v``, unique up to equivalence).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal, Union

from .canonical import ENUM_LIMIT, _labeled_rows
from .errors import SizeLimitExceeded
from .grafting import graft_at
from .linear import EMPTY, LinComb, apply_at, multiply, project_unlabeled
from .preorder import Preorder, SubsetMask, bits, product

CutRule = Literal["graft", "literal-min"]
Coproduct = Callable[[Preorder], LinComb]


@dataclass(frozen=True)
class Detached:
    def __str__(self) -> str:
        return "detached"


@dataclass(frozen=True)
class GraftedAt:
    vertex: str

    def __str__(self) -> str:
        return f"grafted at {self.vertex}"


Tag = Union[Detached, GraftedAt]


@dataclass(frozen=True)
class GraftCut:
    """An admissible cut: the open part ``y`` and one tag per component of ``T|y``."""

    y: SubsetMask
    components: tuple[tuple[SubsetMask, Tag], ...]


def components_within(t: Preorder, mask: SubsetMask) -> list[SubsetMask]:
    """Connected components of ``t|mask`` as masks over ``t``'s indices."""
    comps = []
    left = mask
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for i in bits(frontier):
                grow |= (t.up[i] | t.down[i]) & mask
            frontier = grow & ~comp
            comp |= grow
        comps.append(comp)
        left &= ~comp
    return comps


def _min_within(t: Preorder, mask: SubsetMask) -> SubsetMask:
    """Minimal points of ``t|mask``: nothing strictly below them inside ``mask``."""
    out = 0
    for i in bits(mask):
        below = t.down[i] & mask
        if all(t.down[j] & mask == below for j in bits(below)):
            out |= 1 << i
    return out


def _principal_vertex(t: Preorder, rest: SubsetMask, downset: SubsetMask) -> int | None:
    for v in bits(rest):
        if t.down[v] & rest == downset:
            return v
    return None


def _graft_rule(t: Preorder, rest: SubsetMask, comp: SubsetMask) -> Tag | None:
    downs = {t.down[c] & rest for c in bits(comp)}
    if len(downs) != 1:
        return None
    (d,) = downs
    if d == 0:
        return Detached()
    v = _principal_vertex(t, rest, d)
    return None if v is None else GraftedAt(t.elements[v])


def _literal_min_rule(t: Preorder, rest: SubsetMask, comp: SubsetMask) -> Tag | None:
    mins = _min_within(t, comp)
    if mins == comp & _min_within(t, t.full_mask):
        # Tags are nominal under this rule; the component may still touch R.
        return Detached()
    common = rest
    for m in bits(mins):
        common &= t.down[m]
    if not common:
        return None
    # Maximal equivalence classes among the common ancestors.
    tops = [v for v in bits(common) if t.up[v] & common & ~t.down[v] == 0]
    classes = {t.up[v] & t.down[v] for v in tops}
    if len(classes) != 1:
        return None
    return GraftedAt(t.elements[tops[0]])


def admissible_graft_cuts(t: Preorder, rule: CutRule = "graft") -> list[GraftCut]:
    """All admissible cuts of ``t`` in increasing order of ``y``."""
    check = {"graft": _graft_rule, "literal-min": _literal_min_rule}[rule]
    out = []
    for y in t.open_sets():
        rest = t.full_mask & ~y
        tags = []
        for comp in components_within(t, y):
            tag = check(t, rest, comp)
            if tag is None:
                break
            tags.append((comp, tag))
        else:
            out.append(GraftCut(y, tuple(tags)))
    return out


def regraft(t: Preorder, cut: GraftCut) -> Preorder:
    """Rebuild a space from the two sides of a cut by grafting and products."""
    acc = t.restrict(t.full_mask & ~cut.y)
    for comp, tag in cut.components:
        piece = t.restrict(comp)
        acc = product(piece, acc) if isinstance(tag, Detached) else graft_at(piece, acc, tag.vertex)
    return acc


# -- coproducts ------------------------------------------------------------


def delta_ffm(t: Preorder) -> LinComb:
    full = t.full_mask
    return LinComb.sum_of(LinComb.of(t.restrict(full & ~y), t.restrict(y)) for y in t.open_sets())


def delta_graft(t: Preorder, rule: CutRule = "graft") -> LinComb:
    full = t.full_mask
    return LinComb.sum_of(
        LinComb.of(t.restrict(c.y), t.restrict(full & ~c.y)) for c in admissible_graft_cuts(t, rule)
    )


def _connected_in(rows: tuple[int, ...], mask: SubsetMask) -> bool:
    seed = mask & -mask
    comp = frontier = seed
    while frontier:
        grow = 0
        for i in bits(frontier):
            grow |= rows[i] & mask
            for j in bits(mask):
                if rows[j] >> i & 1:
                    grow |= 1 << j
        frontier = grow & ~comp
        comp |= grow
    return comp == mask


def _admissible_finer(t: Preorder, tp: Preorder, alternative: bool = False) -> bool:
    n = t.n
    # (ii) agreement on every subset connected in the finer topology
    for y in range(1, 1 << n):
        if y & (y - 1) and _connected_in(tp.up, y):
            if any(tp.up[i] & y != t.up[i] & y for i in bits(y)):
                return False
    # (iii) class partitions
    left = t.quotient(tp).class_masks()
    right = tp.class_masks() if alternative else tp.quotient(tp).class_masks()
    return sorted(left) == sorted(right)


def gamma_candidates(t: Preorder, limit: int = ENUM_LIMIT) -> list[Preorder]:
    """Finer topologies of ``t`` passing all three admissibility conditions."""
    if t.n > limit:
        raise SizeLimitExceeded(f"gamma on {t.n} points exceeds bound {limit}")
    return [tp for tp in _finer(t) if _admissible_finer(t, tp)]


def _finer(t: Preorder) -> list[Preorder]:
    return [
        Preorder(t.elements, rows)
        for rows in _labeled_rows(t.n)
        if all(a & ~b == 0 for a, b in zip(rows, t.up))
    ]


def gamma(t: Preorder, limit: int = ENUM_LIMIT, alternative: bool = False) -> LinComb:
    """``Γ(t) = Σ T' (x) t/T'``.

    ``alternative=True`` swaps the last admissibility condition for the
    reading that compares with the equivalence classes of ``T'`` itself.
    """
    if t.n > limit:
        raise SizeLimitExceeded(f"gamma on {t.n} points exceeds bound {limit}")
    if t.n == 0:
        return LinComb.of(EMPTY, EMPTY)
    # Internal coproduct: both factors live on the whole ground set, so the
    # words are built directly instead of through the disjointness check.
    return LinComb(
        ((tp, t.quotient(tp)), 1) for tp in _finer(t) if _admissible_finer(t, tp, alternative)
    )


COPRODUCTS: dict[str, Coproduct] = {
    "ffm": delta_ffm,
    "graft": delta_graft,
    "gamma": gamma,
}


# -- identity checks -------------------------------------------------------


def counit_sides(cop: Coproduct, t: Preorder) -> tuple[LinComb, LinComb]:
    """``(ε (x) id) cop(t)`` and ``(id (x) ε) cop(t)`` as rank-1 combinations."""
    c = cop(t)
    left = LinComb({(w[1],): k for w, k in c.items() if w[0].n == 0})
    right = LinComb({(w[0],): k for w, k in c.items() if w[1].n == 0})
    return left, right


def coassoc_defect(cop: Coproduct, t: Preorder) -> LinComb:
    c = cop(t)
    return apply_at(c, 0, cop) - apply_at(c, 1, cop)


def bialgebra_defect(cop: Coproduct, t1: Preorder, t2: Preorder) -> LinComb:
    return cop(product(t1, t2)) - multiply(cop(t1), cop(t2))


def gamma_compat_sides(t: Preorder, limit: int = ENUM_LIMIT) -> tuple[LinComb, LinComb]:
    """``(id (x) Δ_↘) Γ(t)`` and ``m¹³ (Γ (x) Γ) Δ_↘(t)``, projected to classes."""
    lhs = apply_at(gamma(t, limit), 1, delta_graft)
    acc: dict[tuple, int] = {}
    for (y, z), k in delta_graft(t).items():
        for (a1, a2), ka in gamma(y, limit).items():
            for (b1, b2), kb in gamma(z, limit).items():
                w = (product(a1, b1), a2, b2)
                acc[w] = acc.get(w, 0) + k * ka * kb
    return project_unlabeled(lhs), project_unlabeled(LinComb(acc))


def gamma_compat_defect(t: Preorder, limit: int = ENUM_LIMIT) -> LinComb:
    lhs, rhs = gamma_compat_sides(t, limit)
    return lhs - rhs
