"""Grafting products on finite topological spaces.

``graft_at(t1, t2, v)`` puts all of ``t1`` above the down-set of ``v`` in
``t2``.  ``graft`` sums over every vertex of ``t2``.  The ``graft_up``
family is the mirror image under the order-reversing involution ``j``.
"""
from __future__ import annotations

from typing import Iterable

from .errors import UnknownVertex
from .linear import LinComb, linear
from .preorder import Preorder, product


def _require_vertex(t: Preorder, v: str) -> int:
    try:
        return t.index[v]
    except KeyError:
        raise UnknownVertex(f"{v!r} is not a point of {t}") from None


def graft_at(t1: Preorder, t2: Preorder, v: str) -> Preorder:
    """``t1 ↘_v t2``: every point below ``v`` in ``t2`` goes below all of ``t1``."""
    _require_vertex(t2, v)
    joint = product(t1, t2)
    idx = joint.index
    top = joint.mask(t1.elements)
    below_v = joint.mask(t2.down_labels(v))
    rows = list(joint.up)
    for lab in t2.elements:
        i = idx[lab]
        if below_v >> i & 1:
            rows[i] |= top
    # Already transitive: anything below a point of down(v) is in down(v).
    return Preorder(joint.elements, tuple(rows))


def graft(t1: Preorder, t2: Preorder) -> LinComb:
    """``t1 ↘ t2``: sum of ``graft_at`` over the points of ``t2``."""
    return LinComb.sum_of(LinComb.of(graft_at(t1, t2, v)) for v in t2.elements)


def graft_up_at(t: Preorder, s: Preorder, v: str) -> Preorder:
    """``t ↗^v s``: all of ``t`` goes below the up-set of ``v`` in ``s``."""
    return graft_at(t.opposite(), s.opposite(), v).opposite()


def graft_up(t: Preorder, s: Preorder) -> LinComb:
    return LinComb.sum_of(LinComb.of(graft_up_at(t, s, v)) for v in s.elements)


def bplus(t: Preorder, star: str = "*") -> Preorder:
    """Adjoin a new global minimum ``star``."""
    return graft_at(t, Preorder.point(star), star)


def j_lin(a: LinComb) -> LinComb:
    """Apply the involution ``j`` to every factor of every word."""
    return linear(a, lambda w: LinComb.of(*(f.opposite() for f in w)))


def graft_lin(a: LinComb, b: LinComb, up: bool = False) -> LinComb:
    """Bilinear extension of ``graft`` (or ``graft_up``) to rank-1 combinations."""
    op = graft_up if up else graft
    return LinComb.sum_of(
        ca * cb * op(wa[0], wb[0]) for wa, ca in a.items() for wb, cb in b.items()
    )


def psi_labels(t: Preorder, a1: Iterable[str], a2: Iterable[str]) -> Preorder:
    """``Ψ_{a1,a2}(t)`` with the blocks given by labels."""
    return t.psi(t.mask(a1), t.mask(a2))


def psi_lin(a: LinComb, a1: Iterable[str], a2: Iterable[str]) -> LinComb:
    """``Ψ`` applied termwise to a rank-1 combination."""
    a1, a2 = tuple(a1), tuple(a2)
    return linear(a, lambda w: LinComb.of(psi_labels(w[0], a1, a2)))


# -- identities ------------------------------------------------------------


def prelie_defect(t1: Preorder, t2: Preorder, t3: Preorder, up: bool = False) -> LinComb:
    """``t1 ↘ (t2 ↘ t3) − (t1 ↘ t2) ↘ t3`` (or the ``↗`` version)."""
    x1, x2, x3 = (LinComb.of(t) for t in (t1, t2, t3))
    return graft_lin(x1, graft_lin(x2, x3, up), up) - graft_lin(graft_lin(x1, x2, up), x3, up)


def prelie_defect_formula(t1: Preorder, t2: Preorder, t3: Preorder) -> LinComb:
    """The closed expression ``Σ_{u,v ∈ X3} t1 ↘_u (t2 ↘_v t3)`` for the defect."""
    return LinComb.sum_of(
        LinComb.of(graft_at(t1, graft_at(t2, t3, v), u))
        for u in t3.elements
        for v in t3.elements
    )


def assoc_prop_check(t1: Preorder, t2: Preorder, t3: Preorder, u: str, w: str) -> bool:
    """``(t1 ↘_u t2) ↘_w t3 == t1 ↘_u (t2 ↘_w t3)`` for ``u`` in t2, ``w`` in t3."""
    return graft_at(graft_at(t1, t2, u), t3, w) == graft_at(t1, graft_at(t2, t3, w), u)


def commute_prop_check(t1: Preorder, t2: Preorder, t3: Preorder, v: str, w: str) -> bool:
    """``t1 ↘_v (t2 ↘_w t3) == t2 ↘_w (t1 ↘_v t3)`` for ``v, w`` in t3."""
    return graft_at(t1, graft_at(t2, t3, w), v) == graft_at(t2, graft_at(t1, t3, v), w)


def theorem5_sides(t: Preorder, s: Preorder, u_: Preorder, sv: str, uv: str) -> tuple[Preorder, Preorder]:
    """``t ↗^sv (s ↘_uv u_)`` and ``Ψ_{X,Z}((t ↗^sv s) ↘_uv u_)``."""
    left = graft_up_at(t, graft_at(s, u_, uv), sv)
    right = psi_labels(graft_at(graft_up_at(t, s, sv), u_, uv), t.elements, u_.elements)
    return left, right


def theorem5_diagram(t: Preorder, s: Preorder, u_: Preorder, sv: str, uv: str) -> bool:
    left, right = theorem5_sides(t, s, u_, sv, uv)
    return left == right


def corollary_sides(t: Preorder, s: Preorder, u_: Preorder, sv: str, uv: str) -> tuple[Preorder, Preorder]:
    """``t ↘_sv (s ↗^uv u_)`` and ``Ψ_{X,Z}((t ↘_sv s) ↗^uv u_)``."""
    left = graft_at(t, graft_up_at(s, u_, uv), sv)
    right = psi_labels(graft_up_at(graft_at(t, s, sv), u_, uv), t.elements, u_.elements)
    return left, right


def corollary_diagram(t: Preorder, s: Preorder, u_: Preorder, sv: str, uv: str) -> bool:
    left, right = corollary_sides(t, s, u_, sv, uv)
    return left == right


def prop5_sides(t: Preorder, s: Preorder, u_: Preorder) -> tuple[LinComb, LinComb]:
    """Both sides of the mixed identity relating ``↗``, ``↘`` and ``Ψ``."""
    xt, xs, xu = (LinComb.of(x) for x in (t, s, u_))
    left = graft_lin(xt, graft_lin(xs, xu), up=True) - psi_lin(
        graft_lin(graft_lin(xt, xs, up=True), xu), t.elements, u_.elements
    )
    right = graft_lin(xs, graft_lin(xt, xu, up=True)) - psi_lin(
        graft_lin(graft_lin(xs, xt), xu, up=True), s.elements, u_.elements
    )
    return left, right


def prop5_identity(t: Preorder, s: Preorder, u_: Preorder) -> bool:
    left, right = prop5_sides(t, s, u_)
    return left == right


__all__ = [
    "assoc_prop_check",
    "bplus",
    "commute_prop_check",
    "corollary_diagram",
    "corollary_sides",
    "graft",
    "graft_at",
    "graft_lin",
    "graft_up",
    "graft_up_at",
    "j_lin",
    "prelie_defect",
    "prelie_defect_formula",
    "prop5_identity",
    "prop5_sides",
    "psi_labels",
    "psi_lin",
    "theorem5_diagram",
    "theorem5_sides",
]
