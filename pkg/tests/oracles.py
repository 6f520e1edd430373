"""Brute-force reference implementations used only by the tests.

Everything here works on plain sets of ``(x, y)`` pairs and avoids the
bitmask machinery of the package, so agreement is a real cross-check.
"""
from __future__ import annotations

from itertools import combinations, permutations, product

from fintop.preorder import Preorder

Rel = frozenset  # frozenset[tuple[str, str]], reflexive pairs included


def rel_of(t: Preorder) -> Rel:
    return frozenset((x, y) for x in t.elements for y in t.elements if t.leq(x, y))


def preorder_of(elements, rel: Rel) -> Preorder:
    return Preorder.from_relations(elements, rel)


def is_preorder(elements, rel) -> bool:
    if any((x, x) not in rel for x in elements):
        return False
    return all((x, z) in rel for (x, y) in rel for (y2, z) in rel if y == y2)


def all_relations(n: int) -> list[Rel]:
    """Every reflexive transitive relation on ``0..n-1`` by filtering all matrices."""
    els = [str(i) for i in range(n)]
    off = [(x, y) for x in els for y in els if x != y]
    out = []
    for pick in product((0, 1), repeat=len(off)):
        rel = {(x, x) for x in els} | {p for p, b in zip(off, pick) if b}
        if is_preorder(els, rel):
            out.append(frozenset(rel))
    return out


def relabel_rel(rel: Rel, perm: dict) -> Rel:
    return frozenset((perm[x], perm[y]) for x, y in rel)


def brute_canonical(n: int, rel: Rel) -> tuple:
    els = [str(i) for i in range(n)]
    best = None
    for perm in permutations(els):
        m = dict(zip(els, perm))
        key = tuple(sorted(relabel_rel(rel, m)))
        if best is None or key < best:
            best = key
    return best


def isomorphic(a: Preorder, b: Preorder) -> bool:
    if a.n != b.n:
        return False
    ra, rb = rel_of(a), rel_of(b)
    for perm in permutations(b.elements):
        m = dict(zip(a.elements, perm))
        if relabel_rel(ra, m) == rb:
            return True
    return False


def aut_count(t: Preorder) -> int:
    r = rel_of(t)
    return sum(
        1 for perm in permutations(t.elements) if relabel_rel(r, dict(zip(t.elements, perm))) == r
    )


def graft_at(t1: Preorder, t2: Preorder, v: str) -> Preorder:
    r1, r2 = rel_of(t1), rel_of(t2)
    extra = {(x, y) for x in t2.elements for y in t1.elements if (x, v) in r2}
    return Preorder.from_relations(t1.elements + t2.elements, r1 | r2 | extra)


def up_closed(rel: Rel, ys: set) -> bool:
    return all(y in ys for (x, y) in rel if x in ys)


def components(rel: Rel, ys: set) -> list[frozenset]:
    left = set(ys)
    out = []
    while left:
        comp = {left.pop()}
        grew = True
        while grew:
            grew = False
            for x, y in rel:
                if x in ys and y in ys and (x in comp) != (y in comp):
                    comp |= {x, y}
                    grew = True
        left -= comp
        out.append(frozenset(comp))
    return out


def graft_cuts(t: Preorder) -> list[frozenset]:
    """Open sets ``Y`` whose components are detached or grafted at one vertex."""
    r = rel_of(t)
    els = set(t.elements)
    out = []
    for k in range(len(els) + 1):
        for ys in combinations(sorted(els), k):
            ys = set(ys)
            if not up_closed(r, ys):
                continue
            rest = els - ys
            ok = True
            for comp in components(r, ys):
                detached = all((x, c) not in r and (c, x) not in r for x in rest for c in comp)
                grafted = any(
                    all(((x, c) in r) == ((x, v) in r) for x in rest for c in comp) for v in rest
                )
                if not (detached or grafted):
                    ok = False
                    break
            if ok:
                out.append(frozenset(ys))
    return out


def finer_admissible(t: Preorder) -> list[Rel]:
    """Topologies ``T'`` passing the three conditions, straight from the definitions."""
    r = rel_of(t)
    els = list(t.elements)
    idx = {str(i): e for i, e in enumerate(els)}
    out = []
    for cand in all_relations(len(els)):
        rp = relabel_rel(cand, idx)
        if not rp <= r:
            continue
        ok = True
        for k in range(1, len(els) + 1):
            for ys in combinations(els, k):
                ys = set(ys)
                if len(components(rp, ys)) == 1:
                    if {p for p in rp if set(p) <= ys} != {p for p in r if set(p) <= ys}:
                        ok = False
        if not ok:
            continue
        q = closure(els, r | {(y, x) for x, y in rp})
        qq = closure(els, rp | {(y, x) for x, y in rp})
        if all(
            ((x, y) in q and (y, x) in q) == ((x, y) in qq and (y, x) in qq) for x in els for y in els
        ):
            out.append(rp)
    return out


def closure(els, rel) -> Rel:
    rel = set(rel) | {(x, x) for x in els}
    changed = True
    while changed:
        changed = False
        for (x, y) in list(rel):
            for (y2, z) in list(rel):
                if y == y2 and (x, z) not in rel:
                    rel.add((x, z))
                    changed = True
    return frozenset(rel)
