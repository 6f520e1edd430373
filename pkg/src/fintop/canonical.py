"""Homeomorphism classes: canonical keys, automorphism groups, enumeration.

Canonical labeling uses colour refinement (up-, down- and equivalence-
neighbour colour multisets) followed by individualization backtracking.
Branches on vertices in the same orbit of the coloured graph are pruned,
which keeps symmetric spaces such as large discrete ones cheap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence

from .errors import SizeLimitExceeded
from .preorder import Preorder, _assemble, bits

CANON_LIMIT = 10
ENUM_LIMIT = 5

Colors = tuple[int, ...]


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Label-free normal form, printable as ``n:i<j,...``."""

    text: str

    def __str__(self) -> str:
        return self.text

    @property
    def size(self) -> int:
        return int(self.text.split(":", 1)[0])

    def to_preorder(self) -> Preorder:
        n_txt, _, body = self.text.partition(":")
        n = int(n_txt)
        pairs = []
        if body:
            for tok in body.split(","):
                i, j = tok.split("<")
                pairs.append((i, j))
        return Preorder.from_relations([str(i) for i in range(n)], pairs)

    def to_text(self) -> str:
        return self.to_preorder().to_text()


@dataclass(frozen=True)
class AutStats:
    sigma: int
    vertex_orbits: tuple[tuple[str, ...], ...]


# -- colour refinement ----------------------------------------------------


def _refine_many(graphs: Sequence[Preorder], colorings: Sequence[Colors]) -> list[Colors] | None:
    """Jointly refine colourings of several graphs to a stable partition.

    Colour names are shared across the graphs, so matching colours are
    comparable.  Returns None as soon as the colour histograms diverge, which
    proves that no colour-preserving isomorphism exists.
    """
    cols = [list(c) for c in colorings]
    ncolors = -1
    while True:
        sigs = []
        for t, c in zip(graphs, cols):
            sig = []
            for i in range(t.n):
                ups = tuple(sorted(c[j] for j in bits(t.up[i] & ~t.down[i])))
                downs = tuple(sorted(c[j] for j in bits(t.down[i] & ~t.up[i])))
                same = tuple(sorted(c[j] for j in bits(t.up[i] & t.down[i])))
                sig.append((c[i], downs, ups, same))
            sigs.append(sig)
        ranking = {s: k for k, s in enumerate(sorted(set().union(*map(set, sigs))))}
        cols = [[ranking[s] for s in sig] for sig in sigs]
        hist = [sorted(c) for c in cols]
        if any(h != hist[0] for h in hist[1:]):
            return None
        if len(ranking) == ncolors:
            return [tuple(c) for c in cols]
        ncolors = len(ranking)


def _refine(t: Preorder, colors: Colors) -> Colors:
    out = _refine_many([t], [colors])
    assert out is not None
    return out[0]


def _individualize(colors: Colors, v: int) -> Colors:
    # v goes first inside its cell; relative order of all other cells kept.
    return tuple(2 * c + (0 if i == v else 1) for i, c in enumerate(colors))


def _target_cell(colors: Colors) -> list[int] | None:
    counts: dict[int, list[int]] = {}
    for i, c in enumerate(colors):
        counts.setdefault(c, []).append(i)
    for c in sorted(counts):
        if len(counts[c]) > 1:
            return counts[c]
    return None


def _iso_exists(a: Preorder, ca: Colors, b: Preorder, cb: Colors) -> bool:
    refined = _refine_many([a, b], [ca, cb])
    if refined is None:
        return False
    ca, cb = refined
    cell = _target_cell(ca)
    if cell is None:
        where = {c: i for i, c in enumerate(cb)}
        m = [where[c] for c in ca]
        for i in range(a.n):
            row = 0
            for j in bits(a.up[i]):
                row |= 1 << m[j]
            if row != b.up[m[i]]:
                return False
        return True
    v = cell[0]
    color = ca[v]
    return any(
        _iso_exists(a, _individualize(ca, v), b, _individualize(cb, w))
        for w in range(b.n)
        if cb[w] == color
    )


def _orbit_reps(t: Preorder, colors: Colors, cell: list[int]) -> list[int]:
    reps: list[int] = []
    for w in cell:
        cw = _individualize(colors, w)
        if not any(_iso_exists(t, _individualize(colors, r), t, cw) for r in reps):
            reps.append(w)
    return reps


def _check_size(t: Preorder, limit: int) -> None:
    if t.n > limit:
        raise SizeLimitExceeded(f"size {t.n} exceeds bound {limit}")


# -- canonical form ------------------------------------------------------


def _leaf(t: Preorder, colors: Colors) -> tuple[tuple[int, ...], list[int]]:
    """Rows of the relabeled matrix and the new position of each vertex."""
    pos = list(colors)
    rows = [0] * t.n
    for i in range(t.n):
        row = 0
        for j in bits(t.up[i]):
            row |= 1 << pos[j]
        rows[pos[i]] = row
    return tuple(rows), pos


def _search(t: Preorder, colors: Colors, best: list) -> None:
    colors = _refine(t, colors)
    cell = _target_cell(colors)
    if cell is None:
        # Dense ranks 0..n-1 once the partition is discrete.
        rank = {c: k for k, c in enumerate(sorted(colors))}
        rows, pos = _leaf(t, tuple(rank[c] for c in colors))
        # Larger rows first puts lower elements at smaller indices.
        cand = tuple(-r for r in rows)
        if best[0] is None or cand < best[0]:
            best[0] = cand
            best[1] = pos
        return
    for v in _orbit_reps(t, colors, cell):
        _search(t, _individualize(colors, v), best)


def _key_text(n: int, rows: Sequence[int]) -> str:
    pairs = [f"{i}<{j}" for i in range(n) for j in bits(rows[i]) if i != j]
    return f"{n}:" + ",".join(pairs)


@lru_cache(maxsize=65536)
def _canonical_cached(t: Preorder) -> tuple[CanonicalKey, tuple[int, ...]]:
    if t.n == 0:
        return CanonicalKey("0:"), ()
    best: list = [None, None]
    _search(t, (0,) * t.n, best)
    rows = tuple(-r for r in best[0])
    return CanonicalKey(_key_text(t.n, rows)), tuple(best[1])


def canonical_form(t: Preorder, limit: int = CANON_LIMIT) -> tuple[CanonicalKey, dict[str, str]]:
    """Canonical key plus the relabeling (old label -> ``"0".."n-1"``) achieving it."""
    _check_size(t, limit)
    key, pos = _canonical_cached(t)
    return key, {lab: str(p) for lab, p in zip(t.elements, pos)}


def canonical_key(t: Preorder, limit: int = CANON_LIMIT) -> CanonicalKey:
    _check_size(t, limit)
    return _canonical_cached(t)[0]


def canonical_representative(t: Preorder) -> Preorder:
    return canonical_key(t).to_preorder()


def is_homeomorphic(t1: Preorder, t2: Preorder) -> bool:
    if t1.n != t2.n:
        return False
    return canonical_key(t1) == canonical_key(t2)


# -- automorphisms ---------------------------------------------------------


def _count_automorphisms(t: Preorder, colors: Colors) -> int:
    colors = _refine(t, colors)
    cell = _target_cell(colors)
    if cell is None:
        return 1
    v = cell[0]
    cv = _individualize(colors, v)
    orbit = sum(1 for w in cell if _iso_exists(t, cv, t, _individualize(colors, w)))
    return orbit * _count_automorphisms(t, cv)


@lru_cache(maxsize=65536)
def _aut_cached(t: Preorder) -> AutStats:
    start = (0,) * t.n
    sigma = _count_automorphisms(t, start)
    seen = 0
    orbits = []
    for v in range(t.n):
        if seen >> v & 1:
            continue
        cv = _individualize(start, v)
        orb = [w for w in range(t.n) if w == v or _iso_exists(t, cv, t, _individualize(start, w))]
        for w in orb:
            seen |= 1 << w
        orbits.append(tuple(t.elements[w] for w in orb))
    return AutStats(sigma, tuple(orbits))


def automorphisms(t: Preorder, limit: int = CANON_LIMIT) -> AutStats:
    """Order of the homeomorphism group and its vertex orbits."""
    _check_size(t, limit)
    return _aut_cached(t)


def sigma(t: Preorder) -> int:
    return automorphisms(t).sigma


def eval_functional(ref: Preorder, t: Preorder, strict: bool = False) -> int:
    """``e_ref(t)``: the symmetry factor of ``ref`` if ``t`` matches it, else 0.

    ``strict=False`` matches up to homeomorphism; ``strict=True`` demands
    equality as labeled spaces.
    """
    if strict:
        return sigma(ref) if ref == t else 0
    return sigma(ref) if is_homeomorphic(ref, t) else 0


# -- brute-force oracles ---------------------------------------------------


def brute_force_automorphisms(t: Preorder) -> list[tuple[int, ...]]:
    """Every relation-preserving permutation (as index tuples); for tests only."""
    out = []
    for perm in permutations(range(t.n)):
        ok = True
        for i in range(t.n):
            row = 0
            for j in bits(t.up[i]):
                row |= 1 << perm[j]
            if row != t.up[perm[i]]:
                ok = False
                break
        if ok:
            out.append(perm)
    return out


# -- enumeration -----------------------------------------------------------


def _transitive(rows: Sequence[int]) -> bool:
    for row in rows:
        for j in bits(row):
            if rows[j] & ~row:
                return False
    return True


@lru_cache(maxsize=None)
def _labeled_rows(n: int) -> tuple[tuple[int, ...], ...]:
    if n <= 4:
        slots = [(i, j) for i in range(n) for j in range(n) if i != j]
        out = []
        for pattern in range(1 << len(slots)):
            rows = [1 << i for i in range(n)]
            for k, (i, j) in enumerate(slots):
                if pattern >> k & 1:
                    rows[i] |= 1 << j
            if _transitive(rows):
                out.append(tuple(rows))
        return tuple(out)
    # One new element on top of every (n-1)-topology: choose its strict
    # up-set and down-set, keep the transitive results.
    out = []
    m = n - 1
    new_bit = 1 << m
    for base in _labeled_rows(m):
        for upset in range(1 << m):
            for downset in range(1 << m):
                rows = [r | new_bit if downset >> i & 1 else r for i, r in enumerate(base)]
                rows.append(upset | new_bit)
                if _transitive(rows):
                    out.append(tuple(rows))
    return tuple(out)


def enumerate_labeled(n: int, limit: int = ENUM_LIMIT) -> Iterator[Preorder]:
    """Every topology on labels ``"0".."n-1"`` exactly once."""
    if n < 0 or n > limit:
        raise SizeLimitExceeded(f"enumeration size {n} outside 0..{limit}")
    labels = [str(i) for i in range(n)]
    for rows in _labeled_rows(n):
        yield _assemble(labels, rows)


@lru_cache(maxsize=None)
def _unlabeled(n: int) -> tuple[Preorder, ...]:
    keys = {canonical_key(t) for t in enumerate_labeled(n, limit=max(n, ENUM_LIMIT))}
    return tuple(k.to_preorder() for k in sorted(keys))


def enumerate_unlabeled(n: int, limit: int = ENUM_LIMIT) -> list[Preorder]:
    """One canonical representative per homeomorphism class, sorted by key."""
    if n < 0 or n > limit:
        raise SizeLimitExceeded(f"enumeration size {n} outside 0..{limit}")
    return list(_unlabeled(n))


def orbit_count_total(n: int) -> int:
    """Sum of ``n!/sigma`` over the unlabeled classes of size n."""
    return sum(math.factorial(n) // sigma(t) for t in enumerate_unlabeled(n))
