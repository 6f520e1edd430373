"""Sparse integer linear combinations of tensor words of topologies.

A word is a tuple of 1 to 3 factors.  Labeled words hold ``Preorder``
factors on pairwise disjoint ground sets; unlabeled words hold
``CanonicalKey`` factors and only arise from :func:`project_unlabeled`.
The empty topology is the unit, so ``T (x) 1`` is ``(T, Preorder.empty())``.
"""
from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .canonical import CanonicalKey, canonical_key, eval_functional
from .errors import GroundSetMismatch, LabelClash, ParseError, RankMismatch, RankOverflow
from .preorder import Preorder, check_disjoint, parse, product

Factor = Union[Preorder, CanonicalKey]
Word = tuple  # tuple[Factor, ...]

MAX_RANK = 3
EMPTY = Preorder.empty()


def _ground(word: Word) -> frozenset[str] | None:
    if not isinstance(word[0], Preorder):
        return None
    out: frozenset[str] = frozenset()
    for f in word:
        out |= f.label_set
    return out


class LinComb:
    """Immutable map from words to nonzero ints."""

    __slots__ = ("_terms", "_rank", "_ground")

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, int] = {}
        for word, c in items:
            if c:
                acc[word] = acc.get(word, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}
        self._rank = None
        self._ground = None
        for w in self._terms:
            self._check_word(w)

    def _check_word(self, w: Word) -> None:
        if not 1 <= len(w) <= MAX_RANK:
            raise RankOverflow(f"tensor rank {len(w)} outside 1..{MAX_RANK}")
        if self._rank is None:
            self._rank = len(w)
            self._ground = _ground(w)
        elif len(w) != self._rank:
            raise RankMismatch(f"rank {len(w)} vs {self._rank}")
        elif self._ground is not None and _ground(w) != self._ground:
            raise GroundSetMismatch("words live on different ground sets")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    @classmethod
    def of(cls, *factors: Factor, coeff: int = 1) -> "LinComb":
        """A single word; labeled factors must be disjoint."""
        if factors and isinstance(factors[0], Preorder):
            check_disjoint(*factors)
        return cls({tuple(factors): coeff})

    @classmethod
    def unit(cls) -> "LinComb":
        return cls.of(EMPTY)

    @classmethod
    def sum_of(cls, items: Iterable["LinComb"]) -> "LinComb":
        acc: dict[Word, int] = {}
        for lc in items:
            for w, c in lc._terms.items():
                acc[w] = acc.get(w, 0) + c
        return cls(acc)

    # -- container protocol ------------------------------------------------

    @property
    def rank(self) -> int | None:
        return self._rank

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, word: Word) -> int:
        return self._terms.get(word, 0)

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- vector space ----------------------------------------------------

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return LinComb(acc)

    def __neg__(self) -> "LinComb":
        return LinComb({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __rmul__(self, k: int) -> "LinComb":
        return scale(k, self)

    def __mul__(self, k: int) -> "LinComb":
        return scale(k, self)

    # -- output ------------------------------------------------------------

    def to_lines(self) -> list[str]:
        rows = []
        for w, c in self._terms.items():
            rows.append((c, " | ".join(_factor_text(f) for f in w)))
        rows.sort(key=lambda r: (r[1], r[0]))
        return [f"{c}\t{txt}" for c, txt in rows]

    def __str__(self) -> str:
        return "\n".join(self.to_lines()) if self._terms else "0"

    def __repr__(self) -> str:
        body = " + ".join(
            f"{c}*({' | '.join(_factor_text(f) for f in w)})" for w, c in sorted(
                self._terms.items(), key=lambda t: " | ".join(_factor_text(f) for f in t[0])
            )
        )
        return f"LinComb({body or '0'})"


def _factor_text(f: Factor) -> str:
    return f.to_text()


def scale(k: int, a: LinComb) -> LinComb:
    return LinComb({w: k * c for w, c in a.items()})


def tensor(a: LinComb, b: LinComb) -> LinComb:
    """Bilinear concatenation of words."""
    if a.rank is not None and b.rank is not None and a.rank + b.rank > MAX_RANK:
        raise RankOverflow(f"rank {a.rank}+{b.rank} exceeds {MAX_RANK}")
    acc: dict[Word, int] = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            if isinstance(wa[0], Preorder):
                _disjoint_words(wa, wb)
            w = wa + wb
            acc[w] = acc.get(w, 0) + ca * cb
    return LinComb(acc)


def _disjoint_words(wa: Word, wb: Word) -> None:
    ga, gb = _ground(wa), _ground(wb)
    if ga & gb:
        raise LabelClash(", ".join(sorted(ga & gb)))


def bilinear(a: LinComb, b: LinComb, f: Callable[[Word, Word], LinComb]) -> LinComb:
    return LinComb.sum_of(scale(ca * cb, f(wa, wb)) for wa, ca in a.items() for wb, cb in b.items())


def linear(a: LinComb, f: Callable[[Word], LinComb]) -> LinComb:
    return LinComb.sum_of(scale(c, f(w)) for w, c in a.items())


def apply_at(a: LinComb, slot: int, f: Callable[[Preorder], LinComb]) -> LinComb:
    """Apply a linear map to one tensor slot, splicing its output words in."""

    def on_word(w: Word) -> LinComb:
        return LinComb({w[:slot] + v + w[slot + 1:]: c for v, c in f(w[slot]).items()})

    return linear(a, on_word)


def multiply(a: LinComb, b: LinComb) -> LinComb:
    """Slotwise disjoint product of equal-rank combinations."""
    if a.rank is not None and b.rank is not None and a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs {b.rank}")
    return bilinear(a, b, lambda wa, wb: LinComb.of(*(product(x, y) for x, y in zip(wa, wb))))


def counit(t: Preorder) -> int:
    return 1 if t.n == 0 else 0


def project_unlabeled(a: LinComb) -> LinComb:
    """Sum coefficients over homeomorphism classes, factor by factor."""
    acc: dict[Word, int] = {}
    for w, c in a.items():
        key = tuple(f if isinstance(f, CanonicalKey) else canonical_key(f) for f in w)
        acc[key] = acc.get(key, 0) + c
    return LinComb(acc)


def pair_functional(refs: Sequence[Preorder], a: LinComb, strict: bool = False) -> int:
    """``<e_ref1 (x) ... (x) e_refk, a>`` with ``e`` the symmetry-factor indicator."""
    if a.rank is not None and a.rank != len(refs):
        raise RankMismatch(f"{len(refs)} functionals against rank {a.rank}")
    total = 0
    for w, c in a.items():
        v = c
        for ref, f in zip(refs, w):
            v *= eval_functional(ref, f, strict=strict)
            if not v:
                break
        total += v
    return total


def from_lines(lines: Iterable[str]) -> LinComb:
    """Inverse of :meth:`LinComb.to_lines` for labeled combinations."""
    acc: dict[Word, int] = {}
    for line in lines:
        if not line.strip():
            continue
        try:
            coeff, body = line.split("\t", 1)
            word = tuple(parse(part) for part in body.split(" | "))
            acc[word] = acc.get(word, 0) + int(coeff)
        except ValueError as exc:
            raise ParseError(f"bad LinComb line {line!r}: {exc}") from None
    return LinComb(acc)
