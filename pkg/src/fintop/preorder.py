"""Finite topological spaces stored as preorders.

A topology on a finite set is the same thing as a reflexive transitive
relation: open sets are the up-closed subsets.  ``Preorder`` keeps the
relation as one bitmask per element (bit ``j`` of ``up[i]`` is set iff
``element_i <= element_j``).  Elements are always kept in natural label order,
so two values are equal exactly when they are the same labeled topology.

Subsets of the ground set (``SubsetMask``) are plain ints over the element
indices of a specific ``Preorder``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    DuplicateLabel,
    GroundSetMismatch,
    LabelClash,
    NotBijective,
    NotFiner,
    ParseError,
    TransitivityBroken,
    UnknownLabel,
)

SubsetMask = int

_CHUNK = re.compile(r"\d+|\D+")


def label_key(label: str) -> tuple:
    """Natural sort key: ``"2" < "10"``, ``"a" < "a1" < "b"``."""
    chunks = tuple((0, int(c)) if c.isdigit() else (1, c) for c in _CHUNK.findall(label))
    return (chunks, label)


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _close(n: int, up: list[int]) -> list[int]:
    """Reflexive-transitive closure (Warshall on bit rows)."""
    up = [row | (1 << i) for i, row in enumerate(up)]
    for k in range(n):
        kbit = 1 << k
        row_k = up[k]
        for i in range(n):
            if up[i] & kbit:
                up[i] |= row_k
    return up


def _assemble(labels: Sequence[str], up: Sequence[int]) -> "Preorder":
    """Build a Preorder from rows indexed like ``labels`` (any order)."""
    n = len(labels)
    order = sorted(range(n), key=lambda i: label_key(labels[i]))
    if order == list(range(n)):
        return Preorder(tuple(labels), tuple(up))
    pos = [0] * n
    for new, old in enumerate(order):
        pos[old] = new
    rows = []
    for old in order:
        row = 0
        for j in bits(up[old]):
            row |= 1 << pos[j]
        rows.append(row)
    return Preorder(tuple(labels[i] for i in order), tuple(rows))


@dataclass(frozen=True)
class Preorder:
    """A labeled finite topological space.

    Build values with :meth:`from_relations`, :func:`parse` or the JSON
    helpers; the raw constructor trusts its arguments.
    """

    elements: tuple[str, ...]
    up: tuple[int, ...]

    # -- construction -------------------------------------------------

    @classmethod
    def from_relations(
        cls, elements: Iterable[str], pairs: Iterable[tuple[str, str]] = ()
    ) -> "Preorder":
        """Reflexive-transitive closure of ``pairs`` on ``elements``."""
        labels = [str(e) for e in elements]
        index: dict[str, int] = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise DuplicateLabel(lab)
            index[lab] = i
        up = [0] * len(labels)
        for x, y in pairs:
            try:
                up[index[str(x)]] |= 1 << index[str(y)]
            except KeyError as exc:
                raise UnknownLabel(str(exc.args[0])) from None
        return _assemble(labels, _close(len(labels), up))

    @classmethod
    def empty(cls) -> "Preorder":
        return cls((), ())

    @classmethod
    def point(cls, label: str) -> "Preorder":
        return cls((label,), (1,))

    @classmethod
    def discrete(cls, labels: Iterable[str]) -> "Preorder":
        return cls.from_relations(labels)

    @classmethod
    def chain(cls, labels: Sequence[str]) -> "Preorder":
        return cls.from_relations(labels, zip(labels, labels[1:]))

    # -- basic accessors ----------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> SubsetMask:
        return (1 << len(self.elements)) - 1

    @cached_property
    def index(self) -> Mapping[str, int]:
        return {lab: i for i, lab in enumerate(self.elements)}

    @cached_property
    def down(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i, row in enumerate(self.up):
            for j in bits(row):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def label_set(self) -> frozenset[str]:
        return frozenset(self.elements)

    def leq(self, x: str, y: str) -> bool:
        return bool(self.up[self.index[x]] >> self.index[y] & 1)

    def mask(self, labels: Iterable[str]) -> SubsetMask:
        m = 0
        for lab in labels:
            try:
                m |= 1 << self.index[lab]
            except KeyError:
                raise UnknownLabel(lab) from None
        return m

    def labels(self, mask: SubsetMask) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in bits(mask))

    def strict_pairs(self) -> list[tuple[str, str]]:
        """Non-reflexive pairs ``(x, y)`` with ``x <= y``, in label order."""
        return [
            (self.elements[i], self.elements[j])
            for i, row in enumerate(self.up)
            for j in bits(row)
            if i != j
        ]

    def is_valid(self) -> bool:
        """Reflexive, transitive, no stray bits, distinct labels."""
        full = self.full_mask
        if len(set(self.elements)) != self.n:
            return False
        for i, row in enumerate(self.up):
            if not row >> i & 1 or row & ~full:
                return False
            for j in bits(row):
                if self.up[j] & ~row:
                    return False
        return True

    # -- topology -----------------------------------------------------

    def is_open(self, y: SubsetMask) -> bool:
        return all(self.up[i] & ~y == 0 for i in bits(y))

    def open_sets(self) -> list[SubsetMask]:
        """All up-closed subsets, in increasing mask order."""
        # Grow from the empty set by adding up-sets; fine for the desk sizes used here.
        found = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for y in frontier:
                for i in range(self.n):
                    z = y | self.up[i]
                    if z not in found:
                        found.add(z)
                        nxt.append(z)
            frontier = nxt
        return sorted(found)

    def restrict(self, y: SubsetMask) -> "Preorder":
        idx = list(bits(y))
        pos = {old: new for new, old in enumerate(idx)}
        rows = []
        for old in idx:
            row = 0
            for j in bits(self.up[old] & y):
                row |= 1 << pos[j]
            rows.append(row)
        return Preorder(tuple(self.elements[i] for i in idx), tuple(rows))

    def restrict_labels(self, labels: Iterable[str]) -> "Preorder":
        return self.restrict(self.mask(labels))

    def component_masks(self) -> list[SubsetMask]:
        """Weakly connected components, ordered by smallest element index."""
        sym = [self.up[i] | self.down[i] for i in range(self.n)]
        seen = 0
        comps = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp = 1 << start
            frontier = comp
            while frontier:
                i = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                new = sym[i] & ~comp
                comp |= new
                frontier |= new
            seen |= comp
            comps.append(comp)
        return comps

    def connected_components(self) -> list[tuple[str, ...]]:
        return [self.labels(c) for c in self.component_masks()]

    @cached_property
    def components(self) -> tuple["Preorder", ...]:
        return tuple(self.restrict(c) for c in self.component_masks())

    def is_connected(self) -> bool:
        """True for one component; the empty space counts as connected."""
        return len(self.component_masks()) <= 1

    def class_masks(self) -> list[SubsetMask]:
        seen = 0
        out = []
        for i in range(self.n):
            if seen >> i & 1:
                continue
            cls = self.up[i] & self.down[i]
            seen |= cls
            out.append(cls)
        return out

    def equiv_classes(self) -> list[tuple[str, ...]]:
        return [self.labels(c) for c in self.class_masks()]

    def is_t0(self) -> bool:
        return all(self.up[i] & self.down[i] == 1 << i for i in range(self.n))

    def min_set(self) -> SubsetMask:
        """Elements minimal up to equivalence: ``y <= x`` implies ``x <= y``."""
        m = 0
        for i in range(self.n):
            if self.down[i] & ~self.up[i] == 0:
                m |= 1 << i
        return m

    def max_set(self) -> SubsetMask:
        m = 0
        for i in range(self.n):
            if self.up[i] & ~self.down[i] == 0:
                m |= 1 << i
        return m

    def opposite(self) -> "Preorder":
        """The involution ``j``: reverse every comparison."""
        return Preorder(self.elements, self.down)

    def is_finer_than(self, other: "Preorder") -> bool:
        if self.elements != other.elements:
            raise GroundSetMismatch(f"{self.elements} vs {other.elements}")
        return all(a & ~b == 0 for a, b in zip(self.up, other.up))

    def quotient(self, finer: "Preorder") -> "Preorder":
        """``self / finer``: closure of ``x <= y`` (self) or ``y <= x`` (finer)."""
        if not finer.is_finer_than(self):
            raise NotFiner(f"{finer} is not finer than {self}")
        up = [self.up[i] | finer.down[i] for i in range(self.n)]
        return Preorder(self.elements, tuple(_close(self.n, up)))

    def psi(self, a1: SubsetMask, a2: SubsetMask) -> "Preorder":
        """Make every element of ``a1`` incomparable with every element of ``a2``.

        Raises TransitivityBroken rather than re-closing, since closure would
        restore the deleted pairs.
        """
        if a1 & a2:
            raise ValueError("psi blocks must be disjoint")
        rows = list(self.up)
        for i in bits(a1):
            rows[i] &= ~a2
        for i in bits(a2):
            rows[i] &= ~a1
        for i, row in enumerate(rows):
            for j in bits(row):
                if rows[j] & ~row:
                    a, b = self.elements[i], self.elements[j]
                    raise TransitivityBroken(f"{a}<={b} survives but up-set of {b} is not inside that of {a}")
        return Preorder(self.elements, tuple(rows))

    def relabel(self, mapping: Mapping[str, str]) -> "Preorder":
        """Rename labels through a bijection defined on every element."""
        try:
            new = [str(mapping[lab]) for lab in self.elements]
        except KeyError as exc:
            raise NotBijective(f"no image for {exc.args[0]!r}") from None
        if len(set(new)) != len(new):
            raise NotBijective("labels collide after relabeling")
        return _assemble(new, self.up)

    def up_labels(self, x: str) -> tuple[str, ...]:
        return self.labels(self.up[self.index[x]])

    def down_labels(self, x: str) -> tuple[str, ...]:
        return self.labels(self.down[self.index[x]])

    # -- serialization ------------------------------------------------

    def to_text(self) -> str:
        """Compact form, e.g. ``{a<b, a<c, b~d, e}``; bit-exact round trip."""
        tokens: list[tuple[tuple, str]] = []
        touched = 0
        for i, row in enumerate(self.up):
            for j in bits(row):
                if i == j:
                    continue
                touched |= 1 << i | 1 << j
                x, y = self.elements[i], self.elements[j]
                if self.up[j] >> i & 1:
                    if i < j:
                        tokens.append(((label_key(x), label_key(y)), f"{x}~{y}"))
                else:
                    tokens.append(((label_key(x), label_key(y)), f"{x}<{y}"))
        for i in range(self.n):
            if not touched >> i & 1:
                x = self.elements[i]
                tokens.append(((label_key(x), ()), x))
        tokens.sort(key=lambda t: t[0])
        return "{" + ", ".join(t for _, t in tokens) + "}"

    def __str__(self) -> str:
        return self.to_text()

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "relations": [list(p) for p in self.strict_pairs()]}


def product(*spaces: Preorder) -> Preorder:
    """Disjoint-union topology; the empty space is the unit."""
    labels: list[str] = []
    rows: list[int] = []
    seen: set[str] = set()
    for t in spaces:
        clash = seen & t.label_set
        if clash:
            raise LabelClash(", ".join(sorted(clash, key=label_key)))
        seen |= t.label_set
        shift = len(labels)
        labels.extend(t.elements)
        rows.extend(r << shift for r in t.up)
    return _assemble(labels, rows)


def check_disjoint(*spaces: Preorder) -> None:
    seen: set[str] = set()
    for t in spaces:
        clash = seen & t.label_set
        if clash:
            raise LabelClash(", ".join(sorted(clash, key=label_key)))
        seen |= t.label_set


# -- text / JSON input --------------------------------------------------

_LABEL = r"[^\s,<~{}|\[\]\"]+"



def parse(text: str) -> Preorder:
    """Parse the compact text form or the JSON object form.

    Text grammar: ``{rel, rel, ...}`` where ``rel`` is a bare label or a
    chain such as ``a<b~c<d`` (``~`` declares both directions).
    """
    s = text.strip()
    if s.startswith("{") and '"' in s:
        try:
            return from_json(json.loads(s))
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from None
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError(f"expected '{{...}}', got {text!r}")
    body = s[1:-1].strip()
    elements: list[str] = []
    seen: set[str] = set()
    pairs: list[tuple[str, str]] = []

    def note(lab: str) -> None:
        if lab not in seen:
            seen.add(lab)
            elements.append(lab)

    if body:
        for rel in body.split(","):
            parts = re.split(r"\s*([<~])\s*", rel.strip())
            if not rel.strip() or len(parts) % 2 == 0:
                raise ParseError(f"bad relation {rel!r}")
            labels = parts[0::2]
            ops = parts[1::2]
            for lab in labels:
                if not re.fullmatch(_LABEL, lab):
                    raise ParseError(f"bad label {lab!r}")
                note(lab)
            for op, x, y in zip(ops, labels, labels[1:]):
                pairs.append((x, y))
                if op == "~":
                    pairs.append((y, x))
    return Preorder.from_relations(elements, pairs)


def from_json(obj: dict) -> Preorder:
    try:
        elements = [str(e) for e in obj["elements"]]
        pairs = [(str(x), str(y)) for x, y in obj.get("relations", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad JSON preorder: {exc}") from None
    return Preorder.from_relations(elements, pairs)
