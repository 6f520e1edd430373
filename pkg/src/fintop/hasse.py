"""Graphviz export of the Hasse diagram of the quotient poset."""
from __future__ import annotations

from .preorder import Preorder, bits


def covering_pairs(t: Preorder) -> tuple[list[int], list[tuple[int, int]]]:
    """Class masks (in order of their first element) and covering edges between them."""
    classes = sorted(t.class_masks(), key=lambda m: (m & -m))
    rep = [next(bits(m)) for m in classes]
    k = len(classes)
    strictly = [[False] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            if a != b and t.up[rep[a]] >> rep[b] & 1:
                strictly[a][b] = True
    edges = []
    for a in range(k):
        for b in range(k):
            if strictly[a][b] and not any(strictly[a][c] and strictly[c][b] for c in range(k)):
                edges.append((a, b))
    return classes, edges


def to_dot(t: Preorder, name: str = "T") -> str:
    classes, edges = covering_pairs(t)
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for i, m in enumerate(classes):
        label = ",".join(t.labels(m))
        shape = " shape=box" if m & (m - 1) else ""
        lines.append(f'  n{i} [label="{label}"{shape}];')
    for a, b in edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
