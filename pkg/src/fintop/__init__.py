"""Finite topological spaces as preorders: grafting, the ``⋆`` product,
coproducts and exhaustive identity checks."""
from __future__ import annotations

from .canonical import (
    CanonicalKey,
    automorphisms,
    canonical_form,
    canonical_key,
    enumerate_labeled,
    enumerate_unlabeled,
    is_homeomorphic,
    sigma,
)
from .coproducts import admissible_graft_cuts, delta_ffm, delta_graft, gamma
from .envelope import extended_graft, gl_star, pairing_lhs, pairing_rhs, unshuffle
from .errors import FintopError
from .grafting import bplus, graft, graft_at, graft_up, graft_up_at
from .linear import LinComb, pair_functional, project_unlabeled, tensor
from .preorder import Preorder, parse, product

__version__ = "0.1.0"

__all__ = [
    "CanonicalKey",
    "FintopError",
    "LinComb",
    "Preorder",
    "admissible_graft_cuts",
    "automorphisms",
    "bplus",
    "canonical_form",
    "canonical_key",
    "delta_ffm",
    "delta_graft",
    "enumerate_labeled",
    "enumerate_unlabeled",
    "extended_graft",
    "gamma",
    "gl_star",
    "graft",
    "graft_at",
    "graft_up",
    "graft_up_at",
    "is_homeomorphic",
    "pair_functional",
    "pairing_lhs",
    "pairing_rhs",
    "parse",
    "product",
    "project_unlabeled",
    "sigma",
    "tensor",
    "unshuffle",
]
