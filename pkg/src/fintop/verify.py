"""Verification suites producing machine-readable reports.

Each suite checks one family of identities exhaustively up to ``max_size``
(and, where noted, on seeded random instances above it).  Random draws use
``random.Random(f"{suite}:{seed}:{i}")`` so instance ``i`` is reproducible
on its own, whatever order instances run in.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from itertools import product as cartesian
from typing import Callable, Iterator

from .canonical import enumerate_labeled, enumerate_unlabeled, sigma
from .coproducts import (
    admissible_graft_cuts,
    bialgebra_defect,
    coassoc_defect,
    counit_sides,
    delta_ffm,
    delta_graft,
    gamma,
    gamma_compat_sides,
    regraft,
)
from .envelope import (
    gl_star,
    gl_star_lin,
    pairing_lhs,
    pairing_rhs,
    star_tensor,
    unshuffle,
    unshuffle_lin,
)
from .errors import SizeLimitExceeded, TransitivityBroken
from .grafting import (
    assoc_prop_check,
    commute_prop_check,
    corollary_sides,
    graft_at,
    graft_up_at,
    j_lin,
    prelie_defect,
    prelie_defect_formula,
    prop5_sides,
    psi_labels,
    theorem5_sides,
)
from .linear import EMPTY, LinComb
from .preorder import Preorder, parse

# Frozen oracle values (labeled / unlabeled topology counts), recomputed by
# brute force in the test suite.
LABELED_COUNTS = (1, 1, 4, 29, 355, 6942)
UNLABELED_COUNTS = (1, 1, 3, 9, 33, 139)


@dataclass
class VerificationReport:
    suite: str
    bounds: dict
    seed: int
    instances: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, **operands) -> None:
        self.failures.append({"check": check, **{k: str(v) for k, v in operands.items()}})

    def to_dict(self) -> dict:
        return asdict(self)


# -- instance generators ----------------------------------------------------


def labeled_on(n: int, prefix: str) -> Iterator[Preorder]:
    """Every labeled topology on ``prefix0 .. prefix{n-1}``."""
    names = {str(i): f"{prefix}{i}" for i in range(n)}
    for t in enumerate_labeled(n, limit=max(n, 5)):
        yield t.relabel(names)


def connected_labeled(max_n: int, prefix: str) -> list[Preorder]:
    return [t for n in range(1, max_n + 1) for t in labeled_on(n, prefix) if t.is_connected()]


def unlabeled_on(n: int, prefix: str) -> list[Preorder]:
    return [t.relabel({str(i): f"{prefix}{i}" for i in range(n)}) for t in enumerate_unlabeled(n, limit=max(n, 5))]


def random_connected(rng: random.Random, max_n: int, prefix: str) -> Preorder:
    n = rng.randint(1, max_n)
    pool = [t for t in labeled_on(n, prefix) if t.is_connected()]
    return rng.choice(pool)


def _rng(suite: str, seed: int, i: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{i}")


def _bound(suite: str, k: int, hi: int, lo: int = 0) -> None:
    if not lo <= k <= hi:
        raise SizeLimitExceeded(f"suite {suite} accepts --max-size in {lo}..{hi}, got {k}")


# -- suites ------------------------------------------------------------------


def suite_prelie(rep: VerificationReport, k: int, seed: int, random_count: int = 200) -> None:
    _bound("prelie", k, 3, 1)
    rep.bounds.update(exhaustive_size=k, random_triples=random_count, random_size=k + 1)

    def check(t1: Preorder, t2: Preorder, t3: Preorder) -> None:
        rep.instances += 1
        d = prelie_defect(t1, t2, t3)
        if d != prelie_defect(t2, t1, t3):
            rep.fail("left pre-Lie symmetry", t1=t1, t2=t2, t3=t3)
        if d != prelie_defect_formula(t1, t2, t3):
            rep.fail("defect closed form", t1=t1, t2=t2, t3=t3)
        du = prelie_defect(t1, t2, t3, up=True)
        if du != prelie_defect(t2, t1, t3, up=True):
            rep.fail("left pre-Lie symmetry (up)", t1=t1, t2=t2, t3=t3)
        if du != j_lin(prelie_defect(t1.opposite(), t2.opposite(), t3.opposite())):
            rep.fail("j transport of the defect", t1=t1, t2=t2, t3=t3)

    for t1, t2, t3 in cartesian(
        connected_labeled(k, "a"), connected_labeled(k, "b"), connected_labeled(k, "c")
    ):
        check(t1, t2, t3)
    for i in range(random_count):
        rng = _rng("prelie", seed, i)
        check(*(random_connected(rng, k + 1, p) for p in "abc"))


def suite_assoc_props(rep: VerificationReport, k: int, seed: int) -> None:
    _bound("assoc-props", k, 3, 1)
    rep.bounds.update(exhaustive_size=k)
    spaces = {p: [t for n in range(1, k + 1) for t in labeled_on(n, p)] for p in "abc"}
    for t1, t2, t3 in cartesian(spaces["a"], spaces["b"], spaces["c"]):
        for u in t2.elements:
            for w in t3.elements:
                rep.instances += 1
                if not assoc_prop_check(t1, t2, t3, u, w):
                    rep.fail("associativity at vertices", t1=t1, t2=t2, t3=t3, u=u, w=w)
        for v in t3.elements:
            for w in t3.elements:
                rep.instances += 1
                if not commute_prop_check(t1, t2, t3, v, w):
                    rep.fail("commutation at vertices", t1=t1, t2=t2, t3=t3, v=v, w=w)


def suite_coassoc(rep: VerificationReport, k: int, seed: int) -> None:
    _bound("coassoc", k, 5)
    rep.bounds.update(exhaustive_size=k)
    for n in range(k + 1):
        for t in labeled_on(n, "x"):
            for name, cop in (("ffm", delta_ffm), ("graft", delta_graft)):
                rep.instances += 1
                if coassoc_defect(cop, t):
                    rep.fail(f"coassociativity {name}", t=t)
                left, right = counit_sides(cop, t)
                if left != LinComb.of(t) or right != LinComb.of(t):
                    rep.fail(f"counit {name}", t=t)
            rep.instances += 1
            # unshuffle is the third coproduct in play
            u = unshuffle(t)
            if LinComb({(b, a): c for (a, b), c in u.items()}) != u:
                rep.fail("unshuffle cocommutativity", t=t)


def suite_bialgebra(rep: VerificationReport, k: int, seed: int) -> None:
    _bound("bialgebra", k, 5)
    rep.bounds.update(total_size=k)
    for n1 in range(k + 1):
        for n2 in range(k + 1 - n1):
            for t1, t2 in cartesian(list(labeled_on(n1, "a")), list(labeled_on(n2, "b"))):
                for name, cop in (("ffm", delta_ffm), ("graft", delta_graft)):
                    rep.instances += 1
                    if bialgebra_defect(cop, t1, t2):
                        rep.fail(f"multiplicativity {name}", t1=t1, t2=t2)


def suite_duality(rep: VerificationReport, k: int, seed: int) -> None:
    _bound("duality", k, 2, 1)
    rep.bounds.update(factor_size=k, target_size=2 * k)
    for n1 in range(1, k + 1):
        for n2 in range(1, k + 1):
            for t1 in enumerate_unlabeled(n1):
                for t2 in enumerate_unlabeled(n2):
                    for tp in enumerate_labeled(n1 + n2):
                        rep.instances += 1
                        lhs, rhs = pairing_lhs(t1, t2, tp), pairing_rhs(t1, t2, tp)
                        if lhs != rhs:
                            rep.fail("pairing", t1=t1, t2=t2, tp=tp, lhs=lhs, rhs=rhs)
    # Cuts regraft to the original space, and star terms come from cuts.
    for n in range(2 * k + 1):
        for t in labeled_on(n, "z"):
            for cut in admissible_graft_cuts(t):
                rep.instances += 1
                if regraft(t, cut) != t:
                    rep.fail("regraft", t=t, cut=",".join(t.labels(cut.y)))
    for n1 in range(1, k + 1):
        for n2 in range(1, k + 1):
            for a, b in cartesian(unlabeled_on(n1, "x"), unlabeled_on(n2, "y")):
                for (w,), _ in gl_star(a, b).items():
                    rep.instances += 1
                    y = w.mask(a.elements)
                    if all(c.y != y for c in admissible_graft_cuts(w)):
                        rep.fail("star term is a cut", a=a, b=b, term=w)


def suite_psi_diagrams(rep: VerificationReport, k: int, seed: int) -> None:
    _bound("psi-diagrams", k, 3, 1)
    rep.bounds.update(exhaustive_size=k)
    spaces = {p: connected_labeled(k, p) for p in "tsu"}
    for t, s, u in cartesian(spaces["t"], spaces["s"], spaces["u"]):
        for sv in s.elements:
            for uv in u.elements:
                for name, sides, pre in (
                    ("theorem", theorem5_sides, lambda: graft_at(graft_up_at(t, s, sv), u, uv)),
                    ("corollary", corollary_sides, lambda: graft_up_at(graft_at(t, s, sv), u, uv)),
                ):
                    rep.instances += 1
                    try:
                        left, right = sides(t, s, u, sv, uv)
                    except TransitivityBroken as exc:
                        rep.fail(f"{name} diagram (psi undefined)", t=t, s=s, u=u, s_v=sv, u_v=uv, error=exc)
                        continue
                    if left != right:
                        rep.fail(f"{name} diagram", t=t, s=s, u=u, s_v=sv, u_v=uv)
                    once = psi_labels(pre(), t.elements, u.elements)
                    if psi_labels(once, t.elements, u.elements) != once:
                        rep.fail("psi idempotence", t=t, s=s, u=u, s_v=sv, u_v=uv)
        rep.instances += 1
        try:
            left, right = prop5_sides(t, s, u)
        except TransitivityBroken as exc:
            rep.fail("mixed identity (psi undefined)", t=t, s=s, u=u, error=exc)
            continue
        if left != right:
            rep.fail("mixed identity", t=t, s=s, u=u)


DIAMOND = parse("{a<b, a<c, b<d, c<d}")


def suite_gamma_witness(rep: VerificationReport, k: int, seed: int) -> None:
    _bound("gamma-witness", k, 4, 1)
    rep.bounds.update(alternative_reading_size=k)
    rep.instances += 1
    lhs, rhs = gamma_compat_sides(DIAMOND)
    if lhs == rhs:
        rep.fail("diamond incompatibility", t=DIAMOND)
    rep.notes["diamond_lhs_terms"] = len(lhs)
    rep.notes["diamond_rhs_terms"] = len(rhs)
    rep.instances += 1
    chain = parse("{a<b}")
    got = gamma(chain)
    want = LinComb({(parse("{a, b}"), chain): 1, (chain, parse("{a~b}")): 1})
    if got != want:
        rep.fail("gamma of chain", got=" ; ".join(got.to_lines()))
    affected_labeled = 0
    affected_classes = 0
    for n in range(k + 1):
        for t in labeled_on(n, "x"):
            rep.instances += 1
            if gamma(t) != gamma(t, alternative=True):
                affected_labeled += 1
        for t in enumerate_unlabeled(n):
            if gamma(t) != gamma(t, alternative=True):
                affected_classes += 1
    rep.notes["alternative_reading_affected_labeled"] = affected_labeled
    rep.notes["alternative_reading_affected_classes"] = affected_classes


def suite_counts(rep: VerificationReport, k: int, seed: int) -> None:
    _bound("counts", k, 5)
    rep.bounds.update(max_size=k)
    rows = []
    for n in range(k + 1):
        rep.instances += 1
        labeled = sum(1 for _ in enumerate_labeled(n))
        classes = enumerate_unlabeled(n)
        orbit_sum = sum(math.factorial(n) // sigma(t) for t in classes)
        rows.append({"n": n, "labeled": labeled, "unlabeled": len(classes), "orbit_sum": orbit_sum})
        if labeled != LABELED_COUNTS[n] or len(classes) != UNLABELED_COUNTS[n] or orbit_sum != labeled:
            rep.fail("counts", n=n, labeled=labeled, unlabeled=len(classes), orbit_sum=orbit_sum)
    rep.notes["rows"] = rows


def suite_hopf_star(rep: VerificationReport, k: int, seed: int) -> None:
    """Over homeomorphism-class representatives; labeled cases follow by equivariance."""
    _bound("hopf-star", k, 5)
    rep.bounds.update(total_size=k, basis="class representatives")
    reps = {p: {n: unlabeled_on(n, p) for n in range(k + 1)} for p in "abc"}
    for n1 in range(k + 1):
        for n2 in range(k + 1 - n1):
            for a, b in cartesian(reps["a"][n1], reps["b"][n2]):
                rep.instances += 1
                ab = gl_star(a, b)
                if unshuffle_lin(ab) != star_tensor(unshuffle(a), unshuffle(b)):
                    rep.fail("unshuffle multiplicativity", a=a, b=b)
                for n3 in range(k + 1 - n1 - n2):
                    for c in reps["c"][n3]:
                        rep.instances += 1
                        lc = LinComb.of(c)
                        if gl_star_lin(ab, lc) != gl_star_lin(LinComb.of(a), gl_star(b, c)):
                            rep.fail("associativity", a=a, b=b, c=c)
            for a in reps["a"][n1]:
                if n2 == 0:
                    rep.instances += 1
                    if gl_star(a, EMPTY) != LinComb.of(a) or gl_star(EMPTY, a) != LinComb.of(a):
                        rep.fail("unit", a=a)


SUITES: dict[str, tuple[Callable[[VerificationReport, int, int], None], int]] = {
    "prelie": (suite_prelie, 2),
    "assoc-props": (suite_assoc_props, 2),
    "coassoc": (suite_coassoc, 4),
    "bialgebra": (suite_bialgebra, 4),
    "duality": (suite_duality, 2),
    "psi-diagrams": (suite_psi_diagrams, 2),
    "gamma-witness": (suite_gamma_witness, 4),
    "counts": (suite_counts, 4),
    "hopf-star": (suite_hopf_star, 5),
}


def run_suite(name: str, max_size: int | None = None, seed: int = 0) -> VerificationReport:
    fn, default = SUITES[name]
    k = default if max_size is None else max_size
    rep = VerificationReport(suite=name, bounds={"max_size": k}, seed=seed)
    start = time.perf_counter()
    fn(rep, k, seed)
    rep.wall_time = round(time.perf_counter() - start, 3)
    return rep
