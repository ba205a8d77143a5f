"""Deliberately corrupted structures, each paired with the check that must catch it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import BasedAlgebra, check_algebra, table_algebra
from .antipode import AntipodeMap, GeneralizedInverse, check_antipode_identities, check_geninv_conditions
from .coproduct import Coproduct, DualPairing, check_full, check_pairing
from .families import build_CG, build_KG
from .groupoid import Groupoid, pair_groupoid, validate_groupoid
from .linalg import LinOp, Vec, ZERO_VEC
from .report import Check, VerificationReport
from .sampling import rng_for
from .scalars import ONE, ZERO
from .wmha import CanonicalIdempotent, check_E_laws, check_kernels


@dataclass
class Mutation:
    name: str
    expected: str          # id of the check that must fail
    run: Callable[[int], VerificationReport]


def _g2() -> Groupoid:
    return pair_groupoid([1, 2])


def _broken_guard(seed: int) -> VerificationReport:
    g = _g2()
    # composes every pair, ignoring whether source meets target
    bad = Groupoid("pair2 without guard", g.source, g.target, lambda p, q: (p[0], q[1]), g.inverse, g.elements)
    return validate_groupoid(bad)


def _identity_antipode(seed: int) -> VerificationReport:
    st = build_KG(_g2())
    S = AntipodeMap(st.algebra, 1, endo=LinOp(Vec.basis, "id"), inverse=LinOp(Vec.basis), name="S=id")
    return check_antipode_identities(S, st.cp, st.window(), "direct")


def _swapped_F(seed: int) -> VerificationReport:
    st = build_KG(_g2())
    return check_kernels(st.cp, st.E, st.F[2], st.F[1], st.window())


def _identity_star(seed: int) -> VerificationReport:
    st = build_CG(_g2())
    A = st.algebra
    bad = BasedAlgebra(A.name + " star=id", A.mult, basis=A.basis, star=Vec.basis, unit=A.unit)
    return check_algebra(bad, rng=rng_for(seed, "star"))


def _trivial_E(seed: int) -> VerificationReport:
    st = build_KG(_g2())
    cp = st.cp
    one = CanonicalIdempotent(cp, Vec.basis, Vec.basis, lambda a, h: Vec.basis((a, h)), lambda a, c: Vec.basis((a, c)))
    return check_E_laws(one, cp, st.window(), extensions=False)


def _corrupted_table(seed: int) -> VerificationReport:
    g = _g2()
    ok = g.compose

    def compose(p, q):
        if (p, q) == ((2, 1), (1, 2)):
            return (1, 1)
        return ok(p, q)

    return validate_groupoid(Groupoid("pair2 corrupted", g.source, g.target, compose, g.inverse, g.elements))


def _zero_R(seed: int) -> VerificationReport:
    st = build_KG(_g2())
    gi = GeneralizedInverse(1, st.cp, lambda k: ZERO_VEC, "R1=0")
    return check_geninv_conditions(gi, st.cp, st.window())


def _inverted_pairing(seed: int) -> VerificationReport:
    g = _g2()
    kg, cg = build_KG(g), build_CG(g)
    pr = DualPairing(lambda f, p: ONE if f == g.inverse(p) else ZERO, "<f, p^-1>")
    W = g.window()
    return check_pairing(pr, kg.cp, cg.cp, W, W, rng_for(seed, "pairing"))


def _zero_coproduct(seed: int) -> VerificationReport:
    st = build_KG(_g2())
    z = lambda a, b: ZERO_VEC
    return check_full(Coproduct(st.algebra, z, z, z, z, name="D=0"), st.window())


def _degenerate_algebra(seed: int) -> VerificationReport:
    spec = {"name": "a with a null b", "basis": ["a", "b"], "mult": {"a,a": [["a", "1", "0"]]}}
    return check_algebra(table_algebra(spec), rng=rng_for(seed, "algebra"))


MUTATIONS = [
    Mutation("broken-composability-guard", "groupoid/composable-iff-source-meets-target", _broken_guard),
    Mutation("identity-antipode", "antipode/S1/a1-S(a2)-a3=a", _identity_antipode),
    Mutation("swapped-F1-F2", "wmha/kernel/T1", _swapped_F),
    Mutation("identity-star", "algebra/star-antimultiplicative", _identity_star),
    Mutation("trivial-E", "wmha/range/T1", _trivial_E),
    Mutation("corrupted-groupoid-table", "groupoid/target-of-product", _corrupted_table),
    Mutation("zero-generalized-inverse", "geninv/R1/TRT=T", _zero_R),
    Mutation("inverted-pairing", "pairing/adjoint/T1-T2", _inverted_pairing),
    Mutation("zero-coproduct", "coproduct/full/right-leg", _zero_coproduct),
    Mutation("degenerate-algebra", "algebra/non-degenerate-left", _degenerate_algebra),
]


def run_mutation(m: Mutation, seed: int = 0) -> Check | None:
    """The expected failing check, or None if the corruption went unnoticed."""
    rep = m.run(seed)
    c = rep.get(m.expected)
    return c if c is not None and c.status == "fail" else None
