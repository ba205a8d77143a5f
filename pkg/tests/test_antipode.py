import dataclasses
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_spec
from wmha.algebra import Multiplier, multiplier_difference
from wmha.antipode import (AntipodeMap, GeneralizedInverse, build_R_from_antipode, check_antipode_identities,
                           check_geninv_conditions, check_relations, derive_antipode, source_target, unifying_check)
from wmha.families import build_CG, build_KG
from wmha.groupoid import build_groupoid, pair_groupoid
from wmha.linalg import LinOp, Vec, add_all
from wmha.sampling import random_vec
from wmha.wmha import R_from_projections, verify_core

GROUPOIDS = ["pair2.json", "pair3.json", "action_z2.json", "z3group.json", "union_z2_z3.json"]


def derived(st, k):
    W = st.window()
    gi = R_from_projections(k, st.cp, st.E, st.F[k], W)
    return gi, derive_antipode(k, gi, st.counit, W)


@pytest.mark.parametrize("name", GROUPOIDS)
@pytest.mark.parametrize("build", [build_KG, build_CG])
def test_derived_antipode_is_inversion(name, build):
    g = build_groupoid(load_spec(name))
    st = build(g)
    for k in (1, 2):
        gi, S = derived(st, k)
        for p in st.window():
            assert S.endo.image(p) == Vec.basis(g.inverse(p))
        assert check_geninv_conditions(gi, st.cp, st.window()).passed


@pytest.mark.parametrize("build", [build_KG, build_CG])
def test_R_from_the_antipode_reconstructs_R_from_projections(build):
    st = build(pair_groupoid([1, 2, 3]))
    W = st.window()
    for k in (1, 2):
        gi, S = derived(st, k)
        back = build_R_from_antipode(k, st.cp, S)
        assert all(back.R.image((a, b)) == gi.R.image((a, b)) for a in W for b in W)


@pytest.mark.parametrize("build", [build_KG, build_CG])
def test_antipode_identities_and_relations(build):
    st = build(pair_groupoid([1, 2, 3]))
    W = st.window()
    S = st.antipode
    for k in (1, 2):
        assert check_antipode_identities(S.as_k(k), st.cp, W).passed
    for k in (3, 4):
        assert check_antipode_identities(S.inverted(k), st.cp, W).passed
    rep = check_relations(st.cp, S.as_k(1), W, S2=S.as_k(2), S3=S.inverted(3), S4=S.inverted(4), eps=st.counit)
    assert rep.passed and not [c for c in rep.checks if c.status == "skipped"], rep.to_text()


def test_identity_is_not_an_antipode_of_KG():
    st = build_KG(pair_groupoid([1, 2]))
    S = AntipodeMap.from_rule(st.algebra, 1, Vec.basis, Vec.basis, "id")
    rep = check_antipode_identities(S, st.cp, st.window())
    c = rep.get("antipode/S1/a1-S(a2)-a3=a")
    assert c.status == "fail" and c.witness["case"] == [(1, 2), (1, 2)]
    assert not unifying_check(st.cp, S, st.window()).passed


def test_zero_generalized_inverse_fails_TRT():
    st = build_CG(pair_groupoid([1, 2]))
    rep = check_geninv_conditions(GeneralizedInverse(1, st.cp, lambda k: Vec()), st.cp, st.window())
    assert rep.get("geninv/R1/TRT=T").status == "fail"
    assert rep.get("geninv/R1/RTR=R").status == "pass"


def test_antipodes_agree_exactly_when_the_F_identities_hold():
    g = pair_groupoid([1, 2])
    good = build_KG(g)
    rep, _ = verify_core(good, good.window(), extensions=False)
    assert rep.get("wmha/antipodes-agree").status == "pass"
    assert rep.get("wmha/antipodes-agree-iff-F-identities").status == "pass"
    # F1 and F2 exchanged: the kernels are wrong, so the equivalence is not in force
    bad = dataclasses.replace(good, F={1: good.F[2], 2: good.F[1], 3: good.F[3], 4: good.F[4]})
    rep, _ = verify_core(bad, bad.window(), extensions=False)
    assert rep.get("wmha/F1/identity").status == "fail"
    assert rep.get("wmha/kernel/T1").status == "fail"
    assert rep.get("wmha/antipodes-agree-iff-F-identities").status == "skipped"


def test_source_and_target_maps():
    g = pair_groupoid([1, 2])
    W = g.window()
    s, t = g.source, g.target
    cg = build_CG(g)
    for p in W:
        es, et = source_target(cg.antipode, cg.cp, Vec.basis(p))
        assert multiplier_difference(es, Multiplier.from_element(cg.algebra, Vec.basis(s(p))), W) is None
        assert multiplier_difference(et, Multiplier.from_element(cg.algebra, Vec.basis(t(p))), W) is None
    kg = build_KG(g)
    for e in g.units():
        es, et = source_target(kg.antipode, kg.cp, Vec.basis(e))
        from_s = add_all(Vec.basis(q) for q in W if s(q) == e)
        from_t = add_all(Vec.basis(q) for q in W if t(q) == e)
        assert multiplier_difference(es, Multiplier.from_element(kg.algebra, from_s), W) is None
        assert multiplier_difference(et, Multiplier.from_element(kg.algebra, from_t), W) is None
    es, _ = source_target(kg.antipode, kg.cp, Vec.basis((1, 2)))
    assert all(not es.L.image(q) for q in W)


@pytest.mark.parametrize("build", [build_KG, build_CG])
def test_unifying_structure(build):
    st = build(build_groupoid(load_spec("action_z2.json")))
    assert unifying_check(st.cp, st.antipode, st.window()).passed


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_antipode_laws_on_random_elements(seed):
    rng = random.Random(seed)
    g = pair_groupoid([1, 2, 3])
    for build in (build_KG, build_CG):
        s = build(g)
        A, S = s.algebra, s.antipode
        x, y = random_vec(s.window(), rng), random_vec(s.window(), rng)
        assert S(A.mul(x, y)) == A.mul(S(y), S(x))
        assert A.star(S(A.star(S(x)))) == x
        assert S.inv(S(x)) == x
