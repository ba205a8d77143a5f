import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import load_spec
from wmha.coproduct import (NoCounit, NotRegular, check_coassociativity, check_counit,
                            check_full, check_homomorphism, check_pairing, check_slices_in_window, solve_counit)
from wmha.families import build_CG, build_KG, canonical_pairing, table_structure
from wmha.groupoid import build_groupoid, natural_pair_groupoid, pair_groupoid
from wmha.linalg import Vec, rank
from wmha.sampling import random_vec
from wmha.scalars import ONE, ZERO, Scalar

GROUPOIDS = ["pair2.json", "pair3.json", "action_z2.json", "z3group.json", "union_z2_z3.json"]
BUILDERS = {"kg": (build_KG, oracle.function_algebra), "cg": (build_CG, oracle.groupoid_algebra)}

# ranks of T1..T4 from the dense oracle (all four agree), frozen
ORACLE_RANKS = {
    "pair2.json": 8, "pair3.json": 27, "action_z2.json": 8, "z3group.json": 9, "union_z2_z3.json": 13,
}


@pytest.mark.parametrize("family", ["kg", "cg"])
@pytest.mark.parametrize("name", GROUPOIDS)
def test_canonical_maps_match_dense_oracle(name, family):
    g = build_groupoid(load_spec(name))
    build, dense = BUILDERS[family]
    cp = build(g).cp
    ref = dense(g)
    for k in (1, 2, 3, 4):
        for a, b in ref.pairs:
            assert cp.slice(k, a, b) == Vec(ref.T(k, a, b)), (k, a, b)
        r = rank(cp.slice(k, a, b) for a, b in ref.pairs)
        assert r == ref.T_matrix(k).rank() == ORACLE_RANKS[name]


@pytest.mark.parametrize("build", [build_KG, build_CG])
def test_coproduct_laws_on_pair3(build):
    st_ = build(pair_groupoid([1, 2, 3]))
    W = st_.window()
    for rep in (check_coassociativity(st_.cp, W), check_slices_in_window(st_.cp, W),
                check_homomorphism(st_.cp, W), check_full(st_.cp, W)):
        assert rep.passed, rep.to_text()


@pytest.mark.parametrize("build", [build_KG, build_CG])
def test_solved_counit_is_the_closed_form(build):
    st_ = build(pair_groupoid([1, 2, 3]))
    W = st_.window()
    eps = solve_counit(st_.cp, W)
    assert all(eps.value(a) == st_.counit.value(a) for a in W)
    assert check_counit(st_.cp, eps, W).passed


def test_counit_values():
    W = pair_groupoid([1, 2]).window()
    kg = build_KG(pair_groupoid([1, 2]))
    assert [kg.counit.value(p) for p in W] == [ONE, ZERO, ZERO, ONE]
    cg = build_CG(pair_groupoid([1, 2]))
    assert [cg.counit.value(p) for p in W] == [ONE] * 4


def test_counit_failures():
    # D = 0 admits no counit; the doubled D(a) = 2 a (x) a forces eps(a) = 1/2
    zero = {"basis": ["a"], "mult": {"a,a": [["a", "1", "0"]]}, "coproduct": {}}
    with pytest.raises(NoCounit):
        solve_counit(table_structure(zero).cp, ["a"])
    double = dict(zero, coproduct={"a": [["a", "a", "2", "0"]]})
    assert solve_counit(table_structure(double).cp, ["a"]).value("a") == Scalar(Fraction(1, 2))


def test_non_regular_slices_raise():
    kg = build_KG(pair_groupoid([1, 2]))
    from wmha.coproduct import Coproduct
    half = Coproduct(kg.algebra, kg.cp._rules[1], kg.cp._rules[2])
    assert not half.regular
    with pytest.raises(NotRegular):
        half.T(3)
    with pytest.raises(NotRegular):
        half.cop()


def test_cop_and_opposite_are_coproducts():
    cg = build_CG(pair_groupoid([1, 2, 3]))
    W = cg.window()
    for cp in (cg.cp.cop(), cg.cp.on_opposite()):
        assert check_coassociativity(cp, W).passed
        assert check_homomorphism(cp, W).passed


def test_pairing_is_adjoint_and_identity_on_pair2():
    g = pair_groupoid([1, 2])
    kg, cg = build_KG(g), build_CG(g)
    pr = canonical_pairing(kg, cg)
    W = g.window()
    assert pr.matrix(W, W) == [[ONE if i == j else ZERO for j in range(4)] for i in range(4)]
    rep = check_pairing(pr, kg.cp, cg.cp, W, W)
    assert rep.passed and rep.get("pairing/adjoint/T1-T2").detail == "256 quadruples"


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_pairing_on_random_lazy_elements(seed):
    g = natural_pair_groupoid()
    kg, cg = build_KG(g), build_CG(g)
    pr = canonical_pairing(kg, cg)
    W = g.window(5)
    rng = random.Random(seed)
    x, y = random_vec(W, rng), random_vec(W, rng)
    # <f, lambda_p> = f(p): pairing two elements is the dot product of coefficient vectors
    assert pr(x, y) == sum((x[k] * y[k] for k in W), ZERO)
    rep = check_pairing(pr, kg.cp, cg.cp, W, W, rng, trials=5)
    assert rep.passed
