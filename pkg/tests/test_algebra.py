import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_spec
from wmha.algebra import (Multiplier, algebra_to_json, check_algebra, check_multiplier, find_unit,
                          multiplier_difference, table_algebra, tensor_algebra, to_element)
from wmha.families import build_CG, build_KG
from wmha.groupoid import natural_pair_groupoid, pair_groupoid
from wmha.linalg import Vec
from wmha.sampling import random_vec


@pytest.mark.parametrize("build", [build_KG, build_CG])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_groupoid_algebras_pass(build, n):
    A = build(pair_groupoid(range(n))).algebra
    rep = check_algebra(A)
    assert rep.passed, rep.to_text()
    assert len(A.window()) == n * n


def test_lazy_algebras_pass_on_a_window():
    g = natural_pair_groupoid()
    for build in (build_KG, build_CG):
        A = build(g).algebra
        assert A.unit is None
        assert check_algebra(A, A.window(3), random.Random(1)).passed


def test_convolution_products():
    A = build_CG(pair_groupoid([1, 2])).algebra
    d = Vec.basis
    assert A.mult((1, 2), (2, 1)) == d((1, 1))
    assert A.mult((1, 2), (1, 2)) == Vec()
    assert A.star(d((1, 2))) == d((2, 1))
    assert find_unit(A, A.window()) == d((1, 1)) + d((2, 2))


def test_table_algebra_round_trip():
    spec = load_spec("cg2-unital.json")
    A = table_algebra(spec)
    assert check_algebra(A).passed
    again = table_algebra(algebra_to_json(A))
    for a in A.window():
        for b in A.window():
            assert again.mult(a, b) == A.mult(a, b)


@pytest.mark.parametrize("spec, message", [
    ({"basis": ["a"]}, "needs"),
    ({"basis": ["a", "a"], "mult": {}}, "distinct"),
    ({"basis": ["a"], "mult": {"a,b": [["a", 1, 0]]}}, "bad product key"),
    ({"basis": ["a"], "mult": {"a,a": [["z", 1, 0]]}}, "leaves"),
    ({"basis": ["a"], "mult": {"a,a": "a"}}, "expected a list"),
    ({"basis": ["a"], "mult": {}, "colour": 1}, "unknown"),
])
def test_malformed_tables(spec, message):
    with pytest.raises(ValueError, match=message):
        table_algebra(spec)


def test_degenerate_algebra_names_the_annihilated_element():
    A = table_algebra({"basis": ["a", "b"], "mult": {"a,a": [["a", "1", "0"]]}})
    rep = check_algebra(A)
    assert rep.get("algebra/non-degenerate-left").witness == {"element": Vec.basis("b")}
    assert rep.get("algebra/idempotent").status == "fail"


def test_multipliers_of_a_non_unital_window():
    g = natural_pair_groupoid()
    A = build_CG(g).algebra
    W = A.window(3)
    # the unit at 0 as a multiplier of the whole lazy algebra
    e0 = Multiplier.from_element(A, Vec.basis((0, 0)))
    assert check_multiplier(e0, W).passed
    assert to_element(e0, W) == Vec.basis((0, 0))
    one = Multiplier.identity(A)
    assert multiplier_difference(one * e0, e0, W) is None
    # lambda_(0,1) e0 = 0 since the source of (0,1) is 1
    diff = multiplier_difference(one, e0, W)
    assert (diff["side"], diff["basis"]) == ("right", (0, 1))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_tensor_square_is_associative_on_random_elements(seed):
    rng = random.Random(seed)
    A = build_CG(pair_groupoid([1, 2])).algebra
    AA = tensor_algebra(A, A)
    W = [(a, b) for a in A.window() for b in A.window()]
    x, y, z = (random_vec(W, rng) for _ in range(3))
    assert AA.mul(AA.mul(x, y), z) == AA.mul(x, AA.mul(y, z))
    assert AA.star(AA.mul(x, y)) == AA.mul(AA.star(y), AA.star(x))
