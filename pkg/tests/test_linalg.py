import pytest
import sympy
from hypothesis import given, settings, strategies as st

from wmha.linalg import (Echelon, InconsistentSystem, LinOp, Vec, kernel, rank, solve, span_equal,
                         span_solve, tensor)
from wmha.scalars import Scalar

small = st.integers(-3, 3)
rows = st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=6)


def vecs(matrix):
    return [Vec((j, c) for j, c in enumerate(r)) for r in matrix]


@settings(max_examples=60)
@given(rows)
def test_rank_matches_sympy(m):
    assert rank(vecs(m)) == sympy.Matrix(m).rank()


@settings(max_examples=60)
@given(rows)
def test_kernel_is_exact_nullspace_of_the_column_map(m):
    # columns are the rows of m, viewed as images of tags 0..k-1
    images = {i: v for i, v in enumerate(vecs(m))}
    ker = kernel(images)
    assert len(ker) == len(m) - sympy.Matrix(m).rank()
    for dep in ker:
        total = Vec()
        for t, c in dep.items():
            total = total + images[t].scale(c)
        assert not total


@settings(max_examples=60)
@given(rows, st.lists(small, min_size=len("abcd"), max_size=4))
def test_solve_consistent_or_certified(m, coeffs):
    cols = {i: v for i, v in enumerate(vecs(m))}
    target = Vec()
    for i, c in zip(range(len(m)), coeffs):
        target = target + cols[i].scale(c)
    sol = solve(cols, target)
    back = Vec()
    for t, c in sol.particular.items():
        back = back + cols[t].scale(c)
    assert back == target


def test_inconsistent_system_carries_residual():
    with pytest.raises(InconsistentSystem):
        solve({"x": Vec({0: 1})}, Vec({1: 1}))


def test_vec_arithmetic_drops_zeros():
    v = Vec({"a": 1, "b": 2})
    assert (v - v) == Vec()
    assert len(v + Vec({"a": -1})) == 1
    assert v.scale(Scalar(0, 1))["b"] == Scalar(0, 2)
    assert tensor(Vec({"a": 1}), Vec({"b": 2})) == Vec({("a", "b"): 2})


def test_span_equality_and_witness():
    u = [Vec({0: 1}), Vec({1: 1})]
    v = [Vec({0: 1, 1: 1}), Vec({0: 1, 1: -1})]
    assert span_equal(u, v) == (True, None)
    ok, w = span_equal(u, [Vec({0: 1})])
    assert not ok and w == Vec({1: 1})
    assert span_solve("membership", Vec({0: 2, 1: 2}), v)
    assert span_solve("rank", v) == 2
    with pytest.raises(ValueError):
        span_solve("det", v)


def test_echelon_dependency_names_the_tags():
    e = Echelon()
    assert e.add(Vec({0: 1}), "x") is None
    assert e.add(Vec({1: 1}), "y") is None
    dep = e.add(Vec({0: 2, 1: 3}), "z")
    assert dep == Vec({"z": 1, "x": -2, "y": -3})


def test_linop_memo_and_dense():
    calls = []

    def rule(k):
        calls.append(k)
        return Vec({k + 1: 1})

    op = LinOp(rule, "shift")
    assert op.image(1) == op.image(1)
    assert calls == [1]
    assert op.dense([0, 1], [1, 2]) == [[Scalar(1), Scalar(0)], [Scalar(0), Scalar(1)]]
