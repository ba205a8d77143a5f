from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from wmha.scalars import DivisionByZero, Scalar, conj, parse_scalar, scalar_arith

fracs = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
scalars = st.builds(Scalar, fracs, fracs)


def as_sympy(x: Scalar):
    return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)


def from_sympy(z) -> Scalar:
    re, im = sympy.re(z), sympy.im(z)
    return Scalar(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


@given(scalars, scalars)
def test_ring_operations_match_sympy(x, y):
    assert x + y == from_sympy(sympy.expand(as_sympy(x) + as_sympy(y)))
    assert x - y == from_sympy(sympy.expand(as_sympy(x) - as_sympy(y)))
    assert x * y == from_sympy(sympy.expand(as_sympy(x) * as_sympy(y)))


@given(scalars)
def test_inverse_and_conjugate(x):
    if x:
        assert x * x.inv() == Scalar(1)
        assert x / x == 1
    else:
        with pytest.raises(ZeroDivisionError):
            x.inv()
    assert x.conj().conj() == x
    assert (x * x.conj()).im == 0


@given(scalars, scalars, scalars)
def test_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).conj() == x.conj() * y.conj()


def test_examples():
    i = Scalar(0, 1)
    assert i * i == -1
    assert Scalar(Fraction(1, 2)) + Scalar(Fraction(1, 3)) == Scalar(Fraction(5, 6))
    assert Scalar(1, 1).inv() == Scalar(Fraction(1, 2), Fraction(-1, 2))
    assert conj(Scalar(3, -4)) == Scalar(3, 4)
    assert parse_scalar("2/4", "-1") == Scalar(Fraction(1, 2), -1)
    assert Scalar(Fraction(1, 2), -1).to_json() == ["1/2", "-1"]
    assert str(Scalar(0, -1)) == "-i"


def test_dispatch_and_errors():
    assert scalar_arith("mul", 2, Scalar(0, 1)) == Scalar(0, 2)
    assert scalar_arith("inv", 4) == Scalar(Fraction(1, 4))
    with pytest.raises(DivisionByZero):
        scalar_arith("inv", 0)
    with pytest.raises(ValueError):
        scalar_arith("pow", 2, 2)
    with pytest.raises(TypeError):
        Scalar.coerce(1 + 2j)
    with pytest.raises(AttributeError):
        Scalar(1).re = 2
