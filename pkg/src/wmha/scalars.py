"""Gaussian rationals: exact complex scalars re + im*i with rational parts."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class DivisionByZero(ZeroDivisionError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


_ZF = Fraction(0)
_OF = Fraction(1)


def _mk(re: Fraction, im: Fraction) -> "Scalar":
    s = object.__new__(Scalar)
    object.__setattr__(s, "re", re)
    object.__setattr__(s, "im", im)
    return s


class Scalar:
    """An element of Q(i). Immutable; both parts are reduced fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return Scalar(x)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        if not (o.re or o.im):
            return self
        if not (self.re or self.im):
            return o
        return _mk(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return _mk(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __mul__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        if not o.im:
            if o.re == _OF:
                return self
            if not self.im:
                if self.re == _OF:
                    return o
                return _mk(self.re * o.re, _ZF)
        return _mk(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise DivisionByZero("inverse of zero")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def conj(self) -> "Scalar":
        return _mk(self.re, -self.im) if self.im else self

    # comparisons ----------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _as_scalar(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag(abs(self.im))}"

    def to_json(self) -> list[str]:
        return [str(self.re), str(self.im)]


def _imag(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}i"


def _as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    return None


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def conj(x) -> Scalar:
    return Scalar.coerce(x).conj()


def scalar_arith(op: str, x, y=None) -> Scalar:
    """Dispatch form of the field operations: add, mul, inv, conj."""
    x = Scalar.coerce(x)
    if op == "add":
        return x + Scalar.coerce(y)
    if op == "mul":
        return x * Scalar.coerce(y)
    if op == "inv":
        return x.inv()
    if op == "conj":
        return x.conj()
    raise ValueError(f"unknown scalar operation {op!r}")


def parse_scalar(re, im="0") -> Scalar:
    return Scalar(_frac(re), _frac(im))
