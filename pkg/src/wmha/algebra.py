"""Based algebras, their tensor powers, and multipliers as pairs of actions."""

from __future__ import annotations

import random
from typing import Callable, Iterable, Sequence

from .linalg import LinOp, Vec, ZERO_VEC, _axpy, add_all, bilinear, kernel, linear, rank, solve, InconsistentSystem
from .report import VerificationReport
from .sampling import random_vec, tuples
from .scalars import ONE, Scalar, parse_scalar


class BasedAlgebra:
    """An algebra with a distinguished basis of tokens.

    ``mult(i, j)`` gives the product of two basis tokens as a Vec.  For an
    infinite basis, ``window_fn(n)`` enumerates a finite window instead of
    ``basis``.  ``star(i)`` is the involution on basis tokens, extended
    conjugate-linearly.
    """

    def __init__(
        self,
        name: str,
        mult: Callable,
        basis: Iterable | None = None,
        window_fn: Callable[[int], list] | None = None,
        star: Callable | None = None,
        unit: Vec | None = None,
        commutative: bool = False,
    ):
        self.name = name
        self._mult_rule = mult
        self._memo: dict = {}
        self.basis = tuple(basis) if basis is not None else None
        self._window_fn = window_fn
        self._star_rule = star
        self._star = LinOp(star) if star is not None else None
        self.unit = unit
        self.commutative = commutative

    @property
    def finite(self) -> bool:
        return self.basis is not None

    @property
    def has_star(self) -> bool:
        return self._star_rule is not None

    def window(self, n: int | None = None) -> list:
        if self.basis is not None:
            return list(self.basis)
        if n is None or self._window_fn is None:
            raise ValueError(f"{self.name} is infinite; a window size is required")
        return list(self._window_fn(n))

    def mult(self, i, j) -> Vec:
        key = (i, j)
        v = self._memo.get(key)
        if v is None:
            v = self._mult_rule(i, j)
            self._memo[key] = v
        return v

    def mul(self, x: Vec, y: Vec) -> Vec:
        return bilinear(self.mult, x, y)

    def star(self, x: Vec) -> Vec:
        if self._star is None:
            raise ValueError(f"{self.name} has no involution")
        return self._star(x.conj())

    def op(self) -> "BasedAlgebra":
        return BasedAlgebra(
            self.name + "^op",
            lambda i, j: self.mult(j, i),
            basis=self.basis,
            window_fn=self._window_fn,
            star=self._star_rule,
            unit=self.unit,
            commutative=self.commutative,
        )

    def restricted(self, window: Sequence) -> "BasedAlgebra":
        """The same rules viewed as a finite algebra on a product-closed window."""
        return BasedAlgebra(self.name + "|w", self.mult, basis=window, star=self._star_rule, commutative=self.commutative)

    def __repr__(self):
        return f"BasedAlgebra({self.name})"


class TensorAlgebra(BasedAlgebra):
    """Legwise product on tuples of basis tokens."""

    def __init__(self, legs: Sequence[BasedAlgebra]):
        self.legs = tuple(legs)
        finite = all(a.finite for a in legs)
        basis = None
        if finite:
            basis = [()]
            for a in legs:
                basis = [k + (b,) for k in basis for b in a.basis]
        star = None
        if all(a.has_star for a in legs):
            star = self._star_key
        unit = None
        if all(a.unit is not None for a in legs):
            from .linalg import tensor
            unit = tensor(*[a.unit for a in legs])
        super().__init__(
            "(x)".join(a.name for a in legs),
            self._mult_keys,
            basis=basis,
            star=star,
            unit=unit,
            commutative=all(a.commutative for a in legs),
        )

    def _mult_keys(self, i, j) -> Vec:
        acc = {(): ONE}
        for a, x, y in zip(self.legs, i, j):
            p = a.mult(x, y)
            if not p:
                return ZERO_VEC
            acc = {k + (k2,): c * c2 for k, c in acc.items() for k2, c2 in p.items()}
        return Vec._wrap(acc)

    def _star_key(self, k) -> Vec:
        acc = {(): ONE}
        for a, x in zip(self.legs, k):
            s = a._star.image(x)
            acc = {kk + (k2,): c * c2 for kk, c in acc.items() for k2, c2 in s.items()}
        return Vec._wrap(acc)

    def window_tuples(self, windows: Sequence[Sequence]) -> list:
        out = [()]
        for w in windows:
            out = [k + (b,) for k in out for b in w]
        return out


def tensor_algebra(*legs: BasedAlgebra) -> TensorAlgebra:
    return TensorAlgebra(legs)


# ---------------------------------------------------------------------------
# leg operations on tensors (keys are tuples)


def leg_map(x: Vec, leg: int, rule: Callable) -> Vec:
    """Apply a linear map (basis token -> Vec) to one leg."""
    d: dict = {}
    for k, c in x.items():
        img = rule(k[leg])
        for k2, c2 in img.items():
            nk = k[:leg] + (k2,) + k[leg + 1:]
            _axpy(d, c, {nk: c2})
    return Vec._wrap(d)


def legs_map(x: Vec, leg: int, rule: Callable, width: int = 2) -> Vec:
    """Apply a map on ``width`` consecutive legs, given on tuple tokens."""
    d: dict = {}
    for k, c in x.items():
        img = rule(k[leg:leg + width])
        for k2, c2 in img.items():
            nk = k[:leg] + k2 + k[leg + width:]
            v = d.get(nk)
            nv = c * c2 if v is None else v + c * c2
            if nv:
                d[nk] = nv
            elif v is not None:
                del d[nk]
    return Vec._wrap(d)


def leg_lmul(alg: BasedAlgebra, a: Vec, x: Vec, leg: int) -> Vec:
    """Multiply leg ``leg`` of x on the left by a."""
    return legs_map(x, leg, lambda t: _tupled(alg.mul(a, Vec.basis(t[0]))), 1)


def leg_rmul(alg: BasedAlgebra, x: Vec, a: Vec, leg: int) -> Vec:
    return legs_map(x, leg, lambda t: _tupled(alg.mul(Vec.basis(t[0]), a)), 1)


def _tupled(v: Vec) -> Vec:
    return Vec._wrap({(k,): c for k, c in v.items()})


def flip(x: Vec) -> Vec:
    return Vec._wrap({(k[1], k[0]): c for k, c in x.items()})


def contract(x: Vec, leg: int, functional: Callable) -> Vec:
    """Apply a scalar functional (token -> Scalar) to one leg, dropping it."""
    d: dict = {}
    for k, c in x.items():
        f = functional(k[leg])
        if f:
            nk = k[:leg] + k[leg + 1:]
            _axpy(d, c * f, {nk: ONE})
    out = Vec._wrap(d)
    if out and all(len(k) == 1 for k in out.keys()):
        return Vec._wrap({k[0]: c for k, c in out.items()})
    return out


def multiply_out(alg: BasedAlgebra, x: Vec, opposite: bool = False) -> Vec:
    """m(x) = sum x1 x2 (or x2 x1) for a two-leg x."""
    d: dict = {}
    for (i, j), c in x.items():
        p = alg.mult(j, i) if opposite else alg.mult(i, j)
        _axpy(d, c, p._d)
    return Vec._wrap(d)


def insert_leg(x: Vec, v: Vec, position: int) -> Vec:
    return Vec._wrap({k[:position] + (kv,) + k[position:]: c * cv for k, c in x.items() for kv, cv in v.items()})


def pair(x: Vec) -> Vec:
    """View single-token keys as 1-tuples (for uniform leg handling)."""
    return _tupled(x)


# ---------------------------------------------------------------------------
# multipliers


class Multiplier:
    """A two-sided multiplier of ``algebra`` given by its actions on basis tokens.

    ``left(k)`` is m * delta_k and ``right(k)`` is delta_k * m.
    """

    def __init__(self, algebra: BasedAlgebra, left: Callable, right: Callable, name: str = ""):
        self.algebra = algebra
        self.name = name
        self.L = LinOp(left, name + ".L")
        self.R = LinOp(right, name + ".R")

    def lmul(self, x: Vec) -> Vec:
        return self.L(x)

    def rmul(self, x: Vec) -> Vec:
        return self.R(x)

    def __mul__(self, other: "Multiplier") -> "Multiplier":
        return Multiplier(
            self.algebra,
            lambda k: self.L(other.L.image(k)),
            lambda k: other.R(self.R.image(k)),
            f"({self.name}{other.name})",
        )

    def combine(self, c, other: "Multiplier", d=ONE) -> "Multiplier":
        """c*self + d*other."""
        c, d = Scalar.coerce(c), Scalar.coerce(d)
        return Multiplier(
            self.algebra,
            lambda k: self.L.image(k).scale(c) + other.L.image(k).scale(d),
            lambda k: self.R.image(k).scale(c) + other.R.image(k).scale(d),
            f"({c}{self.name}+{d}{other.name})",
        )

    def adjoint(self) -> "Multiplier":
        """m* acting by m* x = (x* m)* and x m* = (m x*)*."""
        A = self.algebra
        return Multiplier(
            A,
            lambda k: A.star(self.R(A.star(Vec.basis(k)))),
            lambda k: A.star(self.L(A.star(Vec.basis(k)))),
            self.name + "*",
        )

    @classmethod
    def from_element(cls, algebra: BasedAlgebra, a: Vec, name: str = "") -> "Multiplier":
        return cls(
            algebra,
            lambda k: algebra.mul(a, Vec.basis(k)),
            lambda k: algebra.mul(Vec.basis(k), a),
            name or "elt",
        )

    @classmethod
    def identity(cls, algebra: BasedAlgebra) -> "Multiplier":
        return cls(algebra, Vec.basis, Vec.basis, "1")

    def __repr__(self):
        return f"Multiplier({self.name} on {self.algebra.name})"


TensorMultiplier = Multiplier


def multiplier_difference(m: Multiplier, n: Multiplier, window: Iterable):
    """First window token on which the actions of m and n differ, or None."""
    for k in window:
        a, b = m.L.image(k), n.L.image(k)
        if a != b:
            return {"side": "left", "basis": k, "lhs": a, "rhs": b}
        a, b = m.R.image(k), n.R.image(k)
        if a != b:
            return {"side": "right", "basis": k, "lhs": a, "rhs": b}
    return None


def check_multiplier(m: Multiplier, window: Sequence, rng: random.Random | None = None, trials: int = 100,
                     prefix: str = "multiplier") -> VerificationReport:
    A = m.algebra
    rep = VerificationReport(m.name)
    d = Vec.basis

    def interchange(a, b):
        lhs = A.mul(m.R.image(a), d(b))
        rhs = A.mul(d(a), m.L.image(b))
        if lhs != rhs:
            return {"(am)b": lhs, "a(mb)": rhs}

    def left_law(a, b):
        lhs = m.L(A.mult(a, b))
        rhs = A.mul(m.L.image(a), d(b))
        if lhs != rhs:
            return {"m(ab)": lhs, "(ma)b": rhs}

    def right_law(a, b):
        lhs = m.R(A.mult(a, b))
        rhs = A.mul(d(a), m.R.image(b))
        if lhs != rhs:
            return {"(ab)m": lhs, "a(bm)": rhs}

    rep.run(f"{prefix}/interchange", tuples(window, 2, rng, trials), interchange)
    rep.run(f"{prefix}/left-module", tuples(window, 2, rng, trials), left_law)
    rep.run(f"{prefix}/right-module", tuples(window, 2, rng, trials), right_law)
    return rep


def to_element(m: Multiplier, window: Sequence) -> Vec | None:
    """The element a with from_element(a) = m on the window, if there is one."""
    A = m.algebra
    if A.unit is not None and A.finite:
        a = m.lmul(A.unit)
        cand = Multiplier.from_element(A, a)
        return a if multiplier_difference(cand, m, window) is None else None
    columns = {k: add_all(_stack(b, A.mult(k, b)) for b in window) for k in window}
    target = add_all(_stack(b, m.L.image(b)) for b in window)
    try:
        sol = solve(columns, target)
    except InconsistentSystem:
        return None
    if not sol.unique:
        return None
    a = sol.particular
    return a if multiplier_difference(Multiplier.from_element(A, a), m, window) is None else None


def find_unit(alg: BasedAlgebra, window: Sequence) -> Vec | None:
    """Solve u*a = a = a*u over a product-closed window; None if no unit."""
    d = Vec.basis
    columns = {k: add_all([add_all(_stack(("l", b), alg.mult(k, b)) for b in window),
                           add_all(_stack(("r", b), alg.mult(b, k)) for b in window)]) for k in window}
    target = add_all([add_all(_stack(("l", b), d(b)) for b in window),
                      add_all(_stack(("r", b), d(b)) for b in window)])
    try:
        return solve(columns, target).particular
    except InconsistentSystem:
        return None


def _stack(tag, v: Vec) -> Vec:
    return Vec._wrap({(tag, k): c for k, c in v.items()})


def multiplier_ops(op: str, *args):
    """Dispatch: mul(m, n), unit_embed(alg), from_element(alg, a), apply(m, x, side)."""
    if op == "mul":
        return args[0] * args[1]
    if op == "unit_embed":
        return Multiplier.identity(args[0])
    if op == "from_element":
        return Multiplier.from_element(args[0], args[1])
    if op == "apply":
        m, x = args[0], args[1]
        side = args[2] if len(args) > 2 else "left"
        return m.lmul(x) if side == "left" else m.rmul(x)
    raise ValueError(f"unknown multiplier operation {op!r}")


# ---------------------------------------------------------------------------
# algebra checks


def check_algebra(alg: BasedAlgebra, window: Sequence | None = None, rng: random.Random | None = None,
                  trials: int = 100) -> VerificationReport:
    W = list(window) if window is not None else alg.window()
    rep = VerificationReport(f"algebra {alg.name}")
    d = Vec.basis

    if not W:
        rep.add("algebra/nonempty", False, {"window": []})
        return rep

    def assoc(a, b, c):
        lhs = alg.mul(alg.mult(a, b), d(c))
        rhs = alg.mul(d(a), alg.mult(b, c))
        if lhs != rhs:
            return {"(ab)c": lhs, "a(bc)": rhs}

    rep.run("algebra/associativity", tuples(W, 3, rng, trials), assoc)

    inW = set(W)
    outside = next(((a, b) for a in W for b in W if any(k not in inW for k in alg.mult(a, b).keys())), None)
    rep.add("algebra/window-closed", outside is None, {"case": list(outside) if outside else None})

    for side in ("left", "right"):
        imgs = {a: add_all(_stack(b, alg.mult(a, b) if side == "left" else alg.mult(b, a)) for b in W) for a in W}
        ker = kernel(imgs)
        rep.add(f"algebra/non-degenerate-{side}", not ker, {"element": ker[0]} if ker else None)

    r = rank(alg.mult(a, b) for a in W for b in W)
    rep.add("algebra/idempotent", r == len(W), {"rank": r, "dim": len(W)}, detail=f"rank {r} of {len(W)}")

    if alg.unit is not None:
        u = alg.unit
        bad = next((a for a in W if alg.mul(u, d(a)) != d(a) or alg.mul(d(a), u) != d(a)), None)
        rep.add("algebra/unit", bad is None, {"basis": bad})

    if alg.has_star:
        def anti(a, b):
            lhs = alg.star(alg.mult(a, b))
            rhs = alg.mul(alg.star(d(b)), alg.star(d(a)))
            if lhs != rhs:
                return {"(ab)*": lhs, "b*a*": rhs}

        def invol(a):
            if alg.star(alg.star(d(a))) != d(a):
                return {"a**": alg.star(alg.star(d(a)))}

        rng2 = rng or random.Random(0)

        def conj_linear(_):
            x = random_vec(W, rng2)
            c = Scalar(rng2.randint(-2, 2), rng2.randint(-2, 2))
            if alg.star(x.scale(c)) != alg.star(x).scale(c.conj()):
                return {"x": x, "c": c}

        rep.run("algebra/star-antimultiplicative", tuples(W, 2, rng, trials), anti)
        rep.run("algebra/star-involutive", ((a,) for a in W), invol)
        rep.run("algebra/star-conjugate-linear", ((i,) for i in range(min(trials, 20))), conj_linear)
    return rep


# ---------------------------------------------------------------------------
# table algebras from JSON


def _vec_from_json(entries, label: str) -> Vec:
    if not isinstance(entries, list):
        raise ValueError(f"{label}: expected a list of [token, re, im] entries")
    out = []
    for e in entries:
        if not isinstance(e, list) or len(e) not in (2, 3):
            raise ValueError(f"{label}: malformed entry {e!r}")
        k = e[0]
        if isinstance(k, list):
            k = tuple(k)
        out.append((k, parse_scalar(*[str(x) for x in e[1:]])))
    return Vec(out)


ALGEBRA_KEYS = {"basis", "mult", "star", "unit", "name", "coproduct", "counit", "antipode"}


def table_algebra(spec: dict) -> BasedAlgebra:
    """Build a finite algebra from structure constants.

    ``mult`` maps "i,j" to a list of [k, re, im]; absent pairs multiply to 0.
    """
    if not isinstance(spec, dict) or "basis" not in spec or "mult" not in spec:
        raise ValueError("an algebra spec needs 'basis' and 'mult'")
    unknown = set(spec) - ALGEBRA_KEYS
    if unknown:
        raise ValueError(f"unknown keys: {sorted(unknown)}")
    basis = list(spec["basis"])
    if len(set(basis)) != len(basis):
        raise ValueError("basis tokens must be distinct")
    bset = set(basis)
    table = {}
    for key, entries in spec["mult"].items():
        parts = [p.strip() for p in key.split(",")]
        if len(parts) != 2 or not set(parts) <= bset:
            raise ValueError(f"bad product key {key!r}")
        v = _vec_from_json(entries, f"mult[{key}]")
        if not set(v.keys()) <= bset:
            raise ValueError(f"mult[{key}] leaves the basis")
        table[tuple(parts)] = v
    star = None
    if "star" in spec:
        st = {k: _vec_from_json(v, f"star[{k}]") for k, v in spec["star"].items()}
        if set(st) != bset:
            raise ValueError("star must be given on every basis token")
        star = st.__getitem__
    unit = _vec_from_json(spec["unit"], "unit") if "unit" in spec else None
    return BasedAlgebra(
        spec.get("name", "table"),
        lambda i, j: table.get((i, j), ZERO_VEC),
        basis=basis,
        star=star,
        unit=unit,
    )


def algebra_to_json(alg: BasedAlgebra, token=str) -> dict:
    """Structure constants of a finite algebra in the table format."""
    W = alg.window()
    out = {"name": alg.name, "basis": [token(k) for k in W], "mult": {}}
    for a in W:
        for b in W:
            p = alg.mult(a, b)
            if p:
                out["mult"][f"{token(a)},{token(b)}"] = [[token(k), *c.to_json()] for k, c in p.sorted_items()]
    if alg.has_star:
        out["star"] = {token(k): [[token(j), *c.to_json()] for j, c in alg._star.image(k).sorted_items()] for k in W}
    if alg.unit is not None:
        out["unit"] = [[token(k), *c.to_json()] for k, c in alg.unit.sorted_items()]
    return out
