"""Coproducts through their four slice maps, counits and dual pairings.

A coproduct is never stored as an element of A (x) A.  It is given by the
canonical maps

    T1(a (x) b) = D(a)(1 (x) b)      T2(a (x) b) = (a (x) 1)D(b)
    T3(a (x) b) = (1 (x) b)D(a)      T4(a (x) b) = D(b)(a (x) 1)

on basis pairs; T3 and T4 exist only for regular coproducts.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .algebra import BasedAlgebra, Multiplier, TensorAlgebra, flip, leg_lmul, leg_rmul, legs_map
from .linalg import InconsistentSystem, LinOp, Vec, ZERO_VEC, _axpy, echelon, join, linear, solve, tensor
from .report import VerificationReport
from .sampling import random_vec, tuples
from .scalars import ONE, ZERO, Scalar


class NotRegular(ValueError):
    pass


class NoCounit(ValueError):
    def __init__(self, certificate=None):
        super().__init__("the counit equations have no solution")
        self.certificate = certificate


class CounitNotUnique(ValueError):
    def __init__(self, dimension: int):
        super().__init__(f"counit not unique: solution space of dimension {dimension}")
        self.dimension = dimension


class Coproduct:
    def __init__(self, algebra: BasedAlgebra, t1: Callable, t2: Callable, t3: Callable | None = None,
                 t4: Callable | None = None, name: str = "", delta: Callable | None = None):
        self.A = algebra
        self.AA = TensorAlgebra([algebra, algebra])
        self.name = name or f"D[{algebra.name}]"
        self._rules = {1: t1, 2: t2, 3: t3, 4: t4}
        self._T = {k: LinOp((lambda r: lambda key: r(key[0], key[1]))(r), f"T{k}")
                   for k, r in self._rules.items() if r is not None}
        self.delta_element = delta  # basis token -> Vec over pairs, when D(A) lies in A (x) A

    @property
    def regular(self) -> bool:
        return 3 in self._T and 4 in self._T

    def T(self, k: int) -> LinOp:
        if k not in self._T:
            raise NotRegular(f"T{k} is not available: the coproduct was not given regular slices")
        return self._T[k]

    def canonical_map(self, k: int, x: Vec) -> Vec:
        return self.T(k)(x)

    def slice(self, k: int, a, b) -> Vec:
        return self.T(k).image((a, b))

    def delta(self, a: Vec) -> Multiplier:
        """D(a) as a two-sided multiplier of A (x) A."""
        A = self.A
        T1, T2 = self.T(1), self.T(2)

        def left(k):  # D(a)(x (x) y) = T1(a (x) y)(x (x) 1)
            x, y = k
            return leg_rmul(A, T1(join(_one(a), Vec.basis((y,)))), Vec.basis(x), 0)

        def right(k):  # (x (x) y)D(a) = (1 (x) y) T2(x (x) a)
            x, y = k
            return leg_lmul(A, Vec.basis(y), T2(join(Vec.basis((x,)), _one(a))), 1)

        return Multiplier(self.AA, left, right, "D(a)")

    def cop(self) -> "Coproduct":
        """The flipped coproduct sigma o D (needs regular slices)."""
        if not self.regular:
            raise NotRegular("the opposite coproduct of a non-regular coproduct has no slices in A (x) A")
        s = self.slice
        dl = None
        if self.delta_element is not None:
            dl = lambda k: flip(self.delta_element(k))
        return Coproduct(
            self.A,
            lambda a, b: flip(s(4, b, a)),
            lambda a, b: flip(s(3, b, a)),
            lambda a, b: flip(s(2, b, a)),
            lambda a, b: flip(s(1, b, a)),
            name=self.name + "^cop",
            delta=dl,
        )

    def on_opposite(self) -> "Coproduct":
        """The same D viewed on the opposite algebra; T1,T2 become T3,T4."""
        if not self.regular:
            raise NotRegular("the opposite algebra needs regular slices")
        s = self.slice
        return Coproduct(
            self.A.op(),
            lambda a, b: s(3, a, b),
            lambda a, b: s(4, a, b),
            lambda a, b: s(1, a, b),
            lambda a, b: s(2, a, b),
            name=self.name + "^op",
            delta=self.delta_element,
        )

    @classmethod
    def from_delta(cls, algebra: BasedAlgebra, delta: Callable, name: str = "") -> "Coproduct":
        """Slices by plain multiplication from D on basis tokens valued in A (x) A."""
        A = algebra

        def t1(a, b):
            return leg_rmul(A, delta(a), Vec.basis(b), 1)

        def t2(a, b):
            return leg_lmul(A, Vec.basis(a), delta(b), 0)

        def t3(a, b):
            return leg_lmul(A, Vec.basis(b), delta(a), 1)

        def t4(a, b):
            return leg_rmul(A, delta(b), Vec.basis(a), 0)

        return cls(algebra, t1, t2, t3, t4, name=name, delta=delta)


def _one(a: Vec) -> Vec:
    return Vec._wrap({(k,): c for k, c in a.items()})


def op_and_cop(alg: BasedAlgebra, cp: Coproduct | None = None):
    """Return (A^op, D on A^op, D^cop); missing parts are None."""
    if cp is None:
        return alg.op(), None, None
    return alg.op(), cp.on_opposite() if cp.regular else None, cp.cop() if cp.regular else None


# ---------------------------------------------------------------------------
# checks


def on_first_two(op: LinOp, x: Vec) -> Vec:
    return legs_map(x, 0, op.image)


def on_last_two(op: LinOp, x: Vec) -> Vec:
    return legs_map(x, 1, op.image)


def check_coassociativity(cp: Coproduct, window: Sequence, rng: random.Random | None = None,
                          trials: int = 100, prefix: str = "coproduct") -> VerificationReport:
    rep = VerificationReport(cp.name)
    T1, T2 = cp.T(1), cp.T(2)

    def law(a, b, c):
        x = Vec.basis((a, b, c))
        lhs = on_first_two(T2, on_last_two(T1, x))
        rhs = on_last_two(T1, on_first_two(T2, x))
        if lhs != rhs:
            return {"lhs": lhs, "rhs": rhs}

    rep.run(f"{prefix}/coassociativity", tuples(window, 3, rng, trials), law)
    return rep


def check_slices_in_window(cp: Coproduct, window: Sequence, prefix: str = "coproduct") -> VerificationReport:
    """Slices of window pairs stay inside the window (the locality property)."""
    rep = VerificationReport(cp.name)
    inW = set(window)
    ks = [k for k in (1, 2, 3, 4) if k in cp._T]

    def local(a, b):
        for k in ks:
            v = cp.slice(k, a, b)
            if any(x not in inW or y not in inW for x, y in v.keys()):
                return {"map": f"T{k}", "value": v}

    rep.run(f"{prefix}/slices-local", ((a, b) for a in window for b in window), local)
    return rep


def check_homomorphism(cp: Coproduct, window: Sequence, rng: random.Random | None = None, trials: int = 100,
                       prefix: str = "coproduct") -> VerificationReport:
    """D(ab) = D(a)D(b) on slices: T1(ab (x) c) = D(a) T1(b (x) c)."""
    rep = VerificationReport(cp.name)
    A = cp.A
    T1 = cp.T(1)

    def hom(a, b, c):
        lhs = T1(join(_one(A.mult(a, b)), Vec.basis((c,))))
        inner = T1.image((b, c))
        rhs = cp.delta(Vec.basis(a)).lmul(inner)
        if lhs != rhs:
            return {"lhs": lhs, "rhs": rhs}

    rep.run(f"{prefix}/multiplicative", tuples(window, 3, rng, trials), hom)
    if A.has_star:
        if not cp.regular:
            rep.skip(f"{prefix}/star-homomorphism", "needs regular slices")
            return rep
        AA = cp.AA

        def star_hom(a, b):
            # D(a*)(1 (x) b) = ((1 (x) b*) D(a))*
            lhs = T1(join(_one(A.star(Vec.basis(a))), Vec.basis((b,))))
            rhs = AA.star(cp.T(3)(join(Vec.basis((a,)), _one(A.star(Vec.basis(b))))))
            if lhs != rhs:
                return {"lhs": lhs, "rhs": rhs}

        rep.run(f"{prefix}/star-homomorphism", tuples(window, 2, rng, trials), star_hom)
    return rep


def leg_spans(cp: Coproduct, window: Sequence) -> tuple[list[Vec], list[Vec]]:
    """Coordinate slices of the legs: second legs of (c (x) 1)D(b), first legs of D(b)(1 (x) c)."""
    right_legs, left_legs = [], []
    for b in window:
        for c in window:
            by_first: dict = {}
            for (x, y), v in cp.slice(2, c, b).items():
                by_first.setdefault(x, {})[y] = v
            right_legs.extend(Vec._wrap(d) for d in by_first.values())
            by_second: dict = {}
            for (x, y), v in cp.slice(1, b, c).items():
                by_second.setdefault(y, {})[x] = v
            left_legs.extend(Vec._wrap(d) for d in by_second.values())
    return right_legs, left_legs


def check_full(cp: Coproduct, window: Sequence, prefix: str = "coproduct") -> VerificationReport:
    rep = VerificationReport(cp.name)
    right_legs, left_legs = leg_spans(cp, window)
    for side, vecs in (("right-leg", right_legs), ("left-leg", left_legs)):
        e = echelon(vecs)
        missing = next((k for k in window if not e.contains(Vec.basis(k))), None)
        rep.add(f"{prefix}/full/{side}", missing is None, {"rank": e.rank, "dim": len(window), "missing": missing},
                detail=f"rank {e.rank} of {len(window)}")
    return rep


def check_slice_nondegeneracy(cp: Coproduct, window: Sequence, prefix: str = "coproduct") -> VerificationReport:
    """Diagnostic: b = 0 whenever D(a)(1 (x) b) = 0 for all a."""
    from .linalg import kernel
    rep = VerificationReport(cp.name)
    imgs = {b: _stack_all((a, cp.slice(1, a, b)) for a in window) for b in window}
    ker = kernel(imgs)
    rep.add(f"{prefix}/slice-nondegenerate", not ker, {"element": ker[0]} if ker else None)
    return rep


def _stack_all(parts) -> Vec:
    d: dict = {}
    for tag, v in parts:
        for k, c in v.items():
            d[(tag, k)] = c
    return Vec._wrap(d)


# ---------------------------------------------------------------------------
# counit


class Counit:
    def __init__(self, rule: Callable, name: str = "eps"):
        self.rule = rule
        self.name = name
        self._memo: dict = {}

    def value(self, k) -> Scalar:
        v = self._memo.get(k)
        if v is None:
            v = Scalar.coerce(self.rule(k))
            self._memo[k] = v
        return v

    def __call__(self, x: Vec) -> Scalar:
        total = ZERO
        for k, c in x.items():
            total = total + c * self.value(k)
        return total

    @classmethod
    def from_values(cls, values: dict, name: str = "eps") -> "Counit":
        return cls(lambda k: values.get(k, ZERO), name)


def counit_equations(cp: Coproduct, window: Sequence):
    """Columns (one per unknown eps(x)) and target of the joint counit system."""
    A = cp.A
    columns: dict = {}
    target: dict = {}
    for a in window:
        for b in window:
            ab = A.mult(a, b)
            for (x, y), c in cp.slice(1, a, b).items():
                columns.setdefault(x, {})[("L", a, b, y)] = columns.get(x, {}).get(("L", a, b, y), ZERO) + c
            for (x, y), c in cp.slice(2, a, b).items():
                columns.setdefault(y, {})[("R", a, b, x)] = columns.get(y, {}).get(("R", a, b, x), ZERO) + c
            for k, c in ab.items():
                target[("L", a, b, k)] = c
                target[("R", a, b, k)] = c
    for k in window:
        columns.setdefault(k, {})
    cols = {k: Vec(v) for k, v in columns.items()}
    return cols, Vec(target)


def solve_counit(cp: Coproduct, window: Sequence) -> Counit:
    cols, target = counit_equations(cp, window)
    try:
        sol = solve(cols, target)
    except InconsistentSystem as exc:
        raise NoCounit(exc.certificate) from None
    if not sol.unique:
        raise CounitNotUnique(len(sol.nullspace))
    values = {k: sol.particular[k] for k in cols}
    return Counit.from_values(values, "eps(solved)")


def check_counit(cp: Coproduct, eps: Counit, window: Sequence, rng: random.Random | None = None,
                 trials: int = 100, prefix: str = "counit") -> VerificationReport:
    from .algebra import contract
    rep = VerificationReport(cp.name)
    A = cp.A

    def left(a, b):
        lhs = contract(cp.slice(1, a, b), 0, eps.value)
        if lhs != A.mult(a, b):
            return {"lhs": lhs, "ab": A.mult(a, b)}

    def right(a, b):
        lhs = contract(cp.slice(2, a, b), 1, eps.value)
        if lhs != A.mult(a, b):
            return {"lhs": lhs, "ab": A.mult(a, b)}

    rep.run(f"{prefix}/left-law", tuples(window, 2, rng, trials), left)
    rep.run(f"{prefix}/right-law", tuples(window, 2, rng, trials), right)
    if A.has_star:
        def conj(a):
            s = eps(A.star(Vec.basis(a)))
            if s != eps.value(a).conj():
                return {"eps(a*)": s, "conj eps(a)": eps.value(a).conj()}
        rep.run(f"{prefix}/star", ((a,) for a in window), conj)
    return rep


# ---------------------------------------------------------------------------
# pairings


class DualPairing:
    def __init__(self, pair: Callable, name: str = "pairing"):
        self.rule = pair
        self.name = name

    def __call__(self, x: Vec, y: Vec) -> Scalar:
        total = ZERO
        for k, c in x.items():
            for l, d in y.items():
                v = self.rule(k, l)
                if v:
                    total = total + c * d * v
        return total

    def pair2(self, x: Vec, y: Vec) -> Scalar:
        """Pairing of two-leg tensors, legwise."""
        total = ZERO
        for (k1, k2), c in x.items():
            for (l1, l2), d in y.items():
                v = self.rule(k1, l1)
                if v:
                    w = self.rule(k2, l2)
                    if w:
                        total = total + c * d * v * w
        return total

    def matrix(self, wa: Sequence, wb: Sequence) -> list[list[Scalar]]:
        return [[Scalar.coerce(self.rule(a, b)) for b in wb] for a in wa]


def check_pairing(pr: DualPairing, cpA: Coproduct, cpB: Coproduct, windowA: Sequence, windowB: Sequence,
                  rng: random.Random | None = None, trials: int = 100, prefix: str = "pairing") -> VerificationReport:
    from .linalg import kernel
    from .sampling import exhaustive_limit
    rep = VerificationReport(pr.name)
    exhaustive = (len(windowA) * len(windowB)) ** 2 <= exhaustive_limit() or rng is None
    if exhaustive:
        cases = [(Vec.basis((a,)), Vec.basis((a2,)), Vec.basis((b,)), Vec.basis((b2,)))
                 for a in windowA for a2 in windowA for b in windowB for b2 in windowB]
    else:
        cases = [tuple(_one(random_vec(w, rng)) for w in (windowA, windowA, windowB, windowB)) for _ in range(trials)]

    def tt(x, y):
        return join(x, y)

    laws = [
        ("T1-T2", lambda a, a2, b, b2: (pr.pair2(cpA.T(1)(tt(a, a2)), tt(b, b2)), pr.pair2(tt(a, a2), cpB.T(2)(tt(b, b2))))),
        ("T2-T1", lambda a, a2, b, b2: (pr.pair2(cpA.T(2)(tt(a, a2)), tt(b, b2)), pr.pair2(tt(a, a2), cpB.T(1)(tt(b, b2))))),
    ]
    if cpA.regular and cpB.regular:
        laws += [
            ("T3-flipped", lambda a, a2, b, b2: (pr.pair2(cpA.T(3)(tt(a, a2)), tt(b, b2)), pr.pair2(tt(a2, a), cpB.T(3)(tt(b2, b))))),
            ("T4-flipped", lambda a, a2, b, b2: (pr.pair2(cpA.T(4)(tt(a, a2)), tt(b, b2)), pr.pair2(tt(a2, a), cpB.T(4)(tt(b2, b))))),
        ]
    for label, law in laws:
        def pred(a, a2, b, b2, law=law):
            l, r = law(a, a2, b, b2)
            if l != r:
                return {"lhs": l, "rhs": r}
        rep.run(f"{prefix}/adjoint/{label}", cases, pred, detail=f"{len(cases)} quadruples")
    imgs_l = {a: Vec((b, pr.rule(a, b)) for b in windowB) for a in windowA}
    imgs_r = {b: Vec((a, pr.rule(a, b)) for a in windowA) for b in windowB}
    kl, kr = kernel(imgs_l), kernel(imgs_r)
    rep.add(f"{prefix}/non-degenerate", not kl and not kr, {"left-kernel": kl[:1], "right-kernel": kr[:1]})
    return rep
