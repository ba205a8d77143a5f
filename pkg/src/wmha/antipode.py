"""Generalized inverses of the canonical maps and the antipodes they define.

Conventions for the four antipodes, matching the four canonical maps:

    R1(a (x) b) = sum a(1) (x) S1(a(2)) b       S1(a) acts on the left
    R2(a (x) b) = sum a S2(b(1)) (x) b(2)       S2(b) acts on the right
    R3(a (x) b) = sum a(1) (x) b S3(a(2))       S3(a) acts on the right
    R4(a (x) b) = sum S4(b(1)) a (x) b(2)       S4(b) acts on the left

Sweedler sums are only ever evaluated through a slice that lands in A (x) A.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from .algebra import BasedAlgebra, Multiplier, contract, flip, leg_lmul, leg_map, leg_rmul, multiply_out
from .coproduct import (Coproduct, Counit, CounitNotUnique, NoCounit, NotRegular, _one, check_full, on_first_two,
                        on_last_two, solve_counit)
from .linalg import InconsistentSystem, LinOp, Vec, _axpy, add_all, bilinear, echelon, join, kernel, solve
from .report import VerificationReport
from .sampling import tuples

LEFT, RIGHT = "left", "right"
SIDE = {1: LEFT, 2: RIGHT, 3: RIGHT, 4: LEFT}


class CoveringFailure(ValueError):
    pass


class ReconstructionMismatch(ValueError):
    def __init__(self, witness):
        super().__init__(f"derived antipode does not reproduce R: {witness}")
        self.witness = witness


class NotBijective(ValueError):
    pass


class GeneralizedInverse:
    """R with (hopefully) T R T = T and R T R = R; P = T R, Q = R T."""

    def __init__(self, k: int, cp: Coproduct, R: Callable | LinOp, name: str = ""):
        self.k = k
        self.cp = cp
        self.R = R if isinstance(R, LinOp) else LinOp(R, f"R{k}")
        self.name = name or f"R{k}"
        T = cp.T(k)
        self.T = T
        self.P = LinOp(lambda key: T(self.R.image(key)), f"T{k}R{k}")
        self.Q = LinOp(lambda key: self.R(T.image(key)), f"R{k}T{k}")

    def __call__(self, x: Vec) -> Vec:
        return self.R(x)


class AntipodeMap:
    """S(a) as a one-sided multiplier.

    ``act(a, b)`` is S(a)b for side LEFT and bS(a) for side RIGHT, on basis
    tokens.  ``endo`` (A -> A) and ``inverse`` are present when known.
    """

    def __init__(self, algebra: BasedAlgebra, k: int, act: Callable | None = None, endo: LinOp | None = None,
                 inverse: LinOp | None = None, name: str = ""):
        self.A = algebra
        self.k = k
        self.side = SIDE[k]
        self.name = name or f"S{k}"
        self.endo = endo
        self.inverse = inverse
        if act is None:
            if endo is None:
                raise ValueError("an antipode needs an action or an endomorphism")
            if self.side == LEFT:
                act = lambda a, b: algebra.mul(endo.image(a), Vec.basis(b))
            else:
                act = lambda a, b: algebra.mul(Vec.basis(b), endo.image(a))
        self._act = act
        self._memo: dict = {}

    def act(self, a, b) -> Vec:
        key = (a, b)
        v = self._memo.get(key)
        if v is None:
            v = self._act(a, b)
            self._memo[key] = v
        return v

    def act_vec(self, a: Vec, b: Vec) -> Vec:
        return bilinear(self.act, a, b)

    def __call__(self, x: Vec) -> Vec:
        if self.endo is None:
            raise CoveringFailure(f"{self.name} is only known as a one-sided multiplier")
        return self.endo(x)

    def inv(self, x: Vec) -> Vec:
        if self.inverse is None:
            raise NotBijective(f"{self.name} has no known inverse")
        return self.inverse(x)

    def as_k(self, k: int, name: str = "") -> "AntipodeMap":
        """The same endomorphism used in the role of S_k."""
        return AntipodeMap(self.A, k, endo=self.endo, inverse=self.inverse, name=name or f"S{k}")

    def inverted(self, k: int) -> "AntipodeMap":
        if self.endo is None or self.inverse is None:
            raise NotBijective(f"{self.name} is not known to be bijective")
        return AntipodeMap(self.A, k, endo=self.inverse, inverse=self.endo, name=f"{self.name}^-1")

    @classmethod
    def from_rule(cls, algebra: BasedAlgebra, k: int, rule: Callable, inverse_rule: Callable | None = None,
                  name: str = "") -> "AntipodeMap":
        return cls(algebra, k, endo=LinOp(rule, name or f"S{k}"),
                   inverse=LinOp(inverse_rule) if inverse_rule is not None else None, name=name)


# ---------------------------------------------------------------------------
# R from S


def build_R_from_antipode(k: int, cp: Coproduct, S: AntipodeMap) -> GeneralizedInverse:
    """R_k from the Sweedler formula for S_k, covered by a slice.

    With D(A) inside A (x) A the formula is evaluated on D(a) directly;
    otherwise the regular slices are used together with S and its inverse.
    """
    A = cp.A
    if cp.delta_element is not None:
        D = cp.delta_element
        if k == 1:
            rule = lambda key: _legs(D(key[0]), lambda x, y: join(Vec.basis((x,)), _one(S.act(y, key[1]))))
        elif k == 2:
            rule = lambda key: _legs(D(key[1]), lambda x, y: join(_one(S.act(x, key[0])), Vec.basis((y,))))
        elif k == 3:
            rule = lambda key: _legs(D(key[0]), lambda x, y: join(Vec.basis((x,)), _one(S.act(y, key[1]))))
        else:
            rule = lambda key: _legs(D(key[1]), lambda x, y: join(_one(S.act(x, key[0])), Vec.basis((y,))))
        return GeneralizedInverse(k, cp, rule, f"R{k}[{S.name}]")
    if S.endo is None or S.inverse is None:
        raise CoveringFailure("covering the Sweedler sum needs D(A) in A (x) A, or a bijective S with regular slices")
    Sf, Si = S.endo.image, S.inverse.image
    try:
        if k == 1:    # (id (x) S) T3(a (x) S^-1 b)
            T = cp.T(3)
            rule = lambda key: leg_map(T(join(Vec.basis((key[0],)), _one(Si(key[1])))), 1, Sf)
        elif k == 2:  # (S (x) id) T4(S^-1 a (x) b)
            T = cp.T(4)
            rule = lambda key: leg_map(T(join(_one(Si(key[0])), Vec.basis((key[1],)))), 0, Sf)
        elif k == 3:  # (id (x) S3) T1(a (x) S3^-1 b)
            T = cp.T(1)
            rule = lambda key: leg_map(T(join(Vec.basis((key[0],)), _one(Si(key[1])))), 1, Sf)
        else:         # (S4 (x) id) T2(S4^-1 a (x) b)
            T = cp.T(2)
            rule = lambda key: leg_map(T(join(_one(Si(key[0])), Vec.basis((key[1],)))), 0, Sf)
    except NotRegular as exc:
        raise CoveringFailure(str(exc)) from None
    return GeneralizedInverse(k, cp, rule, f"R{k}[{S.name}]")


def _legs(x: Vec, f: Callable) -> Vec:
    d: dict = {}
    for (a, b), c in x.items():
        _axpy(d, c, f(a, b)._d)
    return Vec._wrap(d)


# ---------------------------------------------------------------------------
# conditions on R


def check_geninv_conditions(gi: GeneralizedInverse, cp: Coproduct | None, window: Sequence,
                            rng: random.Random | None = None, trials: int = 100,
                            prefix: str | None = None) -> VerificationReport:
    k, cp = gi.k, cp or gi.cp
    prefix = prefix or f"geninv/R{k}"
    rep = VerificationReport(f"{gi.name} for T{k}")
    T, R = gi.T, gi.R
    pairs = [(a, b) for a in window for b in window]

    def trt(a, b):
        x = T.image((a, b))
        y = T(R(x))
        if y != x:
            return {"TRT": y, "T": x}

    def rtr(a, b):
        x = R.image((a, b))
        y = R(T(x))
        if y != x:
            return {"RTR": y, "R": x}

    rep.run(f"{prefix}/TRT=T", pairs, trt)
    rep.run(f"{prefix}/RTR=R", pairs, rtr)

    # module and coproduct rules; k = 3, 4 are k = 1, 2 for the opposite algebra
    if k in (3, 4):
        cp_op = cp.on_opposite()
        base = k - 2
        T2_, T1_ = cp_op.T(2), cp_op.T(1)
        A_ = cp_op.A
    else:
        base = k
        T2_, T1_ = cp.T(2), cp.T(1)
        A_ = cp.A
    d = Vec.basis

    if base == 1:
        def module(a, b, c):
            lhs = R(join(d((a,)), _one(A_.mult(b, c))))
            rhs = leg_rmul(A_, R.image((a, b)), d(c), 1)
            if lhs != rhs:
                return {"lhs": lhs, "rhs": rhs}

        def coprod(a, b, c):
            x = d((a, b, c))
            lhs = on_first_two(T2_, on_last_two(R, x))
            rhs = on_last_two(R, on_first_two(T2_, x))
            if lhs != rhs:
                return {"lhs": lhs, "rhs": rhs}
    else:
        def module(a, b, c):
            lhs = R(join(_one(A_.mult(a, b)), d((c,))))
            rhs = leg_lmul(A_, d(a), R.image((b, c)), 0)
            if lhs != rhs:
                return {"lhs": lhs, "rhs": rhs}

        def coprod(a, b, c):
            x = d((a, b, c))
            lhs = on_last_two(T1_, on_first_two(R, x))
            rhs = on_first_two(R, on_last_two(T1_, x))
            if lhs != rhs:
                return {"lhs": lhs, "rhs": rhs}

    rep.run(f"{prefix}/module-rule", tuples(window, 3, rng, trials), module)
    rep.run(f"{prefix}/coproduct-rule", tuples(window, 3, rng, trials), coprod)

    def idem(op):
        def f(a, b):
            x = op.image((a, b))
            if op(x) != x:
                return {"once": x, "twice": op(x)}
        return f

    rep.run(f"{prefix}/P-idempotent", pairs, idem(gi.P))
    rep.run(f"{prefix}/Q-idempotent", pairs, idem(gi.Q))
    rq = echelon(gi.Q.image(p) for p in pairs).rank
    ker = len(kernel({p: T.image(p) for p in pairs}))
    rep.add(f"{prefix}/range-Q-plus-kernel", rq + ker == len(pairs), {"rank Q": rq, "dim ker": ker, "dim": len(pairs)},
            detail=f"{rq} + {ker} = {len(pairs)}")
    return rep


# ---------------------------------------------------------------------------
# S from R


def derive_antipode(k: int, gi: GeneralizedInverse, eps: Counit, window: Sequence | None = None,
                    reconstruct: bool = True) -> AntipodeMap:
    cp = gi.cp
    A = cp.A
    R = gi.R
    d = Vec.basis
    if k == 1:
        act = lambda a, b: contract(R.image((a, b)), 0, eps.value)
    elif k == 2:
        act = lambda a, c: contract(R.image((c, a)), 1, eps.value)
    elif k == 3:
        act = lambda a, b: contract(R.image((a, b)), 0, eps.value)
    else:
        act = lambda a, b: contract(R.image((b, a)), 1, eps.value)
    S = AntipodeMap(A, k, act=act, name=f"S{k}(derived)")
    if window is not None:
        endo = _endo_from_action(S, window)
        if endo is not None:
            S.endo = endo
            S.inverse = invert_on_window(endo, window)
        if reconstruct:
            mismatch = reconstruction_mismatch(k, cp, S, gi, window)
            if mismatch is not None:
                raise ReconstructionMismatch(mismatch)
    return S


def _endo_from_action(S: AntipodeMap, window: Sequence) -> LinOp | None:
    A = S.A
    values = {}
    for a in window:
        if S.side == LEFT:
            m = Multiplier(A, lambda b, a=a: S.act(a, b), lambda b: Vec(), "S(a)")
        else:
            m = Multiplier(A, lambda b: Vec(), lambda b, a=a: S.act(a, b), "S(a)")
        x = _one_sided_element(m, window, S.side)
        if x is None:
            return None
        values[a] = x
    return LinOp(lambda k: values[k] if k in values else _raise(k), S.name, matrix=values)


def _raise(k):
    raise CoveringFailure(f"antipode value outside the window at {k!r}")


def _one_sided_element(m: Multiplier, window: Sequence, side: str) -> Vec | None:
    """Element x with x b = m b (left) or b x = b m (right) for window b."""
    A = m.algebra
    if A.unit is not None and A.finite:
        x = m.lmul(A.unit) if side == LEFT else m.rmul(A.unit)
    else:
        def stack(b, v):
            return Vec._wrap({(b, k): c for k, c in v.items()})
        if side == LEFT:
            cols = {k: add_all(stack(b, A.mult(k, b)) for b in window) for k in window}
            target = add_all(stack(b, m.L.image(b)) for b in window)
        else:
            cols = {k: add_all(stack(b, A.mult(b, k)) for b in window) for k in window}
            target = add_all(stack(b, m.R.image(b)) for b in window)
        try:
            sol = solve(cols, target)
        except InconsistentSystem:
            return None
        x = sol.particular
    for b in window:
        got = A.mul(x, Vec.basis(b)) if side == LEFT else A.mul(Vec.basis(b), x)
        want = m.L.image(b) if side == LEFT else m.R.image(b)
        if got != want:
            return None
    return x


def invert_on_window(op: LinOp, window: Sequence) -> LinOp | None:
    """Inverse of a map that permutes span(window), or None if not bijective there."""
    cols = {k: op.image(k) for k in window}
    inW = set(window)
    if any(key not in inW for v in cols.values() for key in v.keys()):
        return None
    if len(kernel(cols)):
        return None
    e_cols = {}
    for y in window:
        try:
            e_cols[y] = solve(cols, Vec.basis(y)).particular
        except InconsistentSystem:
            return None
    return LinOp(lambda k: e_cols[k] if k in e_cols else _raise(k), op.name + "^-1", matrix=e_cols)


def reconstruction_mismatch(k: int, cp: Coproduct, S: AntipodeMap, gi: GeneralizedInverse, window: Sequence):
    try:
        rebuilt = build_R_from_antipode(k, cp, S)
    except (CoveringFailure, NotBijective) as exc:
        return {"reason": str(exc)}
    for a in window:
        for b in window:
            x, y = gi.R.image((a, b)), rebuilt.R.image((a, b))
            if x != y:
                return {"case": [a, b], "R": x, "from S": y}
    return None


# ---------------------------------------------------------------------------
# identities


def _N(S: AntipodeMap):
    """The pairing x (x) y -> S1(x)y, xS2(y), yS3(x), S4(y)x."""
    k = S.k
    if k in (1, 3):
        return lambda v: _legs(v, lambda x, y: S.act(x, y))
    return lambda v: _legs(v, lambda x, y: S.act(y, x))


def check_antipode_identities(S: AntipodeMap, cp: Coproduct, window: Sequence, side: str | None = None,
                              rng: random.Random | None = None, trials: int = 100,
                              prefix: str | None = None) -> VerificationReport:
    """sum a(1)S(a(2))a(3) = a and sum S(a(1))a(2)S(a(3)) = S(a), multiplied by b.

    For S3, S4 (side="inverse") the reversed-leg versions are used.
    """
    k = S.k
    side = side or ("direct" if k in (1, 2) else "inverse")
    if (side == "direct") != (k in (1, 2)):
        raise ValueError(f"S{k} belongs to the {'direct' if k in (1, 2) else 'inverse'} side")
    prefix = prefix or f"antipode/S{k}"
    rep = VerificationReport(f"{S.name} identities")
    A = cp.A
    try:
        RS = build_R_from_antipode(k, cp, S)
    except (CoveringFailure, NotBijective) as exc:
        rep.add(f"{prefix}/covering", False, {"reason": str(exc)})
        return rep
    T = cp.T(k)
    opposite = k in (3, 4)
    N = _N(S)

    def first(a, b):
        x = Vec.basis((a, b))
        lhs = multiply_out(A, RS(T(x)), opposite)
        rhs = multiply_out(A, x, opposite)
        if lhs != rhs:
            return {"lhs": lhs, "rhs": rhs}

    def second(a, b):
        x = Vec.basis((a, b))
        lhs = N(T(RS(x)))
        rhs = N(x)
        if lhs != rhs:
            return {"lhs": lhs, "rhs": rhs}

    rep.run(f"{prefix}/a1-S(a2)-a3=a", tuples(window, 2, rng, trials), first)
    rep.run(f"{prefix}/S(a1)-a2-S(a3)=S(a)", tuples(window, 2, rng, trials), second)
    return rep


def sandwich_equal_left_right(S1: AntipodeMap, S2: AntipodeMap, window: Sequence, rng=None, trials=100):
    """c(S1(a)b) = (cS2(a))b: returns the first failing (a, b, c) or None."""
    A = S1.A
    d = Vec.basis
    for a, b, c in tuples(window, 3, rng, trials):
        lhs = A.mul(d(c), S1.act(a, b))
        rhs = A.mul(S2.act(a, c), d(b))
        if lhs != rhs:
            return {"case": [a, b, c], "c(S1(a)b)": lhs, "(cS2(a))b": rhs}
    return None


def _same_right(Sa: AntipodeMap, Sb: AntipodeMap, window: Sequence):
    for a in window:
        for b in window:
            x, y = Sa.act(a, b), Sb.act(a, b)
            if x != y:
                return {"case": [a, b], "lhs": x, "rhs": y}
    return None


def check_relations(cp: Coproduct, S1: AntipodeMap, window: Sequence, S2: AntipodeMap | None = None,
                    S3: AntipodeMap | None = None, S4: AntipodeMap | None = None, eps: Counit | None = None,
                    rng: random.Random | None = None, trials: int = 100, prefix: str = "relations") -> VerificationReport:
    rep = VerificationReport("antipode relations")
    A = cp.A
    d = Vec.basis
    if A.has_star and S3 is not None:
        def s3(a, b):
            lhs = S3.act(a, b)                                        # b S3(a)
            rhs = A.star(S1.act_vec(A.star(d(a)), A.star(d(b))))       # (S1(a*) b*)*
            if lhs != rhs:
                return {"bS3(a)": lhs, "(S1(a*)b*)*": rhs}
        rep.run(f"{prefix}/star/S3(a)=S1(a*)*", tuples(window, 2, rng, trials), s3)
    else:
        rep.skip(f"{prefix}/star/S3(a)=S1(a*)*", "no involution or no S3")
    if A.has_star and S4 is not None and S2 is not None:
        def s4(a, b):
            lhs = S4.act(a, b)                                        # S4(a) b
            rhs = A.star(S2.act_vec(A.star(d(a)), A.star(d(b))))       # (b* S2(a*))*
            if lhs != rhs:
                return {"S4(a)b": lhs, "(b*S2(a*))*": rhs}
        rep.run(f"{prefix}/star/S4(a)=S2(a*)*", tuples(window, 2, rng, trials), s4)
    else:
        rep.skip(f"{prefix}/star/S4(a)=S2(a*)*", "no involution or no S2/S4")

    # conjugation formulas; only under their hypotheses
    if S1.endo is None or S1.inverse is None:
        rep.skip(f"{prefix}/bijective", "S1 is not a bijection of A on this window")
        return rep
    hyp = check_anti_maps(cp, S1, window, rng, trials, prefix=f"{prefix}/hypothesis")
    rep.extend(hyp)
    if not hyp.passed or not cp.regular:
        rep.skip(f"{prefix}/conjugation-formulas", "S1 is not an anti-algebra and anti-coalgebra map")
        return rep
    S, Si = S1.endo.image, S1.inverse.image

    def R2_rule(key):  # sigma (S^-1 (x) S^-1) R1 (S (x) S) sigma
        a, b = key
        x = join(_one(S(b)), _one(S(a)))
        y = R1(x)
        return flip(leg_map(leg_map(y, 0, Si), 1, Si))

    def R3_rule(key):  # (id (x) S^-1) T1 (id (x) S)
        a, b = key
        return leg_map(cp.T(1)(join(d((a,)), _one(S(b)))), 1, Si)

    def R4_rule(key):  # sigma (S (x) id) T1 (S^-1 (x) id) sigma
        a, b = key
        return flip(leg_map(cp.T(1)(join(_one(Si(b)), d((a,)))), 0, S))

    R1 = build_R_from_antipode(1, cp, S1.as_k(1)).R
    if eps is None:
        try:
            eps = solve_counit(cp, window)
        except (NoCounit, CounitNotUnique):
            rep.skip(f"{prefix}/conjugation-formulas", "no unique counit")
            return rep
    inv3 = S1.inverted(3)
    inv4 = S1.inverted(4)
    for k, rule, want in ((2, R2_rule, S1.as_k(2)), (3, R3_rule, inv3), (4, R4_rule, inv4)):
        gi = GeneralizedInverse(k, cp, rule, f"R{k}(conjugated)")
        sub = check_geninv_conditions(gi, cp, window, rng, trials, prefix=f"{prefix}/R{k}-conjugated")
        rep.extend(sub)
        Sk = derive_antipode(k, gi, eps, window=None)
        if k == 2:
            w = sandwich_equal_left_right(S1, Sk, window, rng, trials)
            rep.add(f"{prefix}/R2-conjugated/S2=S1", w is None, w)
        else:
            w = _same_right(Sk, want, window)
            rep.add(f"{prefix}/R{k}-conjugated/S{k}=S^-1", w is None, w)
    if S2 is not None:
        w = sandwich_equal_left_right(S1, S2, window, rng, trials)
        rep.add(f"{prefix}/S2=S1", w is None, w)
    for Sk, want in ((S3, inv3), (S4, inv4)):
        if Sk is not None:
            w = _same_right(Sk, want, window)
            rep.add(f"{prefix}/S{Sk.k}=S^-1", w is None, w)
    return rep


def check_anti_maps(cp: Coproduct, S: AntipodeMap, window: Sequence, rng=None, trials=100,
                    prefix: str = "antipode") -> VerificationReport:
    """S(ab) = S(b)S(a) and D(S(a))(1 (x) S(b)) = sigma (S (x) S)((b (x) 1)D(a))."""
    rep = VerificationReport(f"{S.name} anti-maps")
    A = cp.A
    Sf = S.endo.image

    def anti_alg(a, b):
        lhs = S(A.mult(a, b))
        rhs = A.mul(Sf(b), Sf(a))
        if lhs != rhs:
            return {"S(ab)": lhs, "S(b)S(a)": rhs}

    def anti_coalg(a, b):
        lhs = cp.T(1)(join(_one(Sf(a)), _one(Sf(b))))
        rhs = flip(leg_map(leg_map(cp.slice(2, b, a), 0, Sf), 1, Sf))
        if lhs != rhs:
            return {"lhs": lhs, "rhs": rhs}

    rep.run(f"{prefix}/anti-multiplicative", tuples(window, 2, rng, trials), anti_alg)
    rep.run(f"{prefix}/anti-comultiplicative", tuples(window, 2, rng, trials), anti_coalg)
    return rep


def unifying_check(cp: Coproduct, S: AntipodeMap, window: Sequence, rng: random.Random | None = None,
                   trials: int = 100, prefix: str = "unifying") -> VerificationReport:
    rep = VerificationReport(f"unifying structure for {cp.name}")
    A = cp.A
    rep.add(f"{prefix}/regular", cp.regular)
    rep.extend(check_full(cp, window, prefix=prefix))
    try:
        solve_counit(cp, window)
        rep.add(f"{prefix}/counit", True)
    except (NoCounit, CounitNotUnique) as exc:
        rep.add(f"{prefix}/counit", False, {"reason": str(exc)})
    bij = S.endo is not None and S.inverse is not None
    rep.add(f"{prefix}/S-bijective", bij)
    if not bij:
        return rep
    rep.extend(check_anti_maps(cp, S, window, rng, trials, prefix=prefix))
    rep.extend(check_antipode_identities(S.as_k(1, S.name), cp, window, "direct", rng, trials, prefix=prefix))
    if A.has_star:
        def star_law(a):
            x = S(A.star(S(Vec.basis(a))))
            if A.star(x) != Vec.basis(a):
                return {"S(S(a)*)*": A.star(x)}
        rep.run(f"{prefix}/S(S(a)*)*=a", ((a,) for a in window), star_law)
    return rep


def source_target(S: AntipodeMap, cp: Coproduct, a: Vec) -> tuple[Multiplier, Multiplier]:
    """eps_s(a) = sum S(a(1))a(2) and eps_t(a) = sum a(1)S(a(2)) as multipliers."""
    A = cp.A
    if S.endo is None or S.inverse is None:
        raise CoveringFailure("source and target maps need a bijective antipode")
    if not cp.regular:
        raise CoveringFailure("source and target maps are covered through regular slices")
    Sf, Si = S.endo.image, S.inverse.image
    av = _one(a)
    d = Vec.basis

    def s_left(b):   # m (S (x) id) T1(a (x) b)
        return multiply_out(A, leg_map(cp.T(1)(join(av, d((b,)))), 0, Sf))

    def s_right(c):  # m (S (x) id) T4(S^-1 c (x) a)
        return multiply_out(A, leg_map(cp.T(4)(join(_one(Si(c)), av)), 0, Sf))

    def t_left(b):   # m (id (x) S) T3(a (x) S^-1 b)
        return multiply_out(A, leg_map(cp.T(3)(join(av, _one(Si(b)))), 1, Sf))

    def t_right(c):  # m (id (x) S) T2(c (x) a)
        return multiply_out(A, leg_map(cp.T(2)(join(d((c,)), av)), 1, Sf))

    return Multiplier(A, s_left, s_right, "eps_s"), Multiplier(A, t_left, t_right, "eps_t")
