"""Closed-form structures from groupoids, their pairing, and table structures.

K(G) is the algebra of finitely supported functions on G with the pointwise
product (basis delta_p, written p), and CG is the groupoid algebra with the
convolution product (basis lambda_p, also written p).
"""

from __future__ import annotations

from .algebra import BasedAlgebra, _vec_from_json, table_algebra
from .antipode import AntipodeMap, invert_on_window
from .coproduct import Coproduct, Counit, DualPairing
from .groupoid import Groupoid
from .linalg import LinOp, Vec, ZERO_VEC, add_all
from .scalars import ONE, ZERO, parse_scalar
from .wmha import CanonicalIdempotent, KernelMultiplier, Structure


class GroupoidMismatch(ValueError):
    pass


def _pair(a, b) -> Vec:
    return Vec.basis((a, b))


def _ident(cond: bool, a, b) -> Vec:
    return _pair(a, b) if cond else ZERO_VEC


def build_KG(g: Groupoid) -> Structure:
    """Functions on G: D(f)(p, q) = f(pq), S(f)(p) = f(p^-1), E = [s(p) = t(q)]."""
    s, t, inv, comp = g.source, g.target, g.inverse, g.compose
    finite = g.finite
    A = BasedAlgebra(
        f"K({g.name})",
        lambda p, q: Vec.basis(p) if p == q else ZERO_VEC,
        basis=g.elements if finite else None,
        window_fn=None if finite else g.window,
        star=Vec.basis,
        unit=add_all(Vec.basis(p) for p in g.elements) if finite else None,
        commutative=True,
    )

    def t1(a, b):
        return _pair(comp(a, inv(b)), b) if s(a) == s(b) else ZERO_VEC

    def t2(a, b):
        return _pair(a, comp(inv(a), b)) if t(a) == t(b) else ZERO_VEC

    delta = None
    if finite:
        def delta(p):
            return add_all(_pair(q, comp(inv(q), p)) for q in g.elements if t(q) == t(p))

    cp = Coproduct(A, t1, t2, t1, t2, name=f"D[K({g.name})]", delta=delta)
    eps = Counit(lambda p: ONE if g.is_unit(p) else ZERO, "eps")
    S = AntipodeMap(A, 1, endo=LinOp(lambda p: Vec.basis(inv(p)), "S"), inverse=LinOp(lambda p: Vec.basis(inv(p))),
                    name="S")
    E = CanonicalIdempotent(
        cp,
        lambda k: _ident(s(k[0]) == t(k[1]), *k),
        lambda k: _ident(s(k[0]) == t(k[1]), *k),
        lambda a, h: _ident(s(a) == t(h), a, h),
        lambda a, c: _ident(s(a) == t(c), a, c),
        element=add_all(_pair(p, q) for p in g.elements for q in g.elements if s(p) == t(q)) if finite else None,
    )
    same_s = lambda a, b: _ident(s(a) == s(b), a, b)
    same_t = lambda a, b: _ident(t(a) == t(b), a, b)
    F = {1: KernelMultiplier(1, same_s), 2: KernelMultiplier(2, same_t),
         3: KernelMultiplier(3, same_s), 4: KernelMultiplier(4, same_t)}
    return Structure(f"K({g.name})", cp, eps, S, E, F, family="kg", groupoid=g, lazy=not finite)


def build_CG(g: Groupoid) -> Structure:
    """Groupoid algebra: D(lambda_p) = lambda_p (x) lambda_p, S(lambda_p) = lambda_{p^-1}."""
    s, t, inv, comp = g.source, g.target, g.inverse, g.compose
    finite = g.finite

    def mult(p, q):
        r = comp(p, q) if s(p) == t(q) else None
        return ZERO_VEC if r is None else Vec.basis(r)

    A = BasedAlgebra(
        f"C({g.name})",
        mult,
        basis=g.elements if finite else None,
        window_fn=None if finite else g.window,
        star=lambda p: Vec.basis(inv(p)),
        unit=add_all(Vec.basis(e) for e in g.units()) if finite else None,
    )

    def prod(p, q) -> Vec:
        return A.mult(p, q)

    def t1(a, b):
        return Vec._wrap({(a, k): c for k, c in prod(a, b).items()})

    def t2(a, b):
        return Vec._wrap({(k, b): c for k, c in prod(a, b).items()})

    def t3(a, b):
        return Vec._wrap({(a, k): c for k, c in prod(b, a).items()})

    def t4(a, b):
        return Vec._wrap({(k, b): c for k, c in prod(b, a).items()})

    cp = Coproduct(A, t1, t2, t3, t4, name=f"D[C({g.name})]", delta=lambda p: _pair(p, p))
    eps = Counit(lambda p: ONE, "eps")
    S = AntipodeMap(A, 1, endo=LinOp(lambda p: Vec.basis(inv(p)), "S"), inverse=LinOp(lambda p: Vec.basis(inv(p))),
                    name="S")
    E = CanonicalIdempotent(
        cp,
        lambda k: _ident(t(k[0]) == t(k[1]), *k),
        lambda k: _ident(s(k[0]) == s(k[1]), *k),
        lambda a, h: _ident(s(a) == t(h), a, h),
        lambda a, c: _ident(t(a) == s(c), a, c),
        element=add_all(_pair(e, e) for e in g.units()) if finite else None,
    )
    f12 = lambda a, b: _ident(s(a) == t(b), a, b)
    f34 = lambda a, b: _ident(t(a) == s(b), a, b)
    F = {1: KernelMultiplier(1, f12), 2: KernelMultiplier(2, f12),
         3: KernelMultiplier(3, f34), 4: KernelMultiplier(4, f34)}
    return Structure(f"C({g.name})", cp, eps, S, E, F, family="cg", groupoid=g, lazy=not finite)


def canonical_pairing(kg: Structure, cg: Structure) -> DualPairing:
    """<f, lambda_p> = f(p)."""
    if kg.groupoid is None or kg.groupoid is not cg.groupoid:
        if kg.groupoid is None or cg.groupoid is None or kg.groupoid.name != cg.groupoid.name \
                or kg.groupoid.elements != cg.groupoid.elements:
            raise GroupoidMismatch("the two structures do not come from the same groupoid")
    return DualPairing(lambda f, p: ONE if f == p else ZERO, f"<K,C>({kg.groupoid.name})")


# ---------------------------------------------------------------------------
# structures from tables


def _scalar_json(v):
    if isinstance(v, list):
        return parse_scalar(*[str(x) for x in v])
    return parse_scalar(str(v))


def parse_table(spec: dict):
    """Algebra, coproduct on basis tokens, counit and antipode (the last two may be None).

    ``coproduct`` maps a token to [[left, right, re, im], ...]; ``counit`` maps a
    token to a scalar; ``antipode`` maps a token to [[token, re, im], ...].
    """
    if "coproduct" not in spec:
        raise ValueError("a table structure needs a 'coproduct'")
    A = table_algebra(spec)
    basis = set(A.basis)
    dl = {}
    for k, entries in spec["coproduct"].items():
        if k not in basis:
            raise ValueError(f"coproduct given on unknown token {k!r}")
        terms = []
        for e in entries:
            if not isinstance(e, list) or len(e) not in (3, 4) or e[0] not in basis or e[1] not in basis:
                raise ValueError(f"coproduct[{k}]: malformed entry {e!r}")
            terms.append(((e[0], e[1]), parse_scalar(*[str(x) for x in e[2:]])))
        dl[k] = Vec(terms)
    delta = lambda k: dl.get(k, ZERO_VEC)
    eps = None
    if "counit" in spec:
        vals = {k: _scalar_json(v) for k, v in spec["counit"].items()}
        if not set(vals) <= basis:
            raise ValueError("counit given on unknown tokens")
        eps = Counit.from_values(vals)
    S = None
    if "antipode" in spec:
        sv = {k: _vec_from_json(v, f"antipode[{k}]") for k, v in spec["antipode"].items()}
        if set(sv) != basis:
            raise ValueError("antipode must be given on every basis token")
        endo = LinOp(sv.__getitem__, "S", matrix=sv)
        S = AntipodeMap(A, 1, endo=endo, inverse=invert_on_window(endo, A.window()), name="S")
    return A, delta, eps, S


def table_structure(spec: dict) -> Structure:
    """A finite algebra with a coproduct given on basis tokens (see ``parse_table``)."""
    A, delta, eps, S = parse_table(spec)
    cp = Coproduct.from_delta(A, delta, name=f"D[{A.name}]")
    return Structure(A.name, cp, eps, S, family="table-coproduct")
