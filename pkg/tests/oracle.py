"""Independent dense oracle, built straight from groupoid data with sympy.

Nothing here goes through the package's sparse solvers or closed forms: the
algebra, coproduct and canonical maps are rebuilt as dense rational matrices
and every derived quantity comes from sympy elimination.
"""

from __future__ import annotations

import itertools

import sympy


class DenseStructure:
    """A finite algebra with a coproduct, everything keyed by basis tokens."""

    def __init__(self, basis, mult, delta):
        self.basis = list(basis)
        self.mult = mult        # (i, j) -> {k: coeff}
        self.delta = delta      # i -> {(k, l): coeff}
        self.pairs = list(itertools.product(self.basis, repeat=2))
        self.index = {p: n for n, p in enumerate(self.pairs)}

    def mul2(self, x: dict, y: dict) -> dict:
        """Product in A (x) A of two dicts keyed by pairs."""
        out: dict = {}
        for (a1, a2), c in x.items():
            for (b1, b2), d in y.items():
                for k1, e1 in self.mult.get((a1, b1), {}).items():
                    for k2, e2 in self.mult.get((a2, b2), {}).items():
                        out[(k1, k2)] = out.get((k1, k2), 0) + c * d * e1 * e2
        return {k: v for k, v in out.items() if v != 0}

    def T(self, k: int, a, b) -> dict:
        one = self._one()
        if k == 1:      # D(a)(1 (x) b)
            return self.mul2(self.delta[a], {(u, b): c for u, c in one.items()})
        if k == 2:      # (a (x) 1)D(b)
            return self.mul2({(a, u): c for u, c in one.items()}, self.delta[b])
        if k == 3:      # (1 (x) b)D(a)
            return self.mul2({(u, b): c for u, c in one.items()}, self.delta[a])
        return self.mul2(self.delta[b], {(a, u): c for u, c in one.items()})  # D(b)(a (x) 1)

    def _one(self) -> dict:
        return self.one

    def sandwich(self, a, f: dict, b) -> dict:
        """(a (x) 1) f (1 (x) b)."""
        one = self._one()
        left = self.mul2({(a, u): c for u, c in one.items()}, f)
        return self.mul2(left, {(u, b): c for u, c in one.items()})

    def column(self, x: dict) -> sympy.Matrix:
        v = sympy.zeros(len(self.pairs), 1)
        for k, c in x.items():
            v[self.index[k]] = c
        return v

    def T_matrix(self, k: int) -> sympy.Matrix:
        return sympy.Matrix.hstack(*[self.column(self.T(k, a, b)) for a, b in self.pairs])


def function_algebra(g) -> DenseStructure:
    """K(G): pointwise product, D(delta_a) = sum over pq = a of delta_p (x) delta_q."""
    E = list(g.elements)
    mult = {(a, a): {a: 1} for a in E}
    delta = {a: {} for a in E}
    for p in E:
        for q in E:
            if g.source(p) == g.target(q):
                delta[g.compose(p, q)][(p, q)] = 1
    st = DenseStructure(E, mult, delta)
    st.one = {a: 1 for a in E}
    return st


def groupoid_algebra(g) -> DenseStructure:
    """CG: convolution product, D(lambda_p) = lambda_p (x) lambda_p."""
    E = list(g.elements)
    mult = {}
    for p in E:
        for q in E:
            if g.source(p) == g.target(q):
                mult[(p, q)] = {g.compose(p, q): 1}
    st = DenseStructure(E, mult, {p: {(p, p): 1} for p in E})
    units = {g.source(p) for p in E}
    st.one = {u: 1 for u in E if u in units}
    return st


def rank(M: sympy.Matrix) -> int:
    return M.rank()


def canonical_idempotent(st: DenseStructure) -> dict:
    """The element e in Ran T1 with e r = r on Ran T1 and r e = r on Ran T2."""
    R1 = st.T_matrix(1).columnspace()
    R2 = st.T_matrix(2).columnspace()
    n = len(st.pairs)
    coeffs = sympy.symbols(f"c0:{len(R1)}")
    # e ranges over Ran T1 and is orthogonal to the annihilator of Ran T2
    col = sympy.Matrix.hstack(*R1) * sympy.Matrix(coeffs)
    e = {p: col[i] for i, p in enumerate(st.pairs)}
    eqs = [(w.T * col)[0] for w in sympy.Matrix.hstack(*R2).T.nullspace()]

    def as_dict(col):
        return {st.pairs[i]: col[i] for i in range(n) if col[i] != 0}

    for r in R1:
        lhs = st.mul2(e, as_dict(r))
        eqs += [lhs.get(p, 0) - r[i] for i, p in enumerate(st.pairs)]
    for r in R2:
        lhs = st.mul2(as_dict(r), e)
        eqs += [lhs.get(p, 0) - r[i] for i, p in enumerate(st.pairs)]
    (sol,) = sympy.linsolve([q for q in eqs if q != 0], coeffs)
    assert not any(v.free_symbols for v in sol), "the idempotent is not determined"
    vals = col.subs(dict(zip(coeffs, sol)))
    return {p: vals[i] for i, p in enumerate(st.pairs) if vals[i] != 0}


def kernel_matches(st: DenseStructure, k: int, f: dict) -> bool:
    """Ker T_k equals the span of a (x) b - (a (x) 1) f (1 (x) b), for k = 1, 2."""
    ker = st.T_matrix(k).nullspace()
    vecs = []
    for a, b in st.pairs:
        v = {(a, b): 1}
        for key, c in st.sandwich(a, f, b).items():
            v[key] = v.get(key, 0) - c
        vecs.append(st.column(v))
    M = sympy.Matrix.hstack(*vecs)
    if M.rank() != len(ker):
        return False
    return sympy.Matrix.hstack(M, *ker).rank() == len(ker)
