"""Finite-support vectors, linear operators on them, and exact elimination.

Basis indices are arbitrary hashable tokens.  Tensor products index by tuples
with one token per leg, so an element of A (x) A is a Vec whose keys are pairs.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping

from .scalars import ONE, ZERO, Scalar

Key = Hashable


def sort_key(k):
    return repr(k)


class Vec:
    """Sparse vector over Q(i); stored entries are never zero."""

    __slots__ = ("_d",)

    def __init__(self, entries: Mapping | Iterable = ()):
        d = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for k, c in items:
            c = Scalar.coerce(c)
            if k in d:
                c = d[k] + c
            if c:
                d[k] = c
            else:
                d.pop(k, None)
        self._d = d

    @classmethod
    def _wrap(cls, d: dict) -> "Vec":
        v = cls.__new__(cls)
        v._d = d
        return v

    @classmethod
    def basis(cls, k, c=ONE) -> "Vec":
        c = Scalar.coerce(c)
        return cls._wrap({k: c} if c else {})

    # container protocol ----------------------------------------------------

    def __getitem__(self, k) -> Scalar:
        return self._d.get(k, ZERO)

    def __contains__(self, k):
        return k in self._d

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def items(self):
        return self._d.items()

    def keys(self):
        return self._d.keys()

    def sorted_items(self):
        return sorted(self._d.items(), key=lambda kv: sort_key(kv[0]))

    def __eq__(self, other):
        if isinstance(other, Vec):
            return self._d == other._d
        if other == 0:
            return not self._d
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __repr__(self):
        if not self._d:
            return "0"
        return " + ".join(f"({c})*{k!r}" for k, c in self.sorted_items())

    # linear structure -------------------------------------------------------

    def __add__(self, other: "Vec") -> "Vec":
        d = dict(self._d)
        _axpy(d, ONE, other._d)
        return Vec._wrap(d)

    def __sub__(self, other: "Vec") -> "Vec":
        d = dict(self._d)
        _axpy(d, -ONE, other._d)
        return Vec._wrap(d)

    def __neg__(self):
        return Vec._wrap({k: -c for k, c in self._d.items()})

    def scale(self, c) -> "Vec":
        c = Scalar.coerce(c)
        if not c:
            return ZERO_VEC
        if c == ONE:
            return self
        return Vec._wrap({k: c * v for k, v in self._d.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def conj(self) -> "Vec":
        return Vec._wrap({k: c.conj() for k, c in self._d.items()})

    def map_keys(self, f: Callable[[Key], Key]) -> "Vec":
        return Vec((f(k), c) for k, c in self._d.items())

    def to_json(self):
        return [[_key_json(k), *c.to_json()] for k, c in self.sorted_items()]


ZERO_VEC = Vec._wrap({})


def _key_json(k):
    if isinstance(k, tuple):
        return [_key_json(x) for x in k]
    return k if isinstance(k, (str, int)) else repr(k)


def _axpy(d: dict, a: Scalar, x: Mapping):
    """d += a*x in place, dropping zeros."""
    for k, c in x.items():
        v = d.get(k)
        nv = a * c if v is None else v + a * c
        if nv:
            d[k] = nv
        elif v is not None:
            del d[k]


def vsum(terms: Iterable[tuple[Scalar, Vec]]) -> Vec:
    """Linear combination sum(c * v)."""
    d: dict = {}
    for c, v in terms:
        if c and v:
            _axpy(d, Scalar.coerce(c), v._d)
    return Vec._wrap(d)


def add_all(vecs: Iterable[Vec]) -> Vec:
    d: dict = {}
    for v in vecs:
        _axpy(d, ONE, v._d)
    return Vec._wrap(d)


def tensor(*vecs: Vec) -> Vec:
    """Tensor product; keys become tuples with one entry per factor."""
    acc = {(): ONE}
    for v in vecs:
        nxt = {}
        for k, c in acc.items():
            for k2, c2 in v.items():
                nxt[k + (k2,)] = c * c2
        acc = nxt
    return Vec._wrap(acc)


def join(x: Vec, y: Vec) -> Vec:
    """Tensor of an m-leg and an n-leg vector into an (m+n)-leg vector."""
    return Vec._wrap({kx + ky: cx * cy for kx, cx in x.items() for ky, cy in y.items()})


def linear(rule: Callable[[Key], Vec], x: Vec) -> Vec:
    d: dict = {}
    for k, c in x.items():
        img = rule(k)
        if img:
            _axpy(d, c, img._d)
    return Vec._wrap(d)


def bilinear(rule: Callable[[Key, Key], Vec], x: Vec, y: Vec) -> Vec:
    d: dict = {}
    for k1, c1 in x.items():
        for k2, c2 in y.items():
            img = rule(k1, k2)
            if img:
                _axpy(d, c1 * c2, img._d)
    return Vec._wrap(d)


class LinOp:
    """A linear map given by its values on basis tokens.

    ``matrix`` optionally holds a dense realization over a finite window as a
    mapping window-key -> Vec; it must agree with ``rule`` there.
    """

    def __init__(self, rule: Callable[[Key], Vec], name: str = "", matrix: Mapping | None = None):
        self.rule = rule
        self.name = name
        self.matrix = dict(matrix) if matrix is not None else None
        self._memo: dict = {}

    def image(self, k) -> Vec:
        v = self._memo.get(k)
        if v is None:
            v = self.rule(k)
            self._memo[k] = v
        return v

    def __call__(self, x: Vec) -> Vec:
        return linear(self.image, x)

    def then(self, other: "LinOp", name: str = "") -> "LinOp":
        """other after self."""
        return LinOp(lambda k: other(self.image(k)), name or f"{other.name}.{self.name}")

    def realize(self, window: Iterable) -> "LinOp":
        m = {k: self.rule(k) for k in window}
        return LinOp(self.rule, self.name, m)

    def matrix_mismatches(self) -> list:
        if self.matrix is None:
            return []
        return [k for k, v in self.matrix.items() if self.rule(k) != v]

    def dense(self, window_in: list, window_out: list) -> list[list[Scalar]]:
        return [[self.image(k)[r] for k in window_in] for r in window_out]


# --------------------------------------------------------------------------
# exact elimination


class InconsistentSystem(ValueError):
    """No solution; ``certificate`` is the nonzero residual of the target."""

    def __init__(self, certificate: Vec):
        super().__init__(f"inconsistent linear system; residual {certificate!r}")
        self.certificate = certificate


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Every stored row has coefficient 1 at its pivot and 0 at all other
    pivots.  With ``track`` each row also remembers which combination of the
    added vectors (named by tags) it equals.
    """

    def __init__(self):
        self.rows: dict = {}       # pivot -> row dict
        self.combos: dict = {}     # pivot -> combo dict over tags
        self._occ: dict = {}       # non-pivot key -> set of pivots whose row has it

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> tuple[Vec, Vec]:
        """Return (residual, coef) with v = residual + sum coef[t] * added_t."""
        res = dict(v._d)
        coef: dict = {}
        for k, c in v.items():
            row = self.rows.get(k)
            if row is None:
                continue
            c = res.get(k)
            if c is None:
                continue
            _axpy(res, -c, row)
            _axpy(coef, c, self.combos[k])
        return Vec._wrap(res), Vec._wrap(coef)

    def add(self, v: Vec, tag=None) -> Vec | None:
        """Insert v.  Returns None if v was independent, else the dependency
        (a Vec over tags summing to zero) involving ``tag``."""
        res, coef = self.reduce(v)
        start = {tag: ONE} if tag is not None else {}
        if not res:
            dep = dict(start)
            _axpy(dep, -ONE, coef._d)
            return Vec._wrap(dep)
        pivot = next(iter(res._d))
        inv = res._d[pivot].inv()
        row = {k: c * inv for k, c in res._d.items()}
        combo = dict(start)
        _axpy(combo, -ONE, coef._d)
        combo = {k: c * inv for k, c in combo.items()}
        # clear the new pivot from older rows
        for q in list(self._occ.get(pivot, ())):
            rq = self.rows[q]
            c = rq[pivot]
            before = set(rq)
            _axpy(rq, -c, row)
            _axpy(self.combos[q], -c, combo)
            self._reindex(q, before, rq)
        self._occ.pop(pivot, None)
        self.rows[pivot] = row
        self.combos[pivot] = combo
        for k in row:
            if k != pivot:
                self._occ.setdefault(k, set()).add(pivot)
        return None

    def _reindex(self, q, before: set, row: dict):
        after = set(row)
        for k in before - after:
            s = self._occ.get(k)
            if s is not None:
                s.discard(q)
        for k in after - before:
            if k != q:
                self._occ.setdefault(k, set()).add(q)

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)[0]

    def basis(self) -> list[Vec]:
        return [Vec._wrap(dict(r)) for r in self.rows.values()]


def echelon(vectors: Iterable[Vec]) -> Echelon:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e


def rank(vectors: Iterable[Vec]) -> int:
    return echelon(vectors).rank


def in_span(v: Vec, vectors: Iterable[Vec]) -> bool:
    return echelon(vectors).contains(v)


def first_outside(vectors: Iterable[Vec], e: Echelon):
    """First vector not in the span held by ``e`` (a witness), or None."""
    for v in vectors:
        if not e.contains(v):
            return v
    return None


def span_equal(U: list[Vec], V: list[Vec]) -> tuple[bool, Vec | None]:
    """Subspace equality; on failure also returns a vector in one span but not the other."""
    eu, ev = echelon(U), echelon(V)
    w = first_outside(U, ev)
    if w is None:
        w = first_outside(V, eu)
    return w is None, w


class Solution:
    """Solution set x0 + span(nullspace) of sum_t x[t] * column[t] = target."""

    def __init__(self, particular: Vec, nullspace: list[Vec]):
        self.particular = particular
        self.nullspace = nullspace

    @property
    def unique(self) -> bool:
        return not self.nullspace


def solve(columns: Mapping, target: Vec) -> Solution:
    """Solve the exact linear system whose unknowns are the keys of ``columns``."""
    e = Echelon()
    null = []
    for tag, col in columns.items():
        dep = e.add(col, tag)
        if dep is not None:
            null.append(dep)
    res, coef = e.reduce(target)
    if res:
        raise InconsistentSystem(res)
    return Solution(coef, null)


def kernel(images: Mapping) -> list[Vec]:
    """Basis of the kernel of the map sending tag t to images[t]."""
    e = Echelon()
    out = []
    for tag, img in images.items():
        dep = e.add(img, tag)
        if dep is not None:
            out.append(dep)
    return out


def span_solve(task: str, *args):
    """Dispatch form: rank(vectors), membership(v, vectors), equality(U, V),
    linear_system(columns, target)."""
    if task == "rank":
        return rank(args[0])
    if task == "membership":
        return in_span(args[0], args[1])
    if task == "equality":
        return span_equal(list(args[0]), list(args[1]))[0]
    if task == "linear_system":
        return solve(args[0], args[1])
    raise ValueError(f"unknown task {task!r}")
