"""Groupoids: finite tables, rule-based families and lazily enumerated ones.

Elements are opaque hashable tokens.  Units are themselves elements: in a pair
groupoid the unit at x is the pair (x, x), in an action groupoid (x, e, x).
``compose(p, q)`` returns None when the product is undefined.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterable

from .report import VerificationReport

Element = Hashable


class InvalidSpec(ValueError):
    pass


class Groupoid:
    def __init__(
        self,
        name: str,
        source: Callable,
        target: Callable,
        compose: Callable,
        inverse: Callable,
        elements: Iterable | None = None,
        window_fn: Callable[[int], list] | None = None,
    ):
        self.name = name
        self.source = source
        self.target = target
        self._compose = compose
        self.inverse = inverse
        self.elements = tuple(elements) if elements is not None else None
        self._window_fn = window_fn
        if self.elements is None and window_fn is None:
            raise ValueError("a lazy groupoid needs a window function")

    @property
    def finite(self) -> bool:
        return self.elements is not None

    def compose(self, p, q):
        return self._compose(p, q)

    def composable(self, p, q) -> bool:
        return self.source(p) == self.target(q)

    def window(self, n: int | None = None) -> list:
        """All elements (finite case) or the elements over the first n points."""
        if self.elements is not None:
            return list(self.elements)
        if n is None:
            raise ValueError(f"{self.name} is infinite; a window size is required")
        return list(self._window_fn(n))

    def units(self, window: Iterable | None = None) -> list:
        elems = self.elements if window is None else window
        if elems is None:
            raise ValueError("units of a lazy groupoid need a window")
        seen = {}
        for p in elems:
            seen.setdefault(self.source(p), None)
        return list(seen)

    def is_unit(self, p) -> bool:
        return self.source(p) == p

    def __repr__(self):
        size = len(self.elements) if self.elements is not None else "lazy"
        return f"Groupoid({self.name}, {size})"


# ---------------------------------------------------------------------------
# families


def pair_groupoid(points: Iterable, name: str | None = None) -> Groupoid:
    pts = list(points)
    elems = [(y, x) for y in pts for x in pts]
    return Groupoid(
        name or f"pair{len(pts)}",
        source=lambda p: (p[1], p[1]),
        target=lambda p: (p[0], p[0]),
        compose=lambda p, q: (p[0], q[1]) if p[1] == q[0] else None,
        inverse=lambda p: (p[1], p[0]),
        elements=elems,
    )


def natural_pair_groupoid() -> Groupoid:
    """Pair groupoid on the natural numbers; window n covers points 0..n-1."""
    return Groupoid(
        "natpair",
        source=lambda p: (p[1], p[1]),
        target=lambda p: (p[0], p[0]),
        compose=lambda p, q: (p[0], q[1]) if p[1] == q[0] else None,
        inverse=lambda p: (p[1], p[0]),
        window_fn=lambda n: [(y, x) for y in range(n) for x in range(n)],
    )


def equivalence_groupoid(points: Iterable, classes: Iterable[Iterable], name: str | None = None) -> Groupoid:
    pts = list(points)
    cls_of = {}
    for i, c in enumerate(classes):
        for x in c:
            if x in cls_of:
                raise InvalidSpec(f"point {x!r} lies in two classes")
            cls_of[x] = i
    if set(cls_of) != set(pts):
        raise InvalidSpec("classes must partition the points")
    elems = [(y, x) for y in pts for x in pts if cls_of[x] == cls_of[y]]
    return Groupoid(
        name or "equivalence",
        source=lambda p: (p[1], p[1]),
        target=lambda p: (p[0], p[0]),
        compose=lambda p, q: (p[0], q[1]) if p[1] == q[0] else None,
        inverse=lambda p: (p[1], p[0]),
        elements=elems,
    )


class Group:
    def __init__(self, elements: Iterable, table: dict, unit):
        self.elements = list(elements)
        self.table = dict(table)
        self.unit = unit
        self._check()
        self.inv = {g: next(h for h in self.elements if self.table[g, h] == unit) for g in self.elements}

    def mul(self, g, h):
        return self.table[g, h]

    def _check(self):
        E = self.elements
        if self.unit not in E:
            raise InvalidSpec("group unit is not an element")
        for g, h in itertools.product(E, E):
            if self.table.get((g, h)) not in E:
                raise InvalidSpec(f"group table incomplete or not closed at ({g}, {h})")
        for g in E:
            if self.table[self.unit, g] != g or self.table[g, self.unit] != g:
                raise InvalidSpec(f"unit law fails at {g}")
            if not any(self.table[g, h] == self.unit for h in E):
                raise InvalidSpec(f"{g} has no inverse")
        for g, h, k in itertools.product(E, E, E):
            if self.table[self.table[g, h], k] != self.table[g, self.table[h, k]]:
                raise InvalidSpec(f"group table not associative at ({g}, {h}, {k})")


def cyclic_group(n: int) -> Group:
    names = ["e"] + ["g" if k == 1 else f"g{k}" for k in range(1, n)]
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    return Group(names, table, "e")


def group_groupoid(group: Group, name: str | None = None) -> Groupoid:
    e = group.unit
    return Groupoid(
        name or f"group{len(group.elements)}",
        source=lambda p: e,
        target=lambda p: e,
        compose=group.mul,
        inverse=lambda p: group.inv[p],
        elements=group.elements,
    )


def action_groupoid(group: Group, points: Iterable, action: dict, name: str | None = None) -> Groupoid:
    """Triples (y, h, x) with y = h.x; (z,k,y)(y,h,x) = (z,kh,x)."""
    pts = list(points)
    for h in group.elements:
        for x in pts:
            if action.get((h, x)) not in pts:
                raise InvalidSpec(f"action undefined or leaves the point set at ({h}, {x})")
    for x in pts:
        if action[group.unit, x] != x:
            raise InvalidSpec(f"unit does not act trivially on {x}")
    for k, h, x in itertools.product(group.elements, group.elements, pts):
        if action[group.mul(k, h), x] != action[k, action[h, x]]:
            raise InvalidSpec(f"action not associative at ({k}, {h}, {x})")
    e = group.unit
    elems = [(action[h, x], h, x) for h in group.elements for x in pts]

    def compose(p, q):
        if p[2] != q[0]:
            return None
        return (p[0], group.mul(p[1], q[1]), q[2])

    return Groupoid(
        name or "action",
        source=lambda p: (p[2], e, p[2]),
        target=lambda p: (p[0], e, p[0]),
        compose=compose,
        inverse=lambda p: (p[2], group.inv[p[1]], p[0]),
        elements=elems,
    )


def table_groupoid(elements, source: dict, target: dict, inverse: dict, compose: dict, name: str = "table") -> Groupoid:
    elems = list(elements)
    for m, label in ((source, "source"), (target, "target"), (inverse, "inverse")):
        missing = [p for p in elems if p not in m]
        if missing:
            raise InvalidSpec(f"{label} undefined at {missing[0]!r}")
    comp = dict(compose)
    return Groupoid(
        name,
        source=source.__getitem__,
        target=target.__getitem__,
        compose=lambda p, q: comp.get((p, q)),
        inverse=inverse.__getitem__,
        elements=elems,
    )


def disjoint_union(parts: list[Groupoid], name: str | None = None) -> Groupoid:
    if not all(g.finite for g in parts):
        raise InvalidSpec("disjoint unions of lazy groupoids are not supported")

    def compose(p, q):
        if p[0] != q[0]:
            return None
        r = parts[p[0]].compose(p[1], q[1])
        return None if r is None else (p[0], r)

    return Groupoid(
        name or "+".join(g.name for g in parts),
        source=lambda p: (p[0], parts[p[0]].source(p[1])),
        target=lambda p: (p[0], parts[p[0]].target(p[1])),
        compose=compose,
        inverse=lambda p: (p[0], parts[p[0]].inverse(p[1])),
        elements=[(i, p) for i, g in enumerate(parts) for p in g.elements],
    )


def support_closure(g: Groupoid, elems: Iterable) -> list:
    """Close a finite set under source, target, inverse and one composition step."""
    out = dict.fromkeys(elems)
    for p in list(out):
        for q in (g.source(p), g.target(p), g.inverse(p)):
            out.setdefault(q, None)
    base = list(out)
    for p in base:
        for q in base:
            r = g.compose(p, q)
            if r is not None:
                out.setdefault(r, None)
    return list(out)


# ---------------------------------------------------------------------------
# JSON specs


def _require_keys(spec: dict, required: set, optional: set = frozenset()):
    keys = set(spec)
    missing = required - keys
    if missing:
        raise InvalidSpec(f"missing keys: {sorted(missing)}")
    unknown = keys - required - optional - {"kind", "name"}
    if unknown:
        raise InvalidSpec(f"unknown keys: {sorted(unknown)}")


def _split(pair: str) -> tuple[str, str]:
    parts = pair.split(",")
    if len(parts) != 2:
        raise InvalidSpec(f"expected 'a,b' but got {pair!r}")
    return parts[0].strip(), parts[1].strip()


def _group_from_spec(spec: dict) -> Group:
    if not isinstance(spec, dict):
        raise InvalidSpec("group payload must be an object")
    if "cyclic" in spec:
        _require_keys(spec, {"cyclic"})
        n = spec["cyclic"]
        if not isinstance(n, int) or n < 1:
            raise InvalidSpec("cyclic order must be a positive integer")
        return cyclic_group(n)
    _require_keys(spec, {"elements", "table", "unit"})
    table = {_split(k): v for k, v in spec["table"].items()}
    return Group(spec["elements"], table, spec["unit"])


def build_groupoid(spec: dict) -> Groupoid:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidSpec("a groupoid spec is an object with a 'kind'")
    kind = spec["kind"]
    name = spec.get("name")
    if kind == "pair":
        _require_keys(spec, {"points"})
        if spec["points"] == "N":
            return natural_pair_groupoid()
        pts = spec["points"]
        if not isinstance(pts, list) or len(set(pts)) != len(pts) or not pts:
            raise InvalidSpec("points must be a non-empty list of distinct tokens")
        return pair_groupoid(pts, name)
    if kind == "equivalence":
        _require_keys(spec, {"points", "classes"})
        return equivalence_groupoid(spec["points"], spec["classes"], name)
    if kind == "group":
        payload = {k: v for k, v in spec.items() if k not in ("kind", "name")}
        return group_groupoid(_group_from_spec(payload), name)
    if kind == "action":
        _require_keys(spec, {"group", "points", "action"})
        grp = _group_from_spec(spec["group"])
        act = {_split(k): v for k, v in spec["action"].items()}
        return action_groupoid(grp, spec["points"], act, name)
    if kind == "table":
        _require_keys(spec, {"elements", "source", "target", "inverse", "compose"})
        comp = {_split(k): v for k, v in spec["compose"].items()}
        return table_groupoid(spec["elements"], spec["source"], spec["target"], spec["inverse"], comp, name or "table")
    if kind == "disjoint_union":
        _require_keys(spec, {"parts"})
        parts = [build_groupoid(p) for p in spec["parts"]]
        if not parts:
            raise InvalidSpec("a disjoint union needs at least one part")
        return disjoint_union(parts, name)
    raise InvalidSpec(f"unknown groupoid kind {kind!r}")


def groupoid_table(g: Groupoid) -> dict:
    """Export a finite groupoid as a kind=table spec (tokens become strings)."""
    els = g.window()
    tok = {p: _token(p) for p in els}
    comp = {}
    for p in els:
        for q in els:
            r = g.compose(p, q)
            if r is not None:
                comp[f"{tok[p]},{tok[q]}"] = tok[r]
    return {
        "kind": "table",
        "elements": [tok[p] for p in els],
        "source": {tok[p]: tok[g.source(p)] for p in els},
        "target": {tok[p]: tok[g.target(p)] for p in els},
        "inverse": {tok[p]: tok[g.inverse(p)] for p in els},
        "compose": comp,
    }


def _token(p) -> str:
    if isinstance(p, tuple):
        return "(" + " ".join(_token(x) for x in p) + ")"
    return str(p)


# ---------------------------------------------------------------------------
# validation


def validate_groupoid(g: Groupoid, window: Iterable | None = None) -> VerificationReport:
    W = list(window) if window is not None else g.window()
    inW = set(W)
    rep = VerificationReport(f"groupoid {g.name}")
    pairs = [(p, q) for p in W for q in W]

    def closure(p, q):
        r = g.compose(p, q)
        if r is not None and g.finite and r not in inW:
            return {"product": r}

    def composable(p, q):
        defined = g.compose(p, q) is not None
        if defined != (g.source(p) == g.target(q)):
            return {"defined": defined}

    def src_prod(p, q):
        r = g.compose(p, q)
        if r is not None and g.source(r) != g.source(q):
            return {"product": r}

    def tgt_prod(p, q):
        r = g.compose(p, q)
        if r is not None and g.target(r) != g.target(p):
            return {"product": r}

    def assoc(p, q, r):
        pq, qr = g.compose(p, q), g.compose(q, r)
        if pq is None or qr is None:
            return
        lhs, rhs = g.compose(pq, r), g.compose(p, qr)
        if lhs != rhs:
            return {"(pq)r": lhs, "p(qr)": rhs}

    def inverse(p):
        q = g.inverse(p)
        if g.source(p) != g.target(q) or g.target(p) != g.source(q) or g.inverse(q) != p:
            return {"inverse": q}
        if g.compose(p, q) != g.target(p) or g.compose(q, p) != g.source(p):
            return {"inverse": q}
        if g.compose(g.compose(p, q), p) != p or g.compose(g.compose(q, p), q) != q:
            return {"inverse": q}

    def units(p):
        u, v = g.source(p), g.target(p)
        for w in (u, v):
            if g.inverse(w) != w or g.source(w) != w or g.target(w) != w:
                return {"unit": w}
        if g.compose(v, p) != p or g.compose(p, u) != p:
            return {"units": [v, u]}

    rep.run("groupoid/closure", pairs, closure)
    rep.run("groupoid/composable-iff-source-meets-target", pairs, composable)
    rep.run("groupoid/source-of-product", pairs, src_prod)
    rep.run("groupoid/target-of-product", pairs, tgt_prod)
    rep.run("groupoid/associativity", ((p, q, r) for p in W for q in W for r in W), assoc)
    rep.run("groupoid/inverse", ((p,) for p in W), inverse)
    rep.run("groupoid/units", ((p,) for p in W), units)
    srcs = {g.source(p) for p in W}
    tgts = {g.target(p) for p in W}
    fixed = {p for p in W if g.source(p) == p}
    ok = srcs == tgts == fixed
    rep.add("groupoid/units-are-sources-and-targets", ok, {"sources": sorted(map(repr, srcs)), "units": sorted(map(repr, fixed))})
    return rep
