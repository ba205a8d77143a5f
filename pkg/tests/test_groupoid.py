import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_spec
from wmha.groupoid import (InvalidSpec, build_groupoid, cyclic_group, disjoint_union,
                           equivalence_groupoid, group_groupoid, groupoid_table, natural_pair_groupoid,
                           pair_groupoid, support_closure, validate_groupoid)

CORPUS_GROUPOIDS = ["pair1.json", "pair2.json", "pair3.json", "action_z2.json", "z3group.json",
                    "union_z2_z3.json"]


@pytest.mark.parametrize("name", CORPUS_GROUPOIDS)
def test_corpus_groupoids_validate(name):
    rep = validate_groupoid(build_groupoid(load_spec(name)))
    assert rep.passed, rep.to_text()


def test_sizes_and_units():
    g = pair_groupoid([1, 2, 3])
    assert len(g.window()) == 9
    assert g.units() == [(1, 1), (2, 2), (3, 3)]
    assert g.compose((1, 2), (2, 3)) == (1, 3)
    assert g.compose((1, 2), (1, 3)) is None
    assert g.source((1, 2)) == (2, 2) and g.target((1, 2)) == (1, 1)
    z = group_groupoid(cyclic_group(3))
    assert z.units() == ["e"] and z.compose("g", "g2") == "e"
    u = build_groupoid(load_spec("union_z2_z3.json"))
    assert len(u.window()) == 5 and len(u.units()) == 2
    assert u.compose((0, "g"), (1, "g")) is None


def test_action_groupoid_structure():
    a = build_groupoid(load_spec("action_z2.json"))
    assert len(a.window()) == 4
    assert sorted(a.units()) == [("x", "e", "x"), ("y", "e", "y")]
    p = ("y", "g", "x")
    assert a.compose(a.inverse(p), p) == a.source(p)


def test_lazy_window():
    g = natural_pair_groupoid()
    assert not g.finite
    assert len(g.window(4)) == 16
    with pytest.raises(ValueError):
        g.window()
    assert validate_groupoid(g, g.window(3)).passed


def test_corrupted_table_names_the_bad_product():
    rep = validate_groupoid(build_groupoid(load_spec("corrupted_table.json")))
    c = rep.get("groupoid/target-of-product")
    assert c.status == "fail"
    assert c.witness["case"] == ["21", "12"] and c.witness["product"] == "11"


@pytest.mark.parametrize("spec, message", [
    ({"points": [1]}, "kind"),
    ({"kind": "pair"}, "missing"),
    ({"kind": "pair", "points": [1, 1]}, "distinct"),
    ({"kind": "pair", "points": [1], "extra": 0}, "unknown"),
    ({"kind": "torus"}, "unknown groupoid kind"),
    ({"kind": "group", "elements": ["e", "a"], "table": {"e,e": "e"}, "unit": "e"}, "incomplete"),
    ({"kind": "equivalence", "points": [1, 2], "classes": [[1]]}, "partition"),
    ({"kind": "action", "group": {"cyclic": 2}, "points": ["x"], "action": {"e,x": "x"}}, "undefined"),
    ({"kind": "table", "elements": ["a"], "source": {}, "target": {"a": "a"}, "inverse": {"a": "a"},
      "compose": {}}, "source undefined"),
])
def test_malformed_specs(spec, message):
    with pytest.raises(InvalidSpec, match=message):
        build_groupoid(spec)


def test_support_closure_adds_units_inverses_and_products():
    g = pair_groupoid([1, 2, 3])
    out = support_closure(g, [(1, 2)])
    assert set(out) == {(1, 2), (2, 2), (1, 1), (2, 1)}


partitions = st.lists(st.integers(0, 2), min_size=1, max_size=4)


@settings(max_examples=25, deadline=None)
@given(partitions)
def test_equivalence_groupoids_validate_and_round_trip(labels):
    points = list(range(len(labels)))
    classes = [[p for p in points if labels[p] == c] for c in sorted(set(labels))]
    g = equivalence_groupoid(points, classes)
    assert validate_groupoid(g).passed
    assert len(g.window()) == sum(len(c) ** 2 for c in classes)
    back = build_groupoid(groupoid_table(g))
    assert validate_groupoid(back).passed
    assert len(back.window()) == len(g.window())


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 5), st.integers(1, 3))
def test_group_and_union_families_validate(n, m):
    g = disjoint_union([group_groupoid(cyclic_group(n)), pair_groupoid(range(m))])
    assert validate_groupoid(g).passed
