import pytest

from wmha.mutations import MUTATIONS, run_mutation


def test_ten_distinct_corruptions():
    assert len(MUTATIONS) == 10
    assert len({m.name for m in MUTATIONS}) == 10


@pytest.mark.parametrize("m", MUTATIONS, ids=lambda m: m.name)
def test_each_corruption_is_caught_with_a_witness(m):
    c = run_mutation(m, seed=0)
    assert c is not None, f"{m.name} went unnoticed"
    assert c.id == m.expected
    assert c.witness


@pytest.mark.parametrize("seed", [1, 2])
def test_detection_does_not_depend_on_the_seed(seed):
    assert all(run_mutation(m, seed) is not None for m in MUTATIONS)
