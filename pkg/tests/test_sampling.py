import random

import pytest

from wmha.sampling import exhaustive_limit, gaussian_integer, max_dim, random_vec, rng_for, tuples


def test_cap_from_environment(monkeypatch):
    monkeypatch.delenv("WMHA_MAX_DIM", raising=False)
    assert max_dim() == 729 and exhaustive_limit() == 6561
    monkeypatch.setenv("WMHA_MAX_DIM", "10")
    assert max_dim() == 10
    for bad in ("ten", "0"):
        monkeypatch.setenv("WMHA_MAX_DIM", bad)
        with pytest.raises(ValueError):
            max_dim()


def test_tuples_enumerate_or_sample(monkeypatch):
    monkeypatch.setenv("WMHA_MAX_DIM", "1")
    W = list(range(4))
    assert len(list(tuples(W, 1))) == 4
    assert len(list(tuples(W, 2, random.Random(0), trials=7))) == 7   # 16 > 9 cases
    assert len(list(tuples(W, 2))) == 16                               # no generator: enumerate


def test_named_streams_are_reproducible():
    r1, r2 = rng_for(5, "x"), rng_for(5, "x")
    assert [r1.random() for _ in range(3)] == [r2.random() for _ in range(3)]
    assert rng_for(5, "x").random() != rng_for(5, "y").random()
    rng = random.Random(0)
    for _ in range(50):
        c = gaussian_integer(rng)
        assert c and -2 <= c.re <= 2 and -2 <= c.im <= 2
    v = random_vec(range(10), rng, terms=3)
    assert 1 <= len(v) <= 3
