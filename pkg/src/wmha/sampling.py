"""Window enumeration, seeded random elements and size caps."""

from __future__ import annotations

import itertools
import os
import random
from typing import Iterable, Iterator, Sequence

from .linalg import Vec
from .scalars import Scalar

DEFAULT_MAX_DIM = 729


def max_dim() -> int:
    """Cap on dense spaces, read from WMHA_MAX_DIM."""
    raw = os.environ.get("WMHA_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        v = int(raw)
    except ValueError:
        raise ValueError(f"WMHA_MAX_DIM must be an integer, got {raw!r}") from None
    if v < 1:
        raise ValueError("WMHA_MAX_DIM must be positive")
    return v


def exhaustive_limit() -> int:
    """Largest number of basis tuples a single identity check enumerates."""
    return 9 * max_dim()


def tuples(window: Sequence, arity: int, rng: random.Random | None = None, trials: int = 100) -> Iterator[tuple]:
    """All window tuples when that is affordable, otherwise ``trials`` random ones."""
    n = len(window)
    if n ** arity <= exhaustive_limit() or rng is None:
        yield from itertools.product(window, repeat=arity)
        return
    for _ in range(trials):
        yield tuple(rng.choice(window) for _ in range(arity))


def gaussian_integer(rng: random.Random) -> Scalar:
    while True:
        c = Scalar(rng.randint(-2, 2), rng.randint(-2, 2))
        if c:
            return c


def random_vec(window: Sequence, rng: random.Random, terms: int = 3) -> Vec:
    """A random finite-support element over the window with Gaussian integer coefficients."""
    keys = rng.sample(list(window), min(terms, len(window)))
    return Vec((k, gaussian_integer(rng)) for k in keys)


def rng_for(seed: int, label: str) -> random.Random:
    """Independent named stream derived from a seed (stable across runs)."""
    return random.Random(f"{seed}:{label}")


def product(*windows: Iterable) -> list[tuple]:
    return list(itertools.product(*windows))
