"""Shared strategies and pool builders for the test suite."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

import hyperindep as hi


def random_small_hypergraph(seed: int, n_max: int = 12, k_max: int = 4) -> hi.Hypergraph:
    """Deterministic small instance: random edge set with mixed sizes."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, n_max + 1))
    k = int(rng.integers(2, min(k_max, n) + 1))
    edges: set[tuple[int, ...]] = set()
    m = int(rng.integers(0, 2 * n + 1))
    for _ in range(m):
        size = int(rng.integers(2, k + 1))
        e = tuple(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
        edges.add(e)
    return hi.Hypergraph(n, sorted(edges))


def brute_force_alpha(h: hi.Hypergraph) -> int:
    """Independent oracle for tiny instances: scan subsets by size."""
    for r in range(h.n, 0, -1):
        for s in itertools.combinations(range(h.n), r):
            if h.is_independent(s):
                return r
    return 0


@pytest.fixture(scope="session")
def fano() -> hi.Hypergraph:
    return hi.fixture("fano")


@pytest.fixture(scope="session")
def petersen() -> hi.Hypergraph:
    return hi.fixture("petersen")
