"""Seeded instance generators and named fixtures.

All models are rejection samplers: structural constraints (pair-disjointness
of edges, girth of the 2-layer, absence of short cycles) are enforced at
insertion time, so the outputs satisfy them by construction. Generation is
deterministic given the seed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleError, OutOfRangeError, UnknownFixtureError
from .hypercore import Hypergraph

__all__ = ["GenSpec", "generate", "fixture", "FIXTURE_NAMES", "MODELS"]

MODELS = (
    "complete",
    "uniform_random",
    "linear_random",
    "uncrowded_random",
    "girth5_graph",
    "mixed_linear",
)

FIXTURE_NAMES = ("fano", "petersen", "c5", "k4", "complete3u5")

# proposals allowed per layer, as a multiple of the target edge count
REJECTION_BUDGET_FACTOR = 200


@dataclass(frozen=True)
class GenSpec:
    """Instance family request: model, size, per-edge-size density targets.

    ``targets`` maps edge size i to the target average-degree value t_i
    (so the size-i layer aims for ``n * t_i**(i-1) / i`` edges). For the
    ``complete`` model only the keys matter.
    """

    model: str
    n: int
    targets: dict[int, float] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if any(s < 2 for s in self.targets):
            raise ValueError("edge sizes start at 2")
        if any(t < 0 for t in self.targets.values()):
            raise ValueError("density targets must be nonnegative")
        if self.targets and self.n < max(self.targets):
            raise ValueError("n must be at least the largest edge size")
        if self.n < 0:
            raise OutOfRangeError("n must be nonnegative")

    @property
    def k(self) -> int:
        return max(self.targets, default=2)


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def _layer_target(n: int, size: int, t: float) -> int:
    return int(round(n * t ** (size - 1) / size))


def generate(spec: GenSpec) -> Hypergraph:
    """Generate one instance; same spec (incl. seed) gives the same instance."""
    if spec.model == "complete":
        edges: list[tuple[int, ...]] = []
        for size in sorted(spec.targets):
            edges.extend(itertools.combinations(range(spec.n), size))
        return Hypergraph(spec.n, edges)
    if spec.model == "uniform_random":
        return _gen_uniform(spec)
    if spec.model == "linear_random":
        return _gen_linear(spec, girth5_two_layer=False)
    if spec.model == "mixed_linear":
        return _gen_linear(spec, girth5_two_layer=True)
    if spec.model == "girth5_graph":
        if set(spec.targets) != {2}:
            raise ValueError("girth5_graph takes a single size-2 target")
        builder = _Girth5Builder(spec.n)
        rng = _rng(spec.seed, 2)
        m = _layer_target(spec.n, 2, spec.targets[2])
        builder.fill(m, rng)
        return Hypergraph._from_arrays(spec.n, {2: builder.edge_rows()})
    if spec.model == "uncrowded_random":
        return _gen_uncrowded(spec)
    raise AssertionError(spec.model)


# ----------------------------------------------------------------------
# uniform model
# ----------------------------------------------------------------------


def _distinct_sorted_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.sort(rows, axis=1)
    keep = (np.diff(rows, axis=1) > 0).all(axis=1)
    return rows[keep]


def _gen_uniform(spec: GenSpec) -> Hypergraph:
    """Each i-set kept independently with probability matched to t_i.

    Realised as: draw the binomial layer size, then sample that many distinct
    i-sets uniformly, which has the same joint distribution.
    """
    edges: list[tuple[int, ...]] = []
    n = spec.n
    for size in sorted(spec.targets):
        rng = _rng(spec.seed, size)
        t = spec.targets[size]
        expected = n * t ** (size - 1) / size
        total = math.comb(n, size)
        p = min(1.0, expected / total) if total else 0.0
        count = int(rng.binomial(total, p)) if total else 0
        chosen: set[tuple[int, ...]] = set()
        while len(chosen) < count:
            batch = rng.integers(0, n, size=(2 * (count - len(chosen)) + 8, size))
            for row in _distinct_sorted_rows(batch):
                if len(chosen) >= count:
                    break
                chosen.add(tuple(int(v) for v in row))
        edges.extend(sorted(chosen))
    return Hypergraph(n, edges)


# ----------------------------------------------------------------------
# girth-5 graph layer
# ----------------------------------------------------------------------


class _Girth5Builder:
    """Incremental girth-5 graph over packed-bit adjacency and 2-ball rows.

    dist(u, v) >= 4 iff the closed 1-ball of u misses the closed 2-ball of v,
    one AND of two uint64 rows. Uniform proposals are filtered in batches;
    when the acceptance rate collapses (dense late stage) the second endpoint
    is drawn directly from outside the 3-ball of the first, which cannot be
    rejected by the distance test.
    """

    BATCH = 1024
    COMPLEMENT_THRESHOLD = 0.05  # uniform-phase acceptance rate cutoff
    BURST = 8  # complement-mode edges drawn per 3-ball computation

    def __init__(self, n: int, forbidden_pairs: set[int] | None = None):
        self.n = n
        self.words = (n + 63) // 64 or 1
        ids = np.arange(n)
        words_col = ids >> 6
        bits_col = np.uint64(1) << (ids & 63).astype(np.uint64)
        # closed 1-ball and closed 2-ball rows (both contain the vertex itself)
        self.ball1 = np.zeros((n, self.words), dtype=np.uint64)
        self.ball1[ids, words_col] = bits_col
        self.ball2 = self.ball1.copy()
        self.deg = np.zeros(n, dtype=np.int32)
        self.nbr = np.zeros((n, 8), dtype=np.int32)
        self.edges: list[tuple[int, int]] = []
        self.forbidden = forbidden_pairs if forbidden_pairs is not None else set()
        self.saturated: set[int] = set()

    def pair_key(self, u: int, v: int) -> int:
        return (u * self.n + v) if u < v else (v * self.n + u)

    def can_add(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if self.pair_key(u, v) in self.forbidden:
            return False
        return not (self.ball1[u] & self.ball2[v]).any()

    def add(self, u: int, v: int) -> None:
        wu, bu = u >> 6, np.uint64(1) << np.uint64(u & 63)
        wv, bv = v >> 6, np.uint64(1) << np.uint64(v & 63)
        self.ball1[u, wv] |= bv
        self.ball1[v, wu] |= bu
        self.ball2[u] |= self.ball1[v]
        self.ball2[v] |= self.ball1[u]
        du, dv = int(self.deg[u]), int(self.deg[v])
        if du:
            self.ball2[self.nbr[u, :du], wv] |= bv
        if dv:
            self.ball2[self.nbr[v, :dv], wu] |= bu
        cap = self.nbr.shape[1]
        if du >= cap or dv >= cap:
            grown = np.zeros((self.n, 2 * cap), dtype=np.int32)
            grown[:, :cap] = self.nbr
            self.nbr = grown
        self.nbr[u, du] = v
        self.nbr[v, dv] = u
        self.deg[u] = du + 1
        self.deg[v] = dv + 1
        self.edges.append((u, v) if u < v else (v, u))
        self.forbidden.add(self.pair_key(u, v))

    def _complement_of_ball3(self, u: int) -> np.ndarray:
        ball3 = self.ball2[u].copy()
        d = int(self.deg[u])
        if d:
            ball3 |= np.bitwise_or.reduce(self.ball2[self.nbr[u, :d]], axis=0)
        bits = np.unpackbits(ball3.view(np.uint8), bitorder="little")[: self.n]
        return np.flatnonzero(bits == 0)

    def fill(self, target: int, rng: np.random.Generator) -> None:
        budget = REJECTION_BUDGET_FACTOR * max(target, 1)
        proposals = 0
        complement_mode = False
        while len(self.edges) < target:
            if proposals >= budget or len(self.saturated) >= self.n:
                raise InfeasibleError(
                    f"girth-5 layer stalled at {len(self.edges)}/{target} edges",
                    achieved={"edges": len(self.edges), "target": target},
                )
            if not complement_mode:
                batch = min(self.BATCH, budget - proposals)
                us = rng.integers(0, self.n, size=batch)
                vs = rng.integers(0, self.n, size=batch)
                proposals += batch
                hit = (self.ball1[us] & self.ball2[vs]).any(axis=1)
                ok = np.flatnonzero((us != vs) & ~hit)
                us_l, vs_l = us.tolist(), vs.tolist()
                accepted = 0
                for idx in ok:
                    if len(self.edges) >= target:
                        break
                    u, v = us_l[idx], vs_l[idx]
                    # earlier insertions from this batch may invalidate the
                    # precomputed filter result
                    if self.can_add(u, v):
                        self.add(u, v)
                        accepted += 1
                if accepted / batch < self.COMPLEMENT_THRESHOLD and len(self.edges) < target:
                    complement_mode = True
                continue
            proposals += 1
            u = int(rng.integers(0, self.n))
            if u in self.saturated:
                continue
            far = self._complement_of_ball3(u)
            if not len(far):
                self.saturated.add(u)
                continue
            placed_any = False
            for _ in range(min(self.BURST, target - len(self.edges))):
                v = int(far[rng.integers(0, len(far))])
                if self.can_add(u, v):
                    self.add(u, v)
                    placed_any = True
            if not placed_any:
                # everything sampled was forbidden or newly blocked; treat as
                # an ordinary rejection against the budget
                continue

    def edge_list(self) -> list[tuple[int, int]]:
        return list(self.edges)

    def edge_rows(self) -> np.ndarray:
        if not self.edges:
            return np.empty((0, 2), dtype=np.int32)
        arr = np.array(self.edges, dtype=np.int32)
        return arr[np.lexsort((arr[:, 1], arr[:, 0]))]


# ----------------------------------------------------------------------
# linear / mixed-linear models
# ----------------------------------------------------------------------


def _gen_linear(spec: GenSpec, girth5_two_layer: bool) -> Hypergraph:
    """Sequential insertion, rejecting any edge sharing >= 2 vertices with an
    existing one (every vertex pair is covered at most once overall).

    With ``girth5_two_layer`` the 2-element layer additionally rejects edges
    closing a path of length <= 3 among 2-edges.
    """
    n = spec.n
    pair_used: set[int] = set()
    edges: list[tuple[int, ...]] = []

    def pkey(a: int, b: int) -> int:
        return a * n + b if a < b else b * n + a

    for size in sorted((s for s in spec.targets if s >= 3), reverse=True):
        rng = _rng(spec.seed, size)
        target = _layer_target(n, size, spec.targets[size])
        budget = REJECTION_BUDGET_FACTOR * max(target, 1)
        proposals = 0
        placed = 0
        while placed < target:
            if proposals >= budget:
                raise InfeasibleError(
                    f"linear layer of size {size} stalled at {placed}/{target}",
                    achieved={"size": size, "edges": placed, "target": target},
                )
            proposals += 1
            row = rng.integers(0, n, size=size)
            uniq = sorted(set(int(x) for x in row))
            if len(uniq) != size:
                continue
            keys = [pkey(a, b) for a, b in itertools.combinations(uniq, 2)]
            if any(k in pair_used for k in keys):
                continue
            pair_used.update(keys)
            edges.append(tuple(uniq))
            placed += 1

    if 2 in spec.targets:
        rng = _rng(spec.seed, 2)
        target = _layer_target(n, 2, spec.targets[2])
        if girth5_two_layer:
            builder = _Girth5Builder(n, forbidden_pairs=pair_used)
            builder.fill(target, rng)
            edges.extend(builder.edge_list())
        else:
            budget = REJECTION_BUDGET_FACTOR * max(target, 1)
            proposals = 0
            placed = 0
            while placed < target:
                if proposals >= budget:
                    raise InfeasibleError(
                        f"2-layer stalled at {placed}/{target}",
                        achieved={"size": 2, "edges": placed, "target": target},
                    )
                proposals += 1
                u, v = (int(x) for x in rng.integers(0, n, size=2))
                if u == v:
                    continue
                key = pkey(u, v)
                if key in pair_used:
                    continue
                pair_used.add(key)
                edges.append((u, v) if u < v else (v, u))
                placed += 1
    return Hypergraph(n, edges)


# ----------------------------------------------------------------------
# uncrowded model
# ----------------------------------------------------------------------


class _UncrowdedBuilder:
    """Linear insertion plus rejection of edges completing a 3- or 4-cycle.

    The current hypergraph is always linear and uncrowded, so any new short
    cycle must pass through the candidate edge; the check only explores the
    candidate's neighbourhood. Pairwise intersections of existing edges are
    single vertices, which makes link vertices unique.
    """

    def __init__(self, n: int):
        self.n = n
        self.pair_used: set[int] = set()
        self.edges: list[tuple[int, ...]] = []
        self.edge_sets: list[set[int]] = []
        self.incident: list[list[int]] = [[] for _ in range(n)]
        self.edge_adj: list[dict[int, int]] = []  # eid -> {other eid: link vertex}

    def pkey(self, a: int, b: int) -> int:
        return a * self.n + b if a < b else b * self.n + a

    def can_add(self, uniq: list[int]) -> bool:
        if any(
            self.pkey(a, b) in self.pair_used
            for a, b in itertools.combinations(uniq, 2)
        ):
            return False
        # edges touching the candidate, with their unique link vertex
        nbrs: dict[int, int] = {}
        for v in uniq:
            for eid in self.incident[v]:
                if eid in nbrs:
                    return False  # would share two vertices
                nbrs[eid] = v
        ids = sorted(nbrs)
        for idx, a in enumerate(ids):
            link_a = nbrs[a]
            for b in ids[idx + 1 :]:
                link_b = nbrs[b]
                shared = self.edge_adj[a].get(b)
                if shared is not None:
                    # candidate-a-b triangle: distinct link vertices?
                    if len({link_a, link_b, shared}) == 3:
                        return False
                if link_a == link_b:
                    continue
                # candidate-a-c-b path closing a 4-cycle
                for c, w1 in self.edge_adj[a].items():
                    if c == b:
                        continue
                    w2 = self.edge_adj[b].get(c)
                    if w2 is None:
                        continue
                    if len({link_a, w1, w2, link_b}) == 4:
                        return False
        return True

    def add(self, uniq: list[int]) -> None:
        eid = len(self.edges)
        adj: dict[int, int] = {}
        for v in uniq:
            for other in self.incident[v]:
                adj[other] = v
                self.edge_adj[other][eid] = v
            self.incident[v].append(eid)
        for a, b in itertools.combinations(uniq, 2):
            self.pair_used.add(self.pkey(a, b))
        self.edges.append(tuple(uniq))
        self.edge_sets.append(set(uniq))
        self.edge_adj.append(adj)


def _gen_uncrowded(spec: GenSpec) -> Hypergraph:
    builder = _UncrowdedBuilder(spec.n)
    n = spec.n
    for size in sorted(spec.targets, reverse=True):
        rng = _rng(spec.seed, size)
        target = _layer_target(n, size, spec.targets[size])
        budget = REJECTION_BUDGET_FACTOR * max(target, 1)
        proposals = 0
        placed = 0
        while placed < target:
            if proposals >= budget:
                raise InfeasibleError(
                    f"uncrowded layer of size {size} stalled at {placed}/{target}",
                    achieved={"size": size, "edges": placed, "target": target},
                )
            proposals += 1
            row = rng.integers(0, n, size=size)
            uniq = sorted(set(int(x) for x in row))
            if len(uniq) != size:
                continue
            if builder.can_add(uniq):
                builder.add(uniq)
                placed += 1
    return Hypergraph(n, builder.edges)


# ----------------------------------------------------------------------
# fixtures
# ----------------------------------------------------------------------


def fixture(name: str) -> Hypergraph:
    """Classical named instances used throughout the tests."""
    if name == "fano":
        lines = [
            (0, 1, 2),
            (0, 3, 4),
            (0, 5, 6),
            (1, 3, 5),
            (1, 4, 6),
            (2, 3, 6),
            (2, 4, 5),
        ]
        return Hypergraph(7, lines)
    if name == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return Hypergraph(10, outer + spokes + inner)
    if name == "c5":
        return Hypergraph(5, [(i, (i + 1) % 5) for i in range(5)])
    if name == "k4":
        return Hypergraph(4, itertools.combinations(range(4), 2))
    if name == "complete3u5":
        return Hypergraph(5, itertools.combinations(range(5), 3))
    raise UnknownFixtureError(f"no fixture named {name!r}")
