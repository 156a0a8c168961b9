"""Core hypergraph type: degrees, induced subhypergraphs, independence checks,
short-cycle detection, and the `.nhg` text format.

Vertices are integers ``0..n-1``. Edges are duplicate-free vertex sets of size
at least 2, stored per size as lexicographically sorted int32 row arrays, so a
hypergraph has a single canonical form. Instances are immutable after
construction; derived structures (incidence lists, degree tables) are cached.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    DuplicateEdgeError,
    EdgeSizeError,
    NhgParseError,
    OutOfRangeError,
)

__all__ = [
    "Hypergraph",
    "DegreeProfile",
    "CycleWitness",
    "CycleCensus",
    "new_hypergraph",
    "parse_nhg",
    "serialize_nhg",
    "load_nhg",
    "save_nhg",
]


@dataclass(frozen=True)
class DegreeProfile:
    """Per-size vertex degrees plus the derived average-degree values.

    ``t_pow[i]`` is ``i * |E_i| / n`` and ``t[i]`` its ``(i-1)``-th root.
    """

    n: int
    degrees: dict[int, np.ndarray]
    t_pow: dict[int, float]
    t: dict[int, float]

    def total_degrees(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.int64)
        for d in self.degrees.values():
            out += d
        return out

    @property
    def t_max(self) -> float:
        return max(self.t.values(), default=0.0)


@dataclass(frozen=True)
class CycleWitness:
    """A concrete cycle: edges in cyclic order plus distinct link vertices.

    ``link_vertices[i]`` lies in ``edges[i] & edges[i+1]`` (cyclically).
    """

    edges: tuple[tuple[int, ...], ...]
    link_vertices: tuple[int, ...]

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(sorted(len(e) for e in self.edges))

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass
class CycleCensus:
    """Counts of short cycles, stratified by the sorted edge-size signature.

    ``four_cycles`` follows the convention of counting only 4-cycles in which
    no three of the four edges form a 3-cycle, unless ``includes_all_four`` is
    set. A hypergraph is linear iff ``two_cycles == 0`` and uncrowded iff all
    counts are zero.
    """

    max_len: int
    two_cycles: int = 0
    three_cycles: dict[tuple[int, int, int], int] = field(default_factory=dict)
    four_cycles: dict[tuple[int, int, int, int], int] = field(default_factory=dict)
    includes_all_four: bool = False
    witnesses: list[CycleWitness] | None = None

    @property
    def three_total(self) -> int:
        return sum(self.three_cycles.values())

    @property
    def four_total(self) -> int:
        return sum(self.four_cycles.values())

    @property
    def is_linear(self) -> bool:
        return self.two_cycles == 0

    @property
    def is_uncrowded(self) -> bool:
        # With no 2- or 3-cycles present every 4-cycle is "3-cycle-free",
        # so the starred counts decide uncrowdedness either way.
        return self.two_cycles == 0 and self.three_total == 0 and self.four_total == 0


def _canonical_edge(edge: Iterable[int], n: int) -> tuple[int, ...]:
    vs = sorted(set(int(v) for v in edge))
    if len(vs) < 2:
        raise EdgeSizeError(f"edge {tuple(edge)!r} has fewer than 2 distinct vertices")
    if vs[0] < 0 or vs[-1] >= n:
        raise OutOfRangeError(f"edge {tuple(vs)} has a vertex outside 0..{n - 1}")
    return tuple(vs)


class Hypergraph:
    """Immutable non-uniform hypergraph on vertices ``0..n-1``."""

    __slots__ = (
        "n",
        "_by_size",
        "_edge_tuples",
        "_edge_sets",
        "_incidence",
        "_degrees",
        "_pair_counts",
    )

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise OutOfRangeError("vertex count must be nonnegative")
        self.n = int(n)
        grouped: dict[int, list[tuple[int, ...]]] = {}
        seen: set[tuple[int, ...]] = set()
        for edge in edges:
            e = _canonical_edge(edge, self.n)
            if e in seen:
                raise DuplicateEdgeError(f"edge {e} supplied twice")
            seen.add(e)
            grouped.setdefault(len(e), []).append(e)
        by_size: dict[int, np.ndarray] = {}
        for size in sorted(grouped):
            arr = np.array(sorted(grouped[size]), dtype=np.int32)
            by_size[size] = arr
        self._by_size = by_size
        self._edge_tuples: list[tuple[int, ...]] | None = None
        self._edge_sets: list[frozenset[int]] | None = None
        self._incidence: tuple[np.ndarray, np.ndarray] | None = None
        self._degrees: dict[int, np.ndarray] = {}
        self._pair_counts: dict | None = None

    @classmethod
    def _from_arrays(cls, n: int, by_size: dict[int, np.ndarray]) -> "Hypergraph":
        """Trusted constructor: rows must already be canonical and distinct."""
        h = cls.__new__(cls)
        h.n = int(n)
        h._by_size = {s: by_size[s] for s in sorted(by_size) if len(by_size[s])}
        h._edge_tuples = None
        h._edge_sets = None
        h._incidence = None
        h._degrees = {}
        h._pair_counts = None
        return h

    # ------------------------------------------------------------------
    # basic queries
    # ------------------------------------------------------------------

    @property
    def sizes(self) -> list[int]:
        return list(self._by_size)

    @property
    def k(self) -> int:
        """Maximum edge size present (2 for an edgeless hypergraph)."""
        return max(self._by_size, default=2)

    def edge_count(self, size: int | None = None) -> int:
        if size is None:
            return sum(len(a) for a in self._by_size.values())
        arr = self._by_size.get(size)
        return 0 if arr is None else len(arr)

    def edge_array(self, size: int) -> np.ndarray:
        return self._by_size.get(size, np.empty((0, size), dtype=np.int32))

    def edges(self, size: int | None = None) -> Iterator[tuple[int, ...]]:
        for s, arr in self._by_size.items():
            if size is None or s == size:
                for row in arr:
                    yield tuple(int(v) for v in row)

    def edge_tuples(self) -> list[tuple[int, ...]]:
        """All edges in canonical (size, lexicographic) order."""
        if self._edge_tuples is None:
            self._edge_tuples = list(self.edges())
        return self._edge_tuples

    def edge_vertex_sets(self) -> list[frozenset[int]]:
        if self._edge_sets is None:
            self._edge_sets = [frozenset(e) for e in self.edge_tuples()]
        return self._edge_sets

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        if self.n != other.n or self.sizes != other.sizes:
            return False
        return all(
            np.array_equal(self._by_size[s], other._by_size[s]) for s in self._by_size
        )

    def __repr__(self) -> str:
        parts = ", ".join(f"|E{s}|={len(a)}" for s, a in self._by_size.items())
        return f"Hypergraph(n={self.n}{', ' + parts if parts else ''})"

    # ------------------------------------------------------------------
    # degrees
    # ------------------------------------------------------------------

    def degrees(self, size: int) -> np.ndarray:
        """Vector of d_size(v) over all vertices."""
        if size not in self._degrees:
            arr = self._by_size.get(size)
            if arr is None or not len(arr):
                self._degrees[size] = np.zeros(self.n, dtype=np.int64)
            else:
                self._degrees[size] = np.bincount(arr.ravel(), minlength=self.n)
        return self._degrees[size]

    def total_degrees(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.int64)
        for s in self._by_size:
            out += self.degrees(s)
        return out

    def average_degree(self, size: int) -> tuple[float, float]:
        """Return ``(t_pow, t)`` with ``t_pow = size*|E_size|/n``.

        Sizes with no edges give ``(0.0, 0.0)``.
        """
        if size < 2:
            raise EdgeSizeError("edge sizes start at 2")
        m = self.edge_count(size)
        if m == 0 or self.n == 0:
            return 0.0, 0.0
        t_pow = size * m / self.n
        return t_pow, t_pow ** (1.0 / (size - 1))

    def degree_profile(self) -> DegreeProfile:
        degrees = {s: self.degrees(s) for s in self._by_size}
        t_pow: dict[int, float] = {}
        t: dict[int, float] = {}
        for s in self._by_size:
            t_pow[s], t[s] = self.average_degree(s)
        return DegreeProfile(self.n, degrees, t_pow, t)

    def incidence(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR map vertex -> global edge ids (canonical edge order)."""
        if self._incidence is None:
            verts: list[np.ndarray] = []
            eids: list[np.ndarray] = []
            base = 0
            for s, arr in self._by_size.items():
                if len(arr):
                    verts.append(arr.ravel().astype(np.int64))
                    eids.append(np.repeat(np.arange(base, base + len(arr), dtype=np.int64), s))
                base += len(arr)
            if verts:
                v = np.concatenate(verts)
                e = np.concatenate(eids)
                order = np.argsort(v, kind="stable")
                indptr = np.zeros(self.n + 1, dtype=np.int64)
                np.cumsum(np.bincount(v, minlength=self.n), out=indptr[1:])
                self._incidence = (indptr, e[order])
            else:
                self._incidence = (np.zeros(self.n + 1, dtype=np.int64), np.empty(0, dtype=np.int64))
        return self._incidence

    def incident_edge_ids(self, v: int) -> np.ndarray:
        indptr, eids = self.incidence()
        return eids[indptr[v] : indptr[v + 1]]

    # ------------------------------------------------------------------
    # independence / induced subhypergraphs
    # ------------------------------------------------------------------

    def _vertex_mask(self, vs: Iterable[int]) -> np.ndarray:
        mask = np.zeros(self.n, dtype=bool)
        idx = np.fromiter((int(v) for v in vs), dtype=np.int64)
        if len(idx):
            if idx.min() < 0 or idx.max() >= self.n:
                raise OutOfRangeError("vertex set contains an id outside 0..n-1")
            mask[idx] = True
        return mask

    def is_independent(self, vs: Iterable[int]) -> bool:
        """True iff no edge is fully contained in ``vs``."""
        mask = self._vertex_mask(vs)
        for arr in self._by_size.values():
            if len(arr) and bool(mask[arr].all(axis=1).any()):
                return False
        return True

    def induced(self, vs: Iterable[int]) -> tuple["Hypergraph", np.ndarray]:
        """Subhypergraph on ``vs`` relabeled to ``0..|vs|-1``.

        Returns ``(sub, mapping)`` where ``mapping[new_id] = old_id``.
        """
        mask = self._vertex_mask(vs)
        mapping = np.flatnonzero(mask).astype(np.int32)
        relabel = np.full(self.n, -1, dtype=np.int32)
        relabel[mapping] = np.arange(len(mapping), dtype=np.int32)
        by_size: dict[int, np.ndarray] = {}
        for s, arr in self._by_size.items():
            if not len(arr):
                continue
            keep = mask[arr].all(axis=1)
            if keep.any():
                # relabel is monotone on the kept ids, so rows stay sorted and
                # the lexicographic row order is preserved.
                by_size[s] = relabel[arr[keep]]
        return Hypergraph._from_arrays(len(mapping), by_size), mapping

    def disjoint_copies(self, copies: int) -> "Hypergraph":
        """Union of ``copies`` vertex-disjoint copies; copy c maps v to c*n+v."""
        if copies < 1:
            raise OutOfRangeError("need at least one copy")
        total = copies * self.n
        if total >= 2**31:
            raise OverflowError("disjoint union exceeds int32 vertex ids")
        by_size: dict[int, np.ndarray] = {}
        for s, arr in self._by_size.items():
            if not len(arr):
                continue
            offsets = (np.arange(copies, dtype=np.int32) * self.n).repeat(len(arr))
            stacked = np.tile(arr, (copies, 1)) + offsets[:, None]
            by_size[s] = stacked
        return Hypergraph._from_arrays(total, by_size)

    # ------------------------------------------------------------------
    # short cycles
    # ------------------------------------------------------------------

    def _pair_buckets(self) -> dict[tuple[int, int], list[int]]:
        """Map vertex pair -> global ids of edges covering it."""
        buckets: dict[tuple[int, int], list[int]] = {}
        for eid, e in enumerate(self.edge_tuples()):
            for a, b in itertools.combinations(e, 2):
                buckets.setdefault((a, b), []).append(eid)
        return buckets

    def has_two_cycle(self) -> bool:
        """Cheap linearity test: some vertex pair covered by two edges."""
        for ids in self._pair_buckets().values():
            if len(ids) > 1:
                return True
        return False

    def cycle_census(
        self,
        max_len: int = 4,
        *,
        want_witnesses: bool = False,
        include_all_four: bool = False,
    ) -> CycleCensus:
        """Count 2-cycles, 3-cycles and (3-cycle-free) 4-cycles by signature.

        Enumeration is incidence-driven: only edge pairs that share a vertex
        are ever examined, and 4-cycle candidates come from common-neighbour
        wedges in the edge-intersection graph.
        """
        if max_len not in (2, 3, 4):
            raise ValueError("max_len must be 2, 3 or 4")
        census = CycleCensus(max_len=max_len, includes_all_four=include_all_four)
        if want_witnesses:
            census.witnesses = []
        edges = self.edge_tuples()
        sets = self.edge_vertex_sets()
        m = len(edges)
        if m < 2:
            return census

        # adjacency between edges through shared vertices
        incident: dict[int, list[int]] = {}
        for eid, e in enumerate(edges):
            for v in e:
                incident.setdefault(v, []).append(eid)
        adj: list[set[int]] = [set() for _ in range(m)]
        for ids in incident.values():
            if len(ids) > 1:
                for a, b in itertools.combinations(ids, 2):
                    adj[a].add(b)
                    adj[b].add(a)

        inter_cache: dict[tuple[int, int], frozenset[int]] = {}

        def inter(a: int, b: int) -> frozenset[int]:
            key = (a, b) if a < b else (b, a)
            got = inter_cache.get(key)
            if got is None:
                got = sets[a] & sets[b]
                inter_cache[key] = got
            return got

        # 2-cycles: adjacent edge pairs sharing >= 2 vertices
        for a in range(m):
            for b in adj[a]:
                if b > a:
                    shared = inter(a, b)
                    if len(shared) >= 2:
                        census.two_cycles += 1
                        if want_witnesses:
                            v1, v2 = sorted(shared)[:2]
                            census.witnesses.append(
                                CycleWitness((edges[a], edges[b]), (v1, v2))
                            )
        if max_len == 2:
            return census

        def is_three_cycle(a: int, b: int, c: int):
            sab, sbc, sca = inter(a, b), inter(b, c), inter(c, a)
            if not (sab and sbc and sca):
                return None
            return _match_distinct((sab, sbc, sca))

        three_members: set[tuple[int, int, int]] = set()
        for a in range(m):
            for b in adj[a]:
                if b <= a:
                    continue
                common = adj[a] & adj[b]
                for c in common:
                    if c <= b:
                        continue
                    links = is_three_cycle(a, b, c)
                    if links is not None:
                        sig = tuple(sorted((len(edges[a]), len(edges[b]), len(edges[c]))))
                        census.three_cycles[sig] = census.three_cycles.get(sig, 0) + 1
                        three_members.add((a, b, c))
                        if want_witnesses:
                            census.witnesses.append(
                                CycleWitness((edges[a], edges[b], edges[c]), tuple(links))
                            )
        if max_len == 3:
            return census

        three_set = three_members

        def quad_arrangement(q: tuple[int, int, int, int]):
            """First cyclic arrangement of the 4 edges admitting distinct links."""
            q0, q1, q2, q3 = q
            for order in ((q0, q1, q2, q3), (q0, q2, q1, q3), (q0, q1, q3, q2)):
                slots = [
                    inter(order[0], order[1]),
                    inter(order[1], order[2]),
                    inter(order[2], order[3]),
                    inter(order[3], order[0]),
                ]
                if not all(slots):
                    continue
                links = _match_distinct(tuple(slots))
                if links is not None:
                    return order, links
            return None

        # wedges keyed by their endpoint edges; two mid edges close a 4-cycle
        wedges: dict[tuple[int, int], list[int]] = {}
        for mid in range(m):
            nbrs = sorted(adj[mid])
            for a, c in itertools.combinations(nbrs, 2):
                wedges.setdefault((a, c), []).append(mid)
        seen_quads: set[tuple[int, int, int, int]] = set()
        for (a, c), mids in wedges.items():
            if len(mids) < 2:
                continue
            for b, d in itertools.combinations(mids, 2):
                if b == a or b == c or d == a or d == c:
                    continue
                quad = tuple(sorted((a, b, c, d)))
                if quad in seen_quads:
                    continue
                seen_quads.add(quad)
                if not include_all_four:
                    if any(
                        trip in three_set
                        for trip in itertools.combinations(quad, 3)
                    ):
                        continue
                found = quad_arrangement(quad)
                if found is None:
                    continue
                order, links = found
                sig = tuple(sorted(len(edges[e]) for e in quad))
                census.four_cycles[sig] = census.four_cycles.get(sig, 0) + 1
                if want_witnesses:
                    census.witnesses.append(
                        CycleWitness(tuple(edges[e] for e in order), tuple(links))
                    )
        return census

    def graph_layer_ok(self) -> bool:
        """True iff the 2-edge layer has no 3- or 4-cycles (girth >= 5).

        A wedge is a path x-v-y through a mid vertex v. Girth >= 5 is
        equivalent to: no wedge endpoint pair repeats, and no wedge endpoint
        pair is itself an edge.
        """
        arr = self.edge_array(2)
        if len(arr) < 3:
            return True
        n = self.n
        deg = np.bincount(arr.ravel(), minlength=n)
        order = np.argsort(arr.ravel(), kind="stable")
        nbr = arr[:, ::-1].ravel()[order]  # neighbour lists, CSR by vertex
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        keys: list[np.ndarray] = []
        for v in range(n):
            lo, hi = indptr[v], indptr[v + 1]
            if hi - lo < 2:
                continue
            nb = np.sort(nbr[lo:hi])
            i, j = np.triu_indices(len(nb), k=1)
            keys.append(nb[i].astype(np.int64) * n + nb[j].astype(np.int64))
        if not keys:
            return True
        wedge_keys = np.concatenate(keys)
        uniq, counts = np.unique(wedge_keys, return_counts=True)
        if (counts > 1).any():
            return False  # two vertices with two common neighbours: a 4-cycle
        lo = np.minimum(arr[:, 0], arr[:, 1]).astype(np.int64)
        hi = np.maximum(arr[:, 0], arr[:, 1]).astype(np.int64)
        edge_keys = lo * n + hi
        return not bool(np.isin(uniq, edge_keys, assume_unique=False).any())


def _match_distinct(slots: tuple[frozenset[int], ...]) -> list[int] | None:
    """Pick pairwise distinct representatives, one per slot, or None.

    Augmenting-path bipartite matching between slots and vertices; with at
    most four slots this is effectively constant work.
    """
    owner: dict[int, int] = {}

    def try_assign(i: int, banned: set[int]) -> bool:
        for v in sorted(slots[i]):
            if v in banned:
                continue
            banned.add(v)
            if v not in owner or try_assign(owner[v], banned):
                owner[v] = i
                return True
        return False

    for i in range(len(slots)):
        if not try_assign(i, set()):
            return None
    chosen = [-1] * len(slots)
    for v, i in owner.items():
        chosen[i] = v
    return chosen


def new_hypergraph(n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Construct a canonical hypergraph; edge order is irrelevant to equality."""
    return Hypergraph(n, edges)


# ----------------------------------------------------------------------
# .nhg text format
# ----------------------------------------------------------------------

_NHG_MAGIC = "nhg 1"


def serialize_nhg(h: Hypergraph) -> str:
    """Canonical `.nhg` text: header, vertex count, one `e` line per edge."""
    lines = [_NHG_MAGIC, f"n {h.n}"]
    for e in h.edge_tuples():
        lines.append("e " + " ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def parse_nhg(text: str) -> Hypergraph:
    """Parse `.nhg` text; raises :class:`NhgParseError` on malformed input."""
    lines = text.split("\n")
    body = [
        (idx + 1, line.strip())
        for idx, line in enumerate(lines)
        if line.strip() and not line.strip().startswith("#")
    ]
    if not body or body[0][1] != _NHG_MAGIC:
        raise NhgParseError("missing 'nhg 1' header")
    if len(body) < 2 or not body[1][1].startswith("n "):
        raise NhgParseError("missing 'n <count>' line")
    try:
        n = int(body[1][1].split()[1])
    except (IndexError, ValueError) as exc:
        raise NhgParseError("bad vertex count") from exc
    edges = []
    for lineno, line in body[2:]:
        parts = line.split()
        if parts[0] != "e":
            raise NhgParseError(f"line {lineno}: expected an 'e' line")
        try:
            vs = [int(p) for p in parts[1:]]
        except ValueError as exc:
            raise NhgParseError(f"line {lineno}: non-integer vertex id") from exc
        if len(vs) < 2:
            raise NhgParseError(f"line {lineno}: edge needs at least 2 vertices")
        if any(b <= a for a, b in zip(vs, vs[1:])):
            raise NhgParseError(f"line {lineno}: vertex ids must strictly increase")
        edges.append(vs)
    try:
        return Hypergraph(n, edges)
    except (OutOfRangeError, EdgeSizeError, DuplicateEdgeError) as exc:
        raise NhgParseError(str(exc)) from exc


def load_nhg(path) -> Hypergraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_nhg(fh.read())


def save_nhg(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(serialize_nhg(h))
