"""Bit-set graph core and the graph families used throughout.

Vertices are integers ``0..n-1``; adjacency rows are Python ints treated as
bit sets, so bit ``u`` of ``row(v)`` means ``u ~ v``.  A single
arbitrary-precision int per row keeps set algebra exact at every capacity up
to the 4096-vertex cap, which covers the 12-dimensional hypercube and the
comparability graph of the 8-dimensional Boolean lattice.  All types are
immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import random
from math import comb
from typing import IO, Iterable, Iterator, Sequence

from .errors import CapacityError, InvalidParameterError, SamplingFailure

MAX_VERTICES = 4096

# Whole-sample rejection cap for the pairing-model sampler.
PAIRING_ATTEMPT_CAP = 100_000


def _bits_from(capacity: int, members: Iterable[int]) -> int:
    bits = 0
    for v in members:
        if not 0 <= v < capacity:
            raise ValueError(f"vertex {v} outside capacity {capacity}")
        bits |= 1 << v
    return bits


def iter_bits(bits: int) -> Iterator[int]:
    """Yield set bit positions of ``bits`` in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class VertexSet:
    """Immutable set of vertex indices below a fixed capacity.

    Iteration yields members in ascending order.  Binary operations require
    equal capacities.
    """

    __slots__ = ("capacity", "bits")

    def __init__(self, capacity: int, members: Iterable[int] = ()):
        if not 0 <= capacity <= MAX_VERTICES:
            raise CapacityError(f"capacity {capacity} outside [0, {MAX_VERTICES}]")
        self.capacity = capacity
        self.bits = _bits_from(capacity, members)

    @classmethod
    def from_bits(cls, capacity: int, bits: int) -> "VertexSet":
        s = cls(capacity)
        if bits < 0 or bits >> capacity:
            raise ValueError("bit mask outside capacity")
        s.bits = bits
        return s

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.capacity and (self.bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.capacity == other.capacity
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.capacity, self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.capacity}, {list(self)})"

    def _check_same(self, other: "VertexSet") -> None:
        if self.capacity != other.capacity:
            raise ValueError("capacity mismatch")

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet.from_bits(self.capacity, self.bits | other.bits)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet.from_bits(self.capacity, self.bits & other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check_same(other)
        return VertexSet.from_bits(self.capacity, self.bits & ~other.bits)

    union = __or__
    intersection = __and__
    difference = __sub__

    def complement(self) -> "VertexSet":
        """Complement within the capacity."""
        full = (1 << self.capacity) - 1
        return VertexSet.from_bits(self.capacity, full & ~self.bits)

    def add(self, v: int) -> "VertexSet":
        return VertexSet.from_bits(self.capacity, self.bits | _bits_from(self.capacity, (v,)))

    def discard(self, v: int) -> "VertexSet":
        return VertexSet.from_bits(self.capacity, self.bits & ~_bits_from(self.capacity, (v,)))

    def issubset(self, other: "VertexSet") -> bool:
        self._check_same(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "VertexSet") -> bool:
        self._check_same(other)
        return self.bits & other.bits == 0


def _as_bits(capacity: int, S: "VertexSet | Iterable[int]") -> int:
    if isinstance(S, VertexSet):
        if S.capacity != capacity:
            raise ValueError(f"vertex set capacity {S.capacity} != {capacity}")
        return S.bits
    return _bits_from(capacity, S)


class BitGraph:
    """Undirected graph on ``n`` vertices with bit-set adjacency rows.

    ``labels``, when present, carry a per-vertex bitmask tag; families
    derived from the Boolean lattice store each vertex's element mask there,
    so callers can translate between graph vertices and poset elements
    without side tables.
    """

    __slots__ = ("n", "rows", "labels", "_label_pos")

    def __init__(self, rows: Sequence[int], labels: Sequence[int] | None = None):
        n = len(rows)
        if n > MAX_VERTICES:
            raise CapacityError(f"{n} vertices exceeds cap {MAX_VERTICES}")
        rows = tuple(rows)
        for v, row in enumerate(rows):
            if row < 0 or row >> n:
                raise ValueError(f"row {v} has bits outside 0..{n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not (rows[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels length must match vertex count")
        self.n = n
        self.rows = rows
        self.labels = labels
        self._label_pos = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[int] | None = None,
    ) -> "BitGraph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(rows, labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def row(self, v: int) -> int:
        return self.rows[v]

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_bits(self.n, self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @property
    def max_degree(self) -> int:
        return max((r.bit_count() for r in self.rows), default=0)

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in ascending lexicographic order."""
        for u in range(self.n):
            for v in iter_bits(self.rows[u] >> (u + 1)):
                yield u, u + 1 + v

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and (self.rows[u] >> v) & 1 == 1

    def label_of(self, v: int) -> int:
        if self.labels is None:
            raise ValueError("graph carries no labels")
        return self.labels[v]

    def vertex_of_label(self, mask: int) -> int:
        if self.labels is None:
            raise ValueError("graph carries no labels")
        if self._label_pos is None:
            self._label_pos = {m: i for i, m in enumerate(self.labels)}
        return self._label_pos[mask]

    def permuted(self, perm: Sequence[int]) -> "BitGraph":
        """Relabel vertices: new vertex perm[v] plays the role of old v."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of the vertices")
        rows = [0] * self.n
        for v in range(self.n):
            r = 0
            for u in iter_bits(self.rows[v]):
                r |= 1 << perm[u]
            rows[perm[v]] = r
        labels = None
        if self.labels is not None:
            labels = [0] * self.n
            for v in range(self.n):
                labels[perm[v]] = self.labels[v]
        return BitGraph(rows, labels)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitGraph)
            and self.n == other.n
            and self.rows == other.rows
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.n, self.rows, self.labels))

    def __repr__(self) -> str:
        return f"BitGraph(n={self.n}, m={self.edge_count})"


class MatchingPairs:
    """Vertex-disjoint unordered pairs, stored canonically.

    Each pair is kept smaller-vertex-first and the pair list sorted, so
    equality is structural.
    """

    __slots__ = ("pairs",)

    def __init__(self, pairs: Iterable[tuple[int, int]]):
        canon = sorted((min(p), max(p)) for p in pairs)
        seen = set()
        for a, b in canon:
            if a == b:
                raise InvalidParameterError(f"degenerate pair ({a},{b})")
            for x in (a, b):
                if x in seen:
                    raise InvalidParameterError(f"pairs share vertex {x}")
                seen.add(x)
        self.pairs = tuple(canon)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatchingPairs) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        return f"MatchingPairs({list(self.pairs)})"

    def support(self) -> set[int]:
        return {v for p in self.pairs for v in p}


# ---------------------------------------------------------------------------
# Families


def hypercube(n: int) -> BitGraph:
    """Covering graph of the n-cube: vertices are n-bit masks, adjacent when
    they differ in exactly one coordinate.  n-regular; labels are the masks.
    """
    if not 0 <= n <= 12:
        raise CapacityError(f"hypercube dimension {n} outside [0, 12]")
    size = 1 << n
    rows = [0] * size
    for v in range(size):
        r = 0
        for i in range(n):
            r |= 1 << (v ^ (1 << i))
        rows[v] = r
    return BitGraph(rows, labels=range(size))


def bilayer(n: int, k: int) -> BitGraph:
    """Subgraph of the n-cube on the masks of weights k and k+1.

    (n-k, k+1)-biregular: the weight-k side has degree n-k.  Vertices are
    ordered weight-k masks ascending, then weight-(k+1) masks ascending;
    labels are the masks.
    """
    if not 0 <= n <= 12:
        raise CapacityError(f"ambient dimension {n} outside [0, 12]")
    if not 0 <= k < n:
        raise InvalidParameterError(f"need 0 <= k < n, got k={k}, n={n}")
    low = [m for m in range(1 << n) if m.bit_count() == k]
    high = [m for m in range(1 << n) if m.bit_count() == k + 1]
    labels = low + high
    pos = {m: i for i, m in enumerate(labels)}
    edges = []
    for m in low:
        for i in range(n):
            if not (m >> i) & 1:
                edges.append((pos[m], pos[m | (1 << i)]))
    return BitGraph.from_edges(len(labels), edges, labels=labels)


def h_n_graph(d: int, copies: int) -> BitGraph:
    """d-regular union of complete-bipartite-joined triangle packs.

    One copy is two disjoint sets of (d-2)/3 triangles plus every edge
    between the two sides; the result on 2(d-2)*copies vertices is d-regular
    (triangle degree 2 + cross degree d-2).
    """
    if d % 3 != 2 or d < 5:
        raise InvalidParameterError(f"need d >= 5 with d = 2 (mod 3), got {d}")
    if copies < 1:
        raise InvalidParameterError("copies must be >= 1")
    side = d - 2
    block = 2 * side
    nverts = block * copies
    if nverts > MAX_VERTICES:
        raise CapacityError(f"{nverts} vertices exceeds cap {MAX_VERTICES}")
    edges = []
    for c in range(copies):
        base = c * block
        for s in (0, side):
            for t in range(side // 3):
                a, b, cc = (base + s + 3 * t + j for j in range(3))
                edges += [(a, b), (a, cc), (b, cc)]
        for u in range(side):
            for v in range(side):
                edges.append((base + u, base + side + v))
    return BitGraph.from_edges(nverts, edges)


def comparability_graph(n: int) -> BitGraph:
    """Graph on all masks of the n-dimensional Boolean lattice with edges
    between strictly comparable pairs.  Independent sets are antichains.
    """
    if not 0 <= n <= 8:
        raise CapacityError(f"lattice dimension {n} outside [0, 8]")
    size = 1 << n
    rows = [0] * size
    for x in range(size):
        for y in range(x + 1, size):
            if x & y == x or x & y == y:
                rows[x] |= 1 << y
                rows[y] |= 1 << x
    return BitGraph(rows, labels=range(size))


def random_regular(n: int, d: int, seed: int) -> BitGraph:
    """Uniform simple d-regular graph via the pairing model.

    Pairs half-edge stubs uniformly and rejects the whole sample on any loop
    or multi-edge; deterministic for a fixed seed.  Raises SamplingFailure
    after the attempt cap.
    """
    if n > MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds cap {MAX_VERTICES}")
    if d < 0 or d >= n or (n * d) % 2 != 0:
        raise InvalidParameterError(
            f"infeasible degree sequence: n={n}, d={d} (need n*d even, d < n)"
        )
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    for _ in range(PAIRING_ATTEMPT_CAP):
        rng.shuffle(stubs)
        rows = [0] * n
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or (rows[u] >> v) & 1:
                ok = False
                break
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        if ok:
            return BitGraph(rows)
    raise SamplingFailure(
        f"no simple pairing for n={n}, d={d} in {PAIRING_ATTEMPT_CAP} attempts"
    )


# ---------------------------------------------------------------------------
# Predicates


def is_maximal_independent(G: BitGraph, S: "VertexSet | Iterable[int]") -> bool:
    """True iff S is independent and every outside vertex has a neighbor in S."""
    bits = _as_bits(G.n, S)
    for v in range(G.n):
        if (bits >> v) & 1:
            if G.rows[v] & bits:
                return False
        elif not G.rows[v] & bits:
            return False
    return True


def random_maximal_independent_set(G: BitGraph, seed: int) -> VertexSet:
    """Greedy completion of a seeded random vertex order; always maximal."""
    rng = random.Random(seed)
    order = list(range(G.n))
    rng.shuffle(order)
    bits = 0
    for v in order:
        if not G.rows[v] & bits:
            bits |= 1 << v
    return VertexSet.from_bits(G.n, bits)


def is_induced_matching(G: BitGraph, M: MatchingPairs) -> bool:
    """True iff every pair is an edge and the subgraph induced on the pair
    vertices is exactly the pairs themselves."""
    support = 0
    partner = {}
    for a, b in M:
        if not (0 <= a < G.n and 0 <= b < G.n):
            raise InvalidParameterError(f"pair ({a},{b}) outside vertex range")
        support |= (1 << a) | (1 << b)
        partner[a], partner[b] = b, a
    for a, b in M:
        if not (G.rows[a] >> b) & 1:
            return False
    for v in partner:
        if G.rows[v] & support != 1 << partner[v]:
            return False
    return True


# ---------------------------------------------------------------------------
# Graph file format: "n m" header, one "u v" line per edge with u < v in
# ascending lexicographic order, '#' comment lines permitted.


def write_graph(dest: "str | IO[str]", G: BitGraph) -> None:
    own = isinstance(dest, str)
    f = open(dest, "w") if own else dest
    try:
        f.write(f"{G.n} {G.edge_count}\n")
        for u, v in G.edges():
            f.write(f"{u} {v}\n")
    finally:
        if own:
            f.close()


def read_graph(src: "str | IO[str]") -> BitGraph:
    own = isinstance(src, str)
    f = open(src) if own else src
    try:
        header = None
        edges = []
        for raw in f:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InvalidParameterError(f"malformed line: {line!r}")
            a, b = int(parts[0]), int(parts[1])
            if header is None:
                header = (a, b)
            else:
                if not a < b:
                    raise InvalidParameterError(f"edge {a} {b} must have u < v")
                edges.append((a, b))
        if header is None:
            raise InvalidParameterError("empty graph file")
        n, m = header
        if len(edges) != m:
            raise InvalidParameterError(f"header says {m} edges, found {len(edges)}")
        return BitGraph.from_edges(n, edges)
    finally:
        if own:
            f.close()
