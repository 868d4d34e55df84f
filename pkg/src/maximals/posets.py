"""Boolean lattice substrate: levels, up-shadows, covers, convexity.

Elements of the lattice on ground set {1..n} are bare n-bit masks; level
and containment queries are popcount/subset tests, so no order relation is
ever materialized.  Convex subsets (closed under taking elements between
two members) are the working universe for the antichain bound recursion
and the level-profile verifier.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import IO, Iterable, Iterator

from .errors import CapacityError, InvalidParameterError, PreconditionViolation
from .graphs import BitGraph, MatchingPairs

MAX_GROUND = 20


@dataclass(frozen=True)
class BooleanLattice:
    """The lattice of subsets of {1..n}, elements encoded as n-bit masks.

    Coordinate i (1-based) corresponds to bit i-1.
    """

    n: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_GROUND:
            raise CapacityError(f"ground-set size {self.n} outside [0, {MAX_GROUND}]")

    @property
    def size(self) -> int:
        """Element count 2^n."""
        return 1 << self.n

    @property
    def middle_binomial(self) -> int:
        """C(n, floor(n/2)), the largest level size."""
        return comb(self.n, self.n // 2)

    def level(self, x: int) -> int:
        return x.bit_count()

    def level_size(self, i: int) -> int:
        return comb(self.n, i)

    def elements(self) -> range:
        return range(self.size)

    def level_elements(self, i: int) -> Iterator[int]:
        return (x for x in self.elements() if x.bit_count() == i)

    def covers_up(self, x: int) -> Iterator[int]:
        """Elements covering x (one extra coordinate)."""
        for i in range(self.n):
            if not (x >> i) & 1:
                yield x | (1 << i)

    def _check_element(self, x: int) -> None:
        if not 0 <= x < self.size:
            raise InvalidParameterError(f"mask {x:#x} outside the lattice")


def gamma_plus(L: BooleanLattice, S: Iterable[int]) -> frozenset[int]:
    """Strict up-shadow: elements above some member of S, excluding S."""
    S = frozenset(S)
    for x in S:
        L._check_element(x)
    reached: set[int] = set()
    frontier = set(S)
    while frontier:
        nxt = set()
        for x in frontier:
            for y in L.covers_up(x):
                if y not in reached:
                    reached.add(y)
                    nxt.add(y)
        frontier = nxt
    return frozenset(reached - S)


def is_convex(L: BooleanLattice, Z: Iterable[int]) -> bool:
    """True iff x < y < z with x, z in Z forces y in Z.

    Checked via single-coordinate extensions of the gap-2+ pairs, which is
    equivalent to full convexity by induction on interval height (the
    brute-force triple scan agrees; see tests).
    """
    members = frozenset(Z)
    for x in members:
        L._check_element(x)
    for x in members:
        for z in members:
            if x & z == x and x != z and (x ^ z).bit_count() >= 2:
                extra = x ^ z
                for i in range(L.n):
                    if (extra >> i) & 1 and (x | (1 << i)) not in members:
                        return False
    return True


def cover_degree_up(L: BooleanLattice, Z: Iterable[int], y: int) -> int:
    """Number of elements of Z covering y."""
    L._check_element(y)
    members = Z if isinstance(Z, (set, frozenset)) else frozenset(Z)
    return sum(1 for c in L.covers_up(y) if c in members)


def convex_closure(L: BooleanLattice, S: Iterable[int]) -> frozenset[int]:
    """Smallest convex superset of S."""
    members = set(S)
    for x in members:
        L._check_element(x)
    changed = True
    while changed:
        changed = False
        pairs = [(x, z) for x in members for z in members
                 if x & z == x and x != z and (x ^ z).bit_count() >= 2]
        for x, z in pairs:
            extra = x ^ z
            for i in range(L.n):
                if (extra >> i) & 1:
                    y = x | (1 << i)
                    if y not in members:
                        members.add(y)
                        changed = True
    return frozenset(members)


@dataclass(frozen=True)
class ConvexSubposet:
    """A convex subset Z of a Boolean lattice; convexity is checked."""

    lattice: BooleanLattice
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not is_convex(self.lattice, self.members):
            raise PreconditionViolation("member set is not convex")

    def __len__(self) -> int:
        return len(self.members)

    def level_profile(self) -> list[int]:
        prof = [0] * (self.lattice.n + 1)
        for x in self.members:
            prof[x.bit_count()] += 1
        return prof

    def minimal_elements(self) -> frozenset[int]:
        # For convex Z an element is minimal iff no down-cover lies in Z.
        out = []
        for x in self.members:
            if not any(x ^ (1 << i) in self.members
                       for i in range(self.lattice.n) if (x >> i) & 1):
                out.append(x)
        return frozenset(out)


def random_convex_subposet(
    L: BooleanLattice,
    rng: random.Random,
    max_seed_size: int = 4,
    levels: tuple[int, int] | None = None,
) -> ConvexSubposet:
    """Random convex subset: convex closure of a few random elements drawn
    from a random (or given) level window."""
    if levels is None:
        a = rng.randint(0, L.n)
        b = rng.randint(a, L.n)
    else:
        a, b = levels
    pool = [x for x in L.elements() if a <= x.bit_count() <= b]
    if not pool:
        return ConvexSubposet(L, frozenset())
    k = rng.randint(0, min(max_seed_size, len(pool)))
    seeds = rng.sample(pool, k)
    return ConvexSubposet(L, convex_closure(L, seeds))


def coordinate_matching(L: BooleanLattice, i: int, weight: int) -> MatchingPairs:
    """Pairs {x, x with coordinate i flipped on} over masks x of the given
    weight with coordinate i off.  Always an induced matching in the
    comparability graph: a containment between members of distinct pairs
    would force the two lower masks equal.
    """
    if not 1 <= i <= L.n:
        raise InvalidParameterError(f"coordinate {i} outside 1..{L.n}")
    if not 0 <= weight < L.n:
        raise InvalidParameterError(f"weight {weight} outside 0..{L.n - 1}")
    bit = 1 << (i - 1)
    pairs = [
        (x, x | bit)
        for x in L.elements()
        if not x & bit and x.bit_count() == weight
    ]
    return MatchingPairs(pairs)


def level_matching(L: BooleanLattice, i: int) -> MatchingPairs:
    """Middle-level coordinate matching for odd n: pairs {x, x^i} over
    masks with coordinate i off and weight (n-1)/2; C(n-1,(n-1)/2) pairs.
    """
    if L.n % 2 == 0:
        raise InvalidParameterError("level_matching needs odd ground-set size")
    return coordinate_matching(L, i, (L.n - 1) // 2)


def induced_comparability(
    L: BooleanLattice, members: Iterable[int]
) -> tuple[BitGraph, tuple[int, ...]]:
    """Comparability graph restricted to ``members``.

    Returns the graph and the vertex -> mask translation (labels carry the
    same masks).
    """
    order = tuple(sorted(frozenset(members)))
    for x in order:
        L._check_element(x)
    rows = [0] * len(order)
    for a, x in enumerate(order):
        for b in range(a + 1, len(order)):
            z = order[b]
            if x & z == x or x & z == z:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return BitGraph(rows, labels=order), order


# ---------------------------------------------------------------------------
# Element-set file format: header "poset n=<n>", one lowercase-hex mask per
# line, '#' comment lines permitted.


def write_element_set(dest: "str | IO[str]", L: BooleanLattice, members: Iterable[int]) -> None:
    own = isinstance(dest, str)
    f = open(dest, "w") if own else dest
    try:
        f.write(f"poset n={L.n}\n")
        for x in sorted(frozenset(members)):
            f.write(f"{x:x}\n")
    finally:
        if own:
            f.close()


def read_element_set(src: "str | IO[str]") -> tuple[BooleanLattice, frozenset[int]]:
    own = isinstance(src, str)
    f = open(src) if own else src
    try:
        lattice = None
        members = set()
        for raw in f:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if lattice is None:
                if not line.startswith("poset n="):
                    raise InvalidParameterError(f"bad header: {line!r}")
                lattice = BooleanLattice(int(line[len("poset n="):]))
                continue
            x = int(line, 16)
            lattice._check_element(x)
            members.add(x)
        if lattice is None:
            raise InvalidParameterError("missing 'poset n=<n>' header")
        return lattice, frozenset(members)
    finally:
        if own:
            f.close()
