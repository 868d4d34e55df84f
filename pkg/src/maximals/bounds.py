"""Closed-form count bounds, entropy utilities, and construction checks.

Everything here evaluates or verifies an inequality: binary entropy and the
binomial-tail estimate, the subadditivity check for joint entropies over a
covering family of coordinate sets, the named log2-scale count bounds for
antichains and maximal independent sets, the induced-matching lower-bound
construction (each transversal of the matching extends to a distinct
maximal antichain), and the sweep that tests the extremal-count conjecture
for d-regular graphs against exact counts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from .enumeration import CountResult, EnumerationConfig, count_mis
from .errors import InvalidParameterError, PreconditionViolation, VerificationFailure
from .graphs import BitGraph, MatchingPairs, hypercube, h_n_graph, random_regular
from .posets import BooleanLattice, coordinate_matching, level_matching


def h2(p: float) -> float:
    """Binary entropy -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0."""
    if not 0 <= p <= 1:
        raise InvalidParameterError(f"entropy argument {p} outside [0, 1]")
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def log2_big(x: int) -> float:
    """log2 of a positive big integer, accurate to well below 1e-9."""
    if x <= 0:
        raise InvalidParameterError("log2 needs a positive integer")
    bl = x.bit_length()
    if bl <= 53:
        return math.log2(x)
    shift = bl - 53
    return math.log2(x >> shift) + shift


def binomial_tail_check(n: int, t: int) -> tuple[int, float]:
    """Exact partial binomial sum against its entropy bound.

    Returns (sum_{j<t} C(n,j), 2^(H(t/n) n)) and asserts the first does not
    exceed the second; defined for t <= n/2.
    """
    if n < 0 or t < 0 or 2 * t > n:
        raise PreconditionViolation(f"need 0 <= t <= n/2, got n={n}, t={t}")
    exact = sum(comb(n, j) for j in range(t))
    bound = 2.0 ** (h2(t / n) * n) if n else 1.0
    if exact > bound:
        raise VerificationFailure(
            f"binomial tail {exact} exceeds 2^(H({t}/{n}) {n}) = {bound}"
        )
    return exact, bound


# ---------------------------------------------------------------------------
# Entropy subadditivity over covering families


@dataclass(frozen=True)
class ShearerInstance:
    """A joint pmf table with a covering family of coordinate subsets.

    Every coordinate must appear in at least ``m`` members of the cover;
    the pmf must sum to 1 within 1e-12.
    """

    sizes: tuple[int, ...]
    pmf: np.ndarray
    cover: tuple[tuple[int, ...], ...]
    m: int

    def __post_init__(self):
        pmf = np.asarray(self.pmf, dtype=float)
        object.__setattr__(self, "pmf", pmf)
        object.__setattr__(self, "sizes", tuple(self.sizes))
        object.__setattr__(
            self, "cover", tuple(tuple(a) for a in self.cover)
        )
        if pmf.shape != self.sizes:
            raise InvalidParameterError(
                f"pmf shape {pmf.shape} != alphabet sizes {self.sizes}"
            )
        if (pmf < 0).any():
            raise InvalidParameterError("pmf has negative entries")
        if abs(float(pmf.sum()) - 1.0) > 1e-12:
            raise InvalidParameterError("pmf does not sum to 1 within 1e-12")
        if self.m < 1:
            raise InvalidParameterError("multiplicity m must be >= 1")
        k = len(self.sizes)
        counts = [0] * k
        for block in self.cover:
            for i in block:
                if not 0 <= i < k:
                    raise InvalidParameterError(f"cover coordinate {i} out of range")
                counts[i] += 1
        lacking = [i for i in range(k) if counts[i] < self.m]
        if lacking:
            raise InvalidParameterError(
                f"coordinates {lacking} appear in fewer than m={self.m} cover members"
            )


def _entropy_bits(p: np.ndarray) -> float:
    flat = p.reshape(-1)
    nz = flat[flat > 0]
    return float(-(nz * np.log2(nz)).sum())


def shearer_check(inst: ShearerInstance) -> tuple[float, float, float]:
    """Joint entropy versus the scaled sum of cover-marginal entropies.

    Returns (lhs, rhs, slack = rhs - lhs); slack below -1e-9 is an error,
    since H(X) <= (1/m) * sum over the cover of H(X restricted) whenever
    every coordinate lies in at least m members.
    """
    lhs = _entropy_bits(inst.pmf)
    k = len(inst.sizes)
    rhs = 0.0
    for block in inst.cover:
        drop = tuple(i for i in range(k) if i not in block)
        marg = inst.pmf.sum(axis=drop) if drop else inst.pmf
        rhs += _entropy_bits(np.asarray(marg))
    rhs /= inst.m
    slack = rhs - lhs
    if slack < -1e-9:
        raise VerificationFailure(f"entropy subadditivity violated: slack={slack}")
    return lhs, rhs, slack


# ---------------------------------------------------------------------------
# Named bounds (all values on the log2 scale)


@dataclass(frozen=True)
class BoundReport:
    name: str
    params: dict
    log2_value: float
    exactness: str  # exact | main-term | conjectured

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "params": dict(sorted(self.params.items())),
            "log2_value": self.log2_value,
            "exactness": self.exactness,
        }


def _need(params: dict, *names: str) -> list:
    got = []
    for name in names:
        if params.get(name) is None:
            raise InvalidParameterError(f"bound needs parameter {name!r}")
        got.append(params[name])
    return got


_EXACTNESS = {
    "lbs-ma": "exact",
    "lbs-mis-bilayer": "exact",
    "lbs-mis-cube": "exact",
    "kleitman": "main-term",
    "dfr-cube": "main-term",
    "dfr-bilayer": "main-term",
    "thm12a-tf": "main-term",
    "thm12a-general": "main-term",
    "thm12b": "main-term",
    "prop21a": "exact",
    "moon-moser": "exact",
    "hujter-tuza": "exact",
    "conj51a": "conjectured",
    "conj51b": "conjectured",
    "conj51c": "conjectured",
    "conj52": "conjectured",
    "zhao-total": "exact",
}

BOUND_NAMES = tuple(sorted(_EXACTNESS))


def evaluate_bound(
    name: str,
    *,
    n: Optional[int] = None,
    k: Optional[int] = None,
    d: Optional[int] = None,
    r: Optional[int] = None,
    s: Optional[int] = None,
    a: Optional[int] = None,
    b: Optional[int] = None,
) -> BoundReport:
    """Evaluate a named count bound on the log2 scale.

    Lower bounds: "lbs-ma" C(n-1, floor(n/2)); "lbs-mis-bilayer" C(n-1, k);
    "lbs-mis-cube" 2^(n-2).  Upper bounds: "kleitman" C(n, floor(n/2));
    "dfr-cube" 0.78 * 2^(n-1); "dfr-bilayer" 1.3563 * C(n-1, k);
    "thm12a-tf" n/4; "thm12a-general" n log2(3)/6; "thm12b" r s n/(r+s)^2;
    "prop21a" min(a, b); "moon-moser" (n/3) log2(3); "hujter-tuza" n/2;
    "zhao-total" (n/(2d)) log2(2^(d+1) - 1).  Conjectured values:
    "conj51a/b/c" (the count conjectures, with the even-n factor 2 in (a))
    and "conj52" n/(2(d-2)) + (n/6) log2(3).
    """
    params = {"n": n, "k": k, "d": d, "r": r, "s": s, "a": a, "b": b}
    if name not in _EXACTNESS:
        raise InvalidParameterError(f"unknown bound name {name!r}")
    log3 = math.log2(3)
    if name == "lbs-ma":
        (n,) = _need(params, "n")
        value = float(comb(n - 1, n // 2))
    elif name == "lbs-mis-bilayer":
        n, k = _need(params, "n", "k")
        value = float(comb(n - 1, k))
    elif name == "lbs-mis-cube":
        (n,) = _need(params, "n")
        value = float(2 ** (n - 2))
    elif name == "kleitman":
        (n,) = _need(params, "n")
        value = float(comb(n, n // 2))
    elif name == "dfr-cube":
        (n,) = _need(params, "n")
        value = 0.78 * 2 ** (n - 1)
    elif name == "dfr-bilayer":
        n, k = _need(params, "n", "k")
        value = 1.3563 * comb(n - 1, k)
    elif name == "thm12a-tf":
        (n,) = _need(params, "n")
        value = n / 4
    elif name == "thm12a-general":
        (n,) = _need(params, "n")
        value = n * log3 / 6
    elif name == "thm12b":
        n, r, s = _need(params, "n", "r", "s")
        value = r * s * n / (r + s) ** 2
    elif name == "prop21a":
        a, b = _need(params, "a", "b")
        value = float(min(a, b))
    elif name == "moon-moser":
        (n,) = _need(params, "n")
        value = n * log3 / 3
    elif name == "hujter-tuza":
        (n,) = _need(params, "n")
        value = n / 2
    elif name == "conj51a":
        (n,) = _need(params, "n")
        value = math.log2(n) + comb(n - 1, (n - 1) // 2) + (1 if n % 2 == 0 else 0)
    elif name == "conj51b":
        (n,) = _need(params, "n")
        value = 1 + math.log2(n) + 2 ** (n - 2)
    elif name == "conj51c":
        n, k = _need(params, "n", "k")
        value = math.log2(n) + comb(n - 1, k)
    elif name == "conj52":
        n, d = _need(params, "n", "d")
        value = n / (2 * (d - 2)) + n * log3 / 6
    else:  # zhao-total
        n, d = _need(params, "n", "d")
        value = n / (2 * d) * math.log2(2 ** (d + 1) - 1)
    kept = {key: val for key, val in params.items() if val is not None}
    return BoundReport(name, kept, float(value), _EXACTNESS[name])


# ---------------------------------------------------------------------------
# Induced-matching lower-bound construction


def _incomparable(x: int, y: int) -> bool:
    meet = x & y
    return meet != x and meet != y


def greedy_antichain_completion(L: BooleanLattice, seed: Iterable[int]) -> frozenset[int]:
    """Extend an antichain to a maximal one, adding smallest masks first."""
    chosen = list(seed)
    for x in chosen:
        L._check_element(x)
    for m in L.elements():
        if all(_incomparable(m, c) for c in chosen):
            chosen.append(m)
    return frozenset(chosen)


def matching_lower_bound(L: BooleanLattice, i: int) -> tuple[int, int]:
    """Count distinct greedy completions of the middle-level matching.

    Builds the coordinate matching at level (n-1)/2, completes each of the
    2^|M| transversals (one element per pair) to a maximal antichain by the
    deterministic greedy rule, and returns (distinct completions, 2^|M|).
    A completion meets each pair in exactly its chosen element, so the two
    numbers must be equal; disagreement raises VerificationFailure.
    """
    M = level_matching(L, i)
    pairs = M.pairs
    floor = 1 << len(pairs)
    seen = set()
    for pick in range(floor):
        seed = [pairs[j][(pick >> j) & 1] for j in range(len(pairs))]
        seen.add(greedy_antichain_completion(L, seed))
    distinct = len(seen)
    if distinct != floor:
        raise VerificationFailure(
            f"matching completions collide: {distinct} distinct of {floor}"
        )
    return distinct, floor


def hypercube_parity_matching(n: int) -> MatchingPairs:
    """Induced matching of size 2^(n-2) in the n-cube: pairs {x, x + e_1}
    over even-weight masks with the first coordinate off."""
    if n < 2:
        raise InvalidParameterError("needs n >= 2")
    pairs = [
        (x, x | 1)
        for x in range(1 << n)
        if not x & 1 and x.bit_count() % 2 == 0
    ]
    return MatchingPairs(pairs)


def lattice_middle_matching(L: BooleanLattice, i: int) -> MatchingPairs:
    """Coordinate matching of size C(n-1, floor(n/2)) in the comparability
    graph, for any n (weight floor(n/2) generalizes the odd case)."""
    return coordinate_matching(L, i, L.n // 2)


# ---------------------------------------------------------------------------
# Equality families and the extremal-count sweep


def h_family_mis_count(d: int, copies: int) -> int:
    """Exact maximal-independent-set count 2^(v/(2(d-2))) * 3^(v/6) of the
    d-regular triangle construction on v = 2(d-2)*copies vertices."""
    if d % 3 != 2 or d < 5:
        raise InvalidParameterError(f"need d >= 5 with d = 2 (mod 3), got {d}")
    v = 2 * (d - 2) * copies
    assert v % (2 * (d - 2)) == 0 and v % 6 == 0
    return 2 ** (v // (2 * (d - 2))) * 3 ** (v // 6)


@dataclass(frozen=True)
class SweepRow:
    name: str
    n: int
    d: int
    seed: Optional[int]
    count: int
    bound_log2: float
    ratio: float
    violation: bool

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "d": self.d,
            "seed": self.seed,
            "count": str(self.count),
            "bound_log2": self.bound_log2,
            "ratio": self.ratio,
            "violation": self.violation,
        }


@dataclass(frozen=True)
class SweepReport:
    d: int
    rows: tuple[SweepRow, ...]
    max_ratio: float
    violations: tuple[SweepRow, ...]
    witnesses: tuple[str, ...]  # graph-file text for each violating row

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "rows": [row.to_json_dict() for row in self.rows],
            "max_ratio": self.max_ratio,
            "violations": [row.to_json_dict() for row in self.violations],
            "witnesses": list(self.witnesses),
        }


MAX_SWEEP_VERTICES = 64
_SWEEP_FAMILY_CUBE_CAP = 32  # exact counting stays cheap up to this size


def conjecture52_sweep(
    d: int,
    n_max: int,
    samples: int,
    seed: int,
    cfg: EnumerationConfig | None = None,
) -> SweepReport:
    """Test log2 mis(G) <= n/(2(d-2)) + (n/6) log2 3 on random d-regular
    graphs plus the deterministic family members.

    A violation is reported as a finding (row + serialized witness graph),
    never raised.  Deterministic for a fixed seed.
    """
    import io

    from .graphs import write_graph

    if d < 3:
        raise InvalidParameterError("sweep needs d >= 3")
    feasible = [
        n for n in range(d + 1, min(n_max, MAX_SWEEP_VERTICES) + 1)
        if (n * d) % 2 == 0
    ]
    if not feasible and samples > 0:
        raise InvalidParameterError(f"no feasible n in ({d}, {n_max}]")
    rng = random.Random(seed)
    jobs: list[tuple[str, int, Optional[int], BitGraph]] = []
    for _ in range(samples):
        n = rng.choice(feasible)
        sub = rng.randrange(1 << 31)
        jobs.append(("random-regular", n, sub, random_regular(n, d, sub)))
    if (1 << d) <= _SWEEP_FAMILY_CUBE_CAP:
        jobs.append(("hypercube", 1 << d, None, hypercube(d)))
    if d % 3 == 2 and d >= 5 and 2 * (d - 2) <= MAX_SWEEP_VERTICES:
        jobs.append(("h-family", 2 * (d - 2), None, h_n_graph(d, 1)))
    rows = []
    violations = []
    witnesses = []
    for name, n, sub, G in jobs:
        res = count_mis(G, cfg)
        bound = evaluate_bound("conj52", n=n, d=d).log2_value
        got = log2_big(res.count) if res.count > 0 else 0.0
        ratio = got / bound if bound > 0 else 0.0
        violated = got > bound + 1e-12
        row = SweepRow(name, n, d, sub, res.count, bound, ratio, violated)
        rows.append(row)
        if violated:
            violations.append(row)
            buf = io.StringIO()
            write_graph(buf, G)
            witnesses.append(buf.getvalue())
    max_ratio = max((row.ratio for row in rows), default=0.0)
    return SweepReport(d, tuple(rows), max_ratio, tuple(violations), tuple(witnesses))
