"""Exact enumeration of maximal independent sets and maximal antichains.

The enumerator runs pivoted maximal-clique search on the complement graph,
with complement rows derived lazily from the original adjacency, so the
dense complement of a sparse graph is never materialized up front.  Counts
are Python ints, hence arbitrary precision.  Budgets (node count, wall
clock) abort with a distinguishable outcome and never yield a wrong count.
"""

from __future__ import annotations

import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import BudgetExceeded, CapacityError
from .graphs import BitGraph, VertexSet, comparability_graph
from .posets import ConvexSubposet

NAIVE_VERTEX_CAP = 24
_NAIVE_BLOCK = 1 << 20


@dataclass(frozen=True)
class CountResult:
    """Exact count plus enumeration statistics."""

    count: int
    nodes_visited: int
    elapsed_s: float

    def to_json_dict(self) -> dict:
        return {
            "count": str(self.count),
            "nodes": self.nodes_visited,
            "elapsed_ms": int(round(self.elapsed_s * 1000)),
        }


@dataclass(frozen=True)
class EnumerationConfig:
    """Budgets and parallelism knobs for the enumerators."""

    max_nodes: Optional[int] = None
    workers: int = 1
    emit: bool = True
    max_seconds: Optional[float] = None


class _Abort(Exception):
    pass


class _Engine:
    """Pivoted clique enumeration over the implicit complement adjacency.

    With several workers the first two levels of the search tree are
    expanded into independent subtree tasks run on a thread pool; the exact
    integer partial counts are summed, so the result does not depend on the
    worker count.
    """

    _SPLIT_DEPTH = 2

    def __init__(self, G: BitGraph, cfg: EnumerationConfig,
                 visitor: Optional[Callable[[VertexSet], None]]):
        self.n = G.n
        self.rows = G.rows
        self.full = G.full_mask
        self.cfg = cfg
        self.visitor = visitor if (visitor is not None and cfg.emit) else None
        self._crows: list[Optional[int]] = [None] * G.n
        self.nodes = 0
        self.count = 0
        self._stop = False
        self._stop_reason = "nodes"
        self._lock = threading.Lock()
        self._t0 = time.monotonic()
        self._deadline = (
            self._t0 + cfg.max_seconds if cfg.max_seconds is not None else None
        )
        self._budgeted = cfg.max_nodes is not None or cfg.max_seconds is not None
        self._flush_every = 1 if cfg.workers <= 1 else 512

    def _cadj(self, v: int) -> int:
        r = self._crows[v]
        if r is None:
            r = self._crows[v] = self.full & ~(self.rows[v] | (1 << v))
        return r

    def _emit(self, bits: int) -> None:
        if self.visitor is not None:
            self.visitor(VertexSet.from_bits(self.n, bits))

    def _flush(self, local: list[int]) -> None:
        delta = local[0] - local[1]
        local[1] = local[0]
        with self._lock:
            self.nodes += delta
            if self.cfg.max_nodes is not None and self.nodes > self.cfg.max_nodes:
                self._stop = True
                self._stop_reason = "nodes"
            if self._deadline is not None and time.monotonic() > self._deadline:
                self._stop = True
                self._stop_reason = "time"
        if self._stop:
            raise _Abort()

    # Recursive search; returns the number of maximal sets under this node.
    def _extend(self, R: int, P: int, X: int, local: list[int]) -> int:
        local[0] += 1
        if self._stop:
            raise _Abort()
        if self._budgeted and local[0] - local[1] >= self._flush_every:
            self._flush(local)
        if P == 0 and X == 0:
            self._emit(R)
            return 1
        pivot_nbrs = 0
        best = -1
        m = P | X
        while m:
            low = m & -m
            m ^= low
            c = P & self._cadj(low.bit_length() - 1)
            cb = c.bit_count()
            if cb > best:
                best = cb
                pivot_nbrs = c
        total = 0
        cand = P & ~pivot_nbrs
        while cand:
            low = cand & -cand
            cand ^= low
            cv = self._cadj(low.bit_length() - 1)
            total += self._extend(R | low, P & cv, X & cv, local)
            P ^= low
            X |= low
        return total

    def _split(self, R: int, P: int, X: int, depth: int,
               tasks: list[tuple[int, int, int]], local: list[int]) -> None:
        if depth == 0:
            # Task boundary: the node is accounted for by the task itself.
            tasks.append((R, P, X))
            return
        local[0] += 1
        if self._budgeted:
            self._flush(local)
        if P == 0 and X == 0:
            self._emit(R)
            self.count += 1
            return
        pivot_nbrs = 0
        best = -1
        m = P | X
        while m:
            low = m & -m
            m ^= low
            c = P & self._cadj(low.bit_length() - 1)
            cb = c.bit_count()
            if cb > best:
                best = cb
                pivot_nbrs = c
        cand = P & ~pivot_nbrs
        while cand:
            low = cand & -cand
            cand ^= low
            cv = self._cadj(low.bit_length() - 1)
            self._split(R | low, P & cv, X & cv, depth - 1, tasks, local)
            P ^= low
            X |= low

    def _run_task(self, task: tuple[int, int, int]) -> int:
        local = [0, 0]
        try:
            return self._extend(task[0], task[1], task[2], local)
        finally:
            delta = local[0] - local[1]
            with self._lock:
                self.nodes += delta

    def run(self) -> CountResult:
        limit = sys.getrecursionlimit()
        if limit < self.n + 128:
            sys.setrecursionlimit(self.n + 128)
        try:
            if self.cfg.workers <= 1:
                local = [0, 0]
                try:
                    self.count = self._extend(0, self.full, 0, local)
                finally:
                    self.nodes += local[0] - local[1]
            else:
                tasks: list[tuple[int, int, int]] = []
                split_local = [0, 0]
                try:
                    self._split(0, self.full, 0, self._SPLIT_DEPTH, tasks, split_local)
                finally:
                    if not self._budgeted:
                        self.nodes += split_local[0] - split_local[1]
                with ThreadPoolExecutor(max_workers=self.cfg.workers) as pool:
                    for got in pool.map(self._run_task, tasks):
                        self.count += got
            if self.cfg.max_nodes is not None and self.nodes > self.cfg.max_nodes:
                self._stop_reason = "nodes"
                raise _Abort()
        except _Abort:
            raise BudgetExceeded(
                self._stop_reason,
                self.nodes,
                time.monotonic() - self._t0,
            ) from None
        finally:
            sys.setrecursionlimit(limit)
        return CountResult(self.count, self.nodes, time.monotonic() - self._t0)


def enumerate_mis(
    G: BitGraph,
    cfg: EnumerationConfig | None = None,
    visitor: Optional[Callable[[VertexSet], None]] = None,
) -> CountResult:
    """Visit every maximal independent set of G exactly once.

    The 0-vertex graph yields the empty set once.  With several workers the
    visitor may be called from multiple threads in unspecified order; each
    set is still delivered exactly once.  Raises BudgetExceeded (with
    partial statistics, no count) when a budget runs out.
    """
    cfg = cfg or EnumerationConfig()
    return _Engine(G, cfg, visitor).run()


def count_mis(G: BitGraph, cfg: EnumerationConfig | None = None) -> CountResult:
    """Count maximal independent sets without materializing them."""
    cfg = cfg or EnumerationConfig(emit=False)
    if cfg.emit:
        cfg = EnumerationConfig(cfg.max_nodes, cfg.workers, False, cfg.max_seconds)
    return _Engine(G, cfg, None).run()


def count_mis_naive(G: BitGraph) -> CountResult:
    """Oracle counter: test all 2^n subsets against the definition.

    Vectorized scan of every subset (independence for members, domination
    for non-members); independent of the clique-search path.  Capped at 24
    vertices.
    """
    if G.n > NAIVE_VERTEX_CAP:
        raise CapacityError(f"naive counter capped at {NAIVE_VERTEX_CAP} vertices")
    t0 = time.monotonic()
    n = G.n
    total = 0
    size = 1 << n
    for start in range(0, size, _NAIVE_BLOCK):
        stop = min(start + _NAIVE_BLOCK, size)
        masks = np.arange(start, stop, dtype=np.int64)
        ok = np.ones(stop - start, dtype=bool)
        for v in range(n):
            in_set = (masks >> v) & 1 == 1
            hit = (masks & G.rows[v]) != 0
            np.logical_and(ok, np.where(in_set, ~hit, hit), out=ok)
        total += int(ok.sum())
    return CountResult(total, size, time.monotonic() - t0)


def count_maximal_antichains(
    n: int, cfg: EnumerationConfig | None = None
) -> CountResult:
    """Number of maximal antichains of the Boolean lattice on n coordinates,
    counted as maximal independent sets of its comparability graph."""
    return count_mis(comparability_graph(n), cfg)


# ---------------------------------------------------------------------------
# Antichain upper-bound recursion on convex subposets.


def ma_bound_convex(Z: ConvexSubposet) -> int:
    """Upper bound on the number of maximal antichains of a convex Z.

    While Z contains a 3-element chain, branch at the numerically smallest
    minimal x lying two or more levels below some member: add the bounds
    for Z minus {x} and for Z minus ({x} and everything above x).  A
    3-chain-free convex Z has a bipartite comparability graph (minimal
    elements versus the rest), giving the base value 2^min(|A|,|B|).  The
    result dominates the exact count and satisfies result^2 <= 2^|Z|.
    """
    L = Z.lattice
    n = L.n
    memo: dict[frozenset[int], int] = {}

    def up_set(x: int, members: frozenset[int]) -> frozenset[int]:
        return frozenset(y for y in members if y != x and y & x == x)

    def has_gap2_above(x: int, members: frozenset[int]) -> bool:
        # Convexity makes "some member >= 2 levels above x" equivalent to
        # "some two-coordinate extension of x is a member".
        free = [i for i in range(n) if not (x >> i) & 1]
        for a in range(len(free)):
            for b in range(a + 1, len(free)):
                if x | (1 << free[a]) | (1 << free[b]) in members:
                    return True
        return False

    def minimals(members: frozenset[int]) -> list[int]:
        out = []
        for x in members:
            if not any(x ^ (1 << i) in members for i in range(n) if (x >> i) & 1):
                out.append(x)
        return out

    def bound(members: frozenset[int]) -> int:
        if not members:
            return 1
        got = memo.get(members)
        if got is not None:
            return got
        mins = minimals(members)
        eligible = sorted(x for x in mins if has_gap2_above(x, members))
        if not eligible:
            a = len(mins)
            val = 1 << min(a, len(members) - a)
        else:
            x = eligible[0]
            val = bound(members - {x}) + bound(members - {x} - up_set(x, members))
        memo[members] = val
        return val

    limit = sys.getrecursionlimit()
    if limit < len(Z.members) + 128:
        sys.setrecursionlimit(len(Z.members) + 128)
    try:
        result = bound(Z.members)
    finally:
        sys.setrecursionlimit(limit)
    assert result * result <= 1 << len(Z.members)
    return result


def count_maximal_antichains_of(
    Z: ConvexSubposet, cfg: EnumerationConfig | None = None
) -> CountResult:
    """Exact number of maximal antichains of a convex subposet, via the
    induced comparability graph."""
    from .posets import induced_comparability

    G, _ = induced_comparability(Z.lattice, Z.members)
    return count_mis(G, cfg)
