"""Executable certificate codecs for maximal independent sets and antichains.

Three encoders compress a maximal independent set (or maximal antichain)
into a short witness plus a residual set living in a structurally tame
region Z, and the matching decoders replay the construction, validate every
structural invariant, and reconstruct the original set:

* ``sap_*``       peeling codec for graphs: repeatedly remove a solution
                  vertex with at least b surviving neighbors; the survivors
                  of degree < b form Z.
* ``entropy_*``   sampling codec for graphs: a sampled kernel I0 covers the
                  high-solution-degree region, a sparse trace J handles the
                  high-degree remainder, Z is what is left.
* ``antichain_*`` peeling codec for the Boolean lattice, with upward cover
                  degrees carving a convex Z out of the survivors.

``verify_claim1`` checks the level-profile inequalities that force a convex,
low-up-degree Z to occupy barely more than one middle binomial worth of
elements, and ``certificate_budget`` evaluates the bit-cost main terms of
each codec.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import (
    EncoderFailure,
    InvalidCertificate,
    InvalidParameterError,
    PreconditionViolation,
)
from .graphs import (
    BitGraph,
    VertexSet,
    comparability_graph,
    is_maximal_independent,
    iter_bits,
    _as_bits,
)
from .posets import BooleanLattice, ConvexSubposet, gamma_plus, is_convex

#: Thresholds this close to an integer are snapped onto it, so comparisons
#: with integer degrees stay unambiguous under float rounding.
THRESHOLD_SNAP = 1e-9


def snap_threshold(x: float) -> float:
    """Resolve float fuzz around integer thresholds deterministically."""
    r = round(x)
    if x != r and abs(x - r) < THRESHOLD_SNAP:
        return float(r)
    return float(x)


def default_antichain_b(n: int) -> float:
    """Canonical lattice peel threshold n^(3/4) * sqrt(log2 n)."""
    if n < 2:
        raise InvalidParameterError("default threshold needs n >= 2")
    return snap_threshold(n ** 0.75 * math.sqrt(math.log2(n)))


# ---------------------------------------------------------------------------
# Certificate records


@dataclass(frozen=True)
class MisCertificate:
    """Peeling certificate: threshold, peel order, residual I-in-Z."""

    b: float
    peel: tuple[int, ...]
    residual: VertexSet

    def to_json_dict(self) -> dict:
        return {
            "v": 1,
            "kind": "sap",
            "params": {"b": self.b, "n": self.residual.capacity},
            "peel": list(self.peel),
            "sets": {"residual": sorted(self.residual)},
        }


@dataclass(frozen=True)
class EntropyCertificate:
    """Sampling certificate: kernel I0, leftover D, trace J, residual."""

    t: float
    i0: VertexSet
    d_set: VertexSet
    j_set: VertexSet
    residual: VertexSet

    def to_json_dict(self) -> dict:
        return {
            "v": 1,
            "kind": "entropy",
            "params": {"t": self.t, "n": self.i0.capacity},
            "peel": [],
            "sets": {
                "i0": sorted(self.i0),
                "d": sorted(self.d_set),
                "j": sorted(self.j_set),
                "residual": sorted(self.residual),
            },
        }


@dataclass(frozen=True)
class AntichainCertificate:
    """Lattice peeling certificate over element masks."""

    n: int
    b: float
    peel: tuple[int, ...]
    residual: frozenset[int]

    def to_json_dict(self) -> dict:
        return {
            "v": 1,
            "kind": "antichain",
            "params": {"b": self.b, "n": self.n},
            "peel": list(self.peel),
            "sets": {"residual": sorted(self.residual)},
        }


def certificate_from_json_dict(d: dict):
    """Rebuild any certificate from its JSON form."""
    try:
        kind = d["kind"]
        params = d["params"]
        n = int(params["n"])
        peel = [int(x) for x in d["peel"]]
        sets = d["sets"]
        residual = [int(x) for x in sets["residual"]]
        if kind == "sap":
            return MisCertificate(float(params["b"]), tuple(peel),
                                  VertexSet(n, residual))
        if kind == "entropy":
            return EntropyCertificate(
                float(params["t"]),
                VertexSet(n, (int(x) for x in sets["i0"])),
                VertexSet(n, (int(x) for x in sets["d"])),
                VertexSet(n, (int(x) for x in sets["j"])),
                VertexSet(n, residual),
            )
        if kind == "antichain":
            return AntichainCertificate(n, float(params["b"]), tuple(peel),
                                        frozenset(residual))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidCertificate("malformed-json", str(exc)) from exc
    raise InvalidCertificate("unknown-kind", str(d.get("kind")))


# ---------------------------------------------------------------------------
# Shared helpers


def _require_mis(G: BitGraph, bits: int) -> None:
    if not is_maximal_independent(G, VertexSet.from_bits(G.n, bits)):
        raise PreconditionViolation("input set is not a maximal independent set")


def _low_degree_subset(G: BitGraph, Y: int, b: float) -> int:
    Z = 0
    m = Y
    while m:
        low = m & -m
        m ^= low
        if (G.rows[low.bit_length() - 1] & Y).bit_count() < b:
            Z |= low
    return Z


def _first_eligible(G: BitGraph, candidates: int, X: int, b: float) -> int:
    m = candidates
    while m:
        low = m & -m
        m ^= low
        v = low.bit_length() - 1
        if (G.rows[v] & X).bit_count() >= b:
            return v
    return -1


def _check_residual_in_zone(G: BitGraph, S: int, Z: int) -> None:
    if S & ~Z:
        stray = next(iter_bits(S & ~Z))
        raise InvalidCertificate(
            "residual-outside-z", f"vertex {stray} lies outside the replayed Z"
        )
    m = S
    while m:
        low = m & -m
        m ^= low
        if G.rows[low.bit_length() - 1] & S:
            raise InvalidCertificate(
                "residual-not-independent",
                f"vertex {low.bit_length() - 1} has a residual neighbor",
            )
    m = Z & ~S
    while m:
        low = m & -m
        m ^= low
        if not G.rows[low.bit_length() - 1] & S:
            raise InvalidCertificate(
                "residual-not-maximal",
                f"vertex {low.bit_length() - 1} in Z could join the residual",
            )


# ---------------------------------------------------------------------------
# Peeling codec for graphs


def sap_encode(G: BitGraph, I: "VertexSet | Iterable[int]", b: float) -> MisCertificate:
    """Peel a maximal independent set down to a low-degree residual zone.

    Repeatedly removes the lowest-index solution vertex that still has at
    least b surviving neighbors, together with its neighborhood.  Among the
    survivors Y, the zone Z keeps the vertices of Y-degree < b; the
    certificate stores the peel order and I intersected with Z.
    """
    if not b > 0:
        raise InvalidParameterError("peel threshold b must be positive")
    b = snap_threshold(b)
    bits_i = _as_bits(G.n, I)
    _require_mis(G, bits_i)
    X = G.full_mask
    peel: list[int] = []
    while True:
        v = _first_eligible(G, bits_i & X, X, b)
        if v < 0:
            break
        peel.append(v)
        X &= ~((1 << v) | G.rows[v])
    Z = _low_degree_subset(G, X, b)
    S = bits_i & Z
    q = len(peel)
    assert q == 0 or q * b < G.n, "peel length bound violated"
    return MisCertificate(b, tuple(peel), VertexSet.from_bits(G.n, S))


def sap_decode(G: BitGraph, cert: MisCertificate) -> VertexSet:
    """Replay a peeling certificate and reconstruct the encoded set.

    Raises InvalidCertificate naming the first failing check: peel entries
    must be available, above-threshold and in canonical (lowest-index)
    order; the residual must lie inside the replayed zone Z (which also
    bars it from peel neighborhoods) and be maximal independent there; the
    decoded set must be maximal independent in G.
    """
    n = G.n
    if not cert.b > 0:
        raise InvalidCertificate("invalid-params", "threshold b must be positive")
    b = snap_threshold(cert.b)
    if cert.residual.capacity != n:
        raise InvalidCertificate("invalid-params", "residual capacity mismatch")
    peel_bits = 0
    for x in cert.peel:
        if not 0 <= x < n:
            raise InvalidCertificate("invalid-params", f"peel vertex {x} out of range")
        if (peel_bits >> x) & 1:
            raise InvalidCertificate("peel-not-available", f"vertex {x} repeated")
        peel_bits |= 1 << x
    if len(cert.peel) > 0 and not len(cert.peel) * b < n:
        raise InvalidCertificate(
            "peel-too-long", f"{len(cert.peel)} peels exceed n/b"
        )
    claim = peel_bits | cert.residual.bits
    X = G.full_mask
    for x in cert.peel:
        if not (X >> x) & 1:
            raise InvalidCertificate(
                "peel-not-available", f"vertex {x} was already removed at its turn"
            )
        deg = (G.rows[x] & X).bit_count()
        if deg < b:
            raise InvalidCertificate(
                "peel-degree", f"vertex {x} has residual degree {deg} < b at its turn"
            )
        first = _first_eligible(G, claim & X, X, b)
        if first != x:
            raise InvalidCertificate(
                "peel-order", f"canonical peel vertex is {first}, certificate has {x}"
            )
        X &= ~((1 << x) | G.rows[x])
    Z = _low_degree_subset(G, X, b)
    _check_residual_in_zone(G, cert.residual.bits, Z)
    if not is_maximal_independent(G, VertexSet.from_bits(n, claim)):
        raise InvalidCertificate(
            "decoded-not-maximal", "peel plus residual is not maximal independent"
        )
    return VertexSet.from_bits(n, claim)


# ---------------------------------------------------------------------------
# Sampling codec for graphs


def _gamma(G: BitGraph, bits: int) -> int:
    out = bits
    m = bits
    while m:
        low = m & -m
        m ^= low
        out |= G.rows[low.bit_length() - 1]
    return out


def _degree_threshold(G: BitGraph, t: float) -> float:
    # High-degree cut used for Y: t^2 * log2(max degree); degree-free
    # graphs get 0 so everything counts as high (Z then stays empty).
    delta = G.max_degree
    return snap_threshold(t * t * math.log2(delta)) if delta >= 1 else 0.0


def entropy_encode(
    G: BitGraph, I: "VertexSet | Iterable[int]", t: float, seed: int
) -> EntropyCertificate:
    """Encode a maximal independent set via a sampled kernel.

    C is the set of vertices with at least t*ln(t) solution neighbors.  A
    uniformly sampled kernel I0 of ceil(|I|/t) solution vertices is redrawn
    (seeded, at most 200 times) until the uncovered part D of C has fewer
    than n/t vertices, with a greedy max-coverage fallback afterwards; a
    fallback that still misses the bound fails loudly.  The trace J is the
    solution part of the high-degree region of X, and the residual is the
    solution part of the final zone Z.
    """
    if t < 2:
        raise PreconditionViolation("sampling parameter t must be at least 2")
    bits_i = _as_bits(G.n, I)
    _require_mis(G, bits_i)
    n = G.n
    tln = snap_threshold(t * math.log(t))
    c_set = 0
    for v in range(n):
        if (G.rows[v] & bits_i).bit_count() >= tln:
            c_set |= 1 << v
    members = list(iter_bits(bits_i))
    size0 = math.ceil(len(members) / t)
    limit = n / t
    rng = random.Random(seed)
    i0_bits = None
    for _ in range(200):
        pick = rng.sample(members, size0) if members else []
        bits0 = 0
        for v in pick:
            bits0 |= 1 << v
        if (c_set & ~_gamma(G, bits0)).bit_count() < limit:
            i0_bits = bits0
            break
    if i0_bits is None:
        # Greedy max-coverage fallback over the solution vertices.
        bits0 = 0
        uncovered = c_set
        for _ in range(size0):
            best_v, best_gain = -1, -1
            for v in members:
                if (bits0 >> v) & 1:
                    continue
                gain = (uncovered & (G.rows[v] | (1 << v))).bit_count()
                if gain > best_gain:
                    best_v, best_gain = v, gain
            if best_v < 0:
                break
            bits0 |= 1 << best_v
            uncovered &= ~(G.rows[best_v] | (1 << best_v))
        if (c_set & ~_gamma(G, bits0)).bit_count() >= limit:
            raise EncoderFailure(
                "no sampled or greedy kernel covers enough of the dense region"
            )
        i0_bits = bits0
    gamma0 = _gamma(G, i0_bits)
    d_bits = c_set & ~gamma0
    X = G.full_mask & ~(c_set | gamma0)
    k = _degree_threshold(G, t)
    Y = 0
    m = X
    while m:
        low = m & -m
        m ^= low
        if (G.rows[low.bit_length() - 1] & X).bit_count() >= k:
            Y |= low
    J = bits_i & Y
    Z = X & ~(Y | _gamma(G, J))
    S = bits_i & Z
    return EntropyCertificate(
        float(t),
        VertexSet.from_bits(n, i0_bits),
        VertexSet.from_bits(n, d_bits),
        VertexSet.from_bits(n, J),
        VertexSet.from_bits(n, S),
    )


def entropy_decode(G: BitGraph, cert: EntropyCertificate) -> VertexSet:
    """Replay a sampling certificate and reconstruct the encoded set.

    Validation order: leftover size |D| < n/t, trace containment J in Y,
    the per-vertex trace sparsity |J * N_v| < t*ln(t) on X, residual inside
    and maximal within Z, kernel size, leftover consistency with the
    decoded set, and maximality of the decoded set.
    """
    n = G.n
    t = cert.t
    if t < 2:
        raise InvalidCertificate("invalid-params", "t must be at least 2")
    for fld in (cert.i0, cert.d_set, cert.j_set, cert.residual):
        if fld.capacity != n:
            raise InvalidCertificate("invalid-params", "capacity mismatch")
    tln = snap_threshold(t * math.log(t))
    if not cert.d_set.bits.bit_count() < n / t:
        raise InvalidCertificate(
            "d-set-too-large", f"|D| = {len(cert.d_set)} >= n/t = {n / t}"
        )
    gamma0 = _gamma(G, cert.i0.bits)
    X = G.full_mask & ~(cert.d_set.bits | gamma0)
    k = _degree_threshold(G, t)
    Y = 0
    m = X
    while m:
        low = m & -m
        m ^= low
        if (G.rows[low.bit_length() - 1] & X).bit_count() >= k:
            Y |= low
    if cert.j_set.bits & ~Y:
        stray = next(iter_bits(cert.j_set.bits & ~Y))
        raise InvalidCertificate("j-not-in-y", f"trace vertex {stray} not in Y")
    m = X
    while m:
        low = m & -m
        m ^= low
        v = low.bit_length() - 1
        if not (G.rows[v] & cert.j_set.bits).bit_count() < tln:
            raise InvalidCertificate(
                "trace-too-dense", f"|J * N_{v}| >= t*ln(t)"
            )
    Z = X & ~(Y | _gamma(G, cert.j_set.bits))
    _check_residual_in_zone(G, cert.residual.bits, Z)
    decoded = cert.i0.bits | cert.j_set.bits | cert.residual.bits
    if len(cert.i0) != math.ceil(decoded.bit_count() / t):
        raise InvalidCertificate(
            "i0-size-mismatch",
            f"kernel has {len(cert.i0)} vertices, expected "
            f"{math.ceil(decoded.bit_count() / t)}",
        )
    c_prime = 0
    for v in range(n):
        if (G.rows[v] & decoded).bit_count() >= tln:
            c_prime |= 1 << v
    if cert.d_set.bits != c_prime & ~gamma0:
        raise InvalidCertificate(
            "d-set-mismatch", "leftover set disagrees with the decoded set"
        )
    if not is_maximal_independent(G, VertexSet.from_bits(n, decoded)):
        raise InvalidCertificate(
            "decoded-not-maximal", "kernel+trace+residual is not maximal independent"
        )
    return VertexSet.from_bits(n, decoded)


# ---------------------------------------------------------------------------
# Peeling codec for the Boolean lattice


def _up_cover_degree(n: int, Y: int, y: int) -> int:
    d = 0
    for i in range(n):
        if not (y >> i) & 1 and (Y >> (y | (1 << i))) & 1:
            d += 1
    return d


def antichain_encode(
    L: BooleanLattice, A: Iterable[int], b: Optional[float] = None
) -> AntichainCertificate:
    """Peel a maximal antichain of the Boolean lattice.

    Peeling runs in comparability adjacency (lowest mask first among
    solution elements with at least b comparable survivors); the zone Z
    keeps the survivors of upward cover degree < b and is always convex.
    The default threshold is n^(3/4) * sqrt(log2 n).
    """
    n = L.n
    if b is None:
        b = default_antichain_b(n)
    if not b > 0:
        raise InvalidParameterError("peel threshold b must be positive")
    b = snap_threshold(b)
    G = comparability_graph(n)
    bits_a = _as_bits(G.n, A)
    if not is_maximal_independent(G, VertexSet.from_bits(G.n, bits_a)):
        raise PreconditionViolation("input set is not a maximal antichain")
    X = G.full_mask
    peel: list[int] = []
    while True:
        x = _first_eligible(G, bits_a & X, X, b)
        if x < 0:
            break
        peel.append(x)
        X &= ~((1 << x) | G.rows[x])
    Z = 0
    m = X
    while m:
        low = m & -m
        m ^= low
        y = low.bit_length() - 1
        if _up_cover_degree(n, X, y) < b:
            Z |= low
    S = bits_a & Z
    q = len(peel)
    assert q == 0 or q * b < G.n, "peel length bound violated"
    members = frozenset(iter_bits(Z))
    assert is_convex(L, members), "replayed zone must be convex"
    return AntichainCertificate(n, b, tuple(peel), frozenset(iter_bits(S)))


def antichain_decode(L: BooleanLattice, cert: AntichainCertificate) -> frozenset[int]:
    """Replay a lattice peeling certificate and reconstruct the antichain.

    Beyond the graph-codec checks (canonical peel order, degree at each
    turn, residual inside and maximal within Z), the replayed zone must be
    convex; a non-convex zone indicates replay corruption.
    """
    n = L.n
    if cert.n != n:
        raise InvalidCertificate("invalid-params", "lattice size mismatch")
    if not cert.b > 0:
        raise InvalidCertificate("invalid-params", "threshold b must be positive")
    b = snap_threshold(cert.b)
    G = comparability_graph(n)
    size = G.n
    peel_bits = 0
    for x in cert.peel:
        if not 0 <= x < size:
            raise InvalidCertificate("invalid-params", f"peel mask {x} out of range")
        if (peel_bits >> x) & 1:
            raise InvalidCertificate("peel-not-available", f"mask {x} repeated")
        peel_bits |= 1 << x
    residual_bits = 0
    for x in cert.residual:
        if not 0 <= x < size:
            raise InvalidCertificate("invalid-params", f"residual mask {x} out of range")
        residual_bits |= 1 << x
    claim = peel_bits | residual_bits
    X = G.full_mask
    for x in cert.peel:
        if not (X >> x) & 1:
            raise InvalidCertificate(
                "peel-not-available", f"mask {x} was already removed at its turn"
            )
        deg = (G.rows[x] & X).bit_count()
        if deg < b:
            raise InvalidCertificate(
                "peel-degree", f"mask {x} has {deg} comparable survivors < b"
            )
        first = _first_eligible(G, claim & X, X, b)
        if first != x:
            raise InvalidCertificate(
                "peel-order", f"canonical peel mask is {first}, certificate has {x}"
            )
        X &= ~((1 << x) | G.rows[x])
    # Completeness: peeling stops only when no solution element keeps b
    # comparable survivors.  (Cover degrees alone cannot certify this here,
    # unlike in the graph codec where both tests use the same degree.)
    leftover = _first_eligible(G, residual_bits & X, X, b)
    if leftover >= 0:
        raise InvalidCertificate(
            "peel-incomplete",
            f"mask {leftover} still has >= b comparable survivors",
        )
    Z = 0
    m = X
    while m:
        low = m & -m
        m ^= low
        y = low.bit_length() - 1
        if _up_cover_degree(n, X, y) < b:
            Z |= low
    z_members = frozenset(iter_bits(Z))
    if not is_convex(L, z_members):
        raise InvalidCertificate("z-not-convex", "replay corruption: zone not convex")
    _check_residual_in_zone(G, residual_bits, Z)
    if not is_maximal_independent(G, VertexSet.from_bits(size, claim)):
        raise InvalidCertificate(
            "decoded-not-maximal", "peel plus residual is not a maximal antichain"
        )
    return frozenset(iter_bits(claim))


# ---------------------------------------------------------------------------
# Level-profile verifier


@dataclass(frozen=True)
class Claim1Report:
    """Per-level shadow-growth inequalities and the size ratio they force.

    ``chain_ok[j]`` is the inequality at level ``window[0] + j``:
    f_{i+1} >= (l_{i+1}/l_i) * (f_i + (1-eps) z_i), evaluated in exact
    rational arithmetic.  ``ratio`` compares the in-window size of Z to the
    middle binomial; the bound (1-eps)^-1 only makes sense for eps < 1 and
    is otherwise reported as out of range.
    """

    n: int
    b: float
    window: tuple[int, int]
    epsilon: float
    z_profile: tuple[int, ...]
    f_profile: tuple[int, ...]
    chain_ok: tuple[bool, ...]
    all_ok: bool
    in_window: int
    outside_window: int
    ratio: float
    ratio_bound: Optional[float]
    ratio_ok: Optional[bool]
    epsilon_out_of_range: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "b": self.b,
            "window": list(self.window),
            "epsilon": self.epsilon,
            "z_profile": list(self.z_profile),
            "f_profile": list(self.f_profile),
            "chain_ok": list(self.chain_ok),
            "all_ok": self.all_ok,
            "in_window": self.in_window,
            "outside_window": self.outside_window,
            "ratio": self.ratio,
            "ratio_bound": self.ratio_bound,
            "ratio_ok": self.ratio_ok,
            "epsilon_out_of_range": self.epsilon_out_of_range,
        }


def claim1_window(n: int) -> tuple[int, int]:
    """Level window [ceil(0.4 n), floor(0.6 n)], rounded inward."""
    return (-((-2 * n) // 5), (3 * n) // 5)


def verify_claim1(L: BooleanLattice, Z: ConvexSubposet, b: float) -> Claim1Report:
    """Check the up-shadow growth inequalities for a convex low-degree Z.

    Precondition (checked): every member inside the level window has fewer
    than b upward covers in Z.  Members outside the window are reported,
    not checked.  Inequalities are evaluated with exact rationals; the size
    ratio is compared against (1-eps)^-1 with eps = 2.5 b / n.
    """
    if Z.lattice != L:
        raise InvalidParameterError("subposet belongs to a different lattice")
    if not b > 0:
        raise InvalidParameterError("degree threshold b must be positive")
    b = snap_threshold(b)
    n = L.n
    r, s = claim1_window(n)
    members = Z.members
    for x in members:
        if r <= x.bit_count() <= s:
            d = sum(1 for c in L.covers_up(x) if c in members)
            if not d < b:
                raise PreconditionViolation(
                    f"element {x:#x} has upward cover degree {d} >= b = {b}"
                )
    shadow = gamma_plus(L, members)
    z_prof = [0] * (n + 2)
    f_prof = [0] * (n + 2)
    for x in members:
        z_prof[x.bit_count()] += 1
    for x in shadow:
        f_prof[x.bit_count()] += 1
    eps = Fraction(5, 2) * Fraction(b) / n if n else Fraction(0)
    flags = []
    for i in range(r, min(s, n - 1) + 1):
        lhs = Fraction(f_prof[i + 1])
        ratio_levels = Fraction(L.level_size(i + 1), L.level_size(i))
        rhs = ratio_levels * (f_prof[i] + (1 - eps) * z_prof[i])
        flags.append(lhs >= rhs)
    in_window = sum(z_prof[i] for i in range(r, s + 1))
    outside = len(members) - in_window
    eps_out = eps >= 1
    m_mid = L.middle_binomial
    ratio_exact = Fraction(in_window, m_mid)
    if eps_out:
        ratio_bound = None
        ratio_ok = None
    else:
        bound = 1 / (1 - eps)
        ratio_bound = float(bound)
        ratio_ok = ratio_exact <= bound or abs(float(ratio_exact) - float(bound)) <= 1e-9
    return Claim1Report(
        n=n,
        b=b,
        window=(r, s),
        epsilon=float(eps),
        z_profile=tuple(z_prof[: n + 1]),
        f_profile=tuple(f_prof[: n + 1]),
        chain_ok=tuple(flags),
        all_ok=all(flags),
        in_window=in_window,
        outside_window=outside,
        ratio=float(ratio_exact),
        ratio_bound=ratio_bound,
        ratio_ok=ratio_ok,
        epsilon_out_of_range=bool(eps_out),
    )


# ---------------------------------------------------------------------------
# Bit budgets


@dataclass(frozen=True)
class BudgetComponent:
    name: str
    bits: float
    order: Optional[str]  # symbolic correction factor, never a number


@dataclass(frozen=True)
class BudgetReport:
    kind: str
    params: dict
    components: tuple[BudgetComponent, ...]

    @property
    def main_bits(self) -> float:
        return sum(c.bits for c in self.components)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(sorted(self.params.items())),
            "components": [
                {"name": c.name, "bits": c.bits, "order": c.order}
                for c in self.components
            ],
            "main_bits": self.main_bits,
        }


def _h2(p: float) -> float:
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def certificate_budget(
    kind: str,
    *,
    n: int,
    b: Optional[float] = None,
    t: Optional[float] = None,
    triangle_free: bool = False,
) -> BudgetReport:
    """Bit-cost main terms for each certificate kind.

    Peel and sampling components use the binomial-tail bound H(1/param)
    times the ground size (valid for param >= 2); residual components are
    the independent-set-count exponents for the zone, with the unstated
    correction constants carried as symbolic order tags only.
    """
    if n < 1:
        raise InvalidParameterError("n must be at least 1")
    if kind == "sap":
        if b is None or b < 2:
            raise InvalidParameterError("peel budget needs b >= 2")
        residual = (n / 4, "1+O(b/d)") if triangle_free else (n * math.log2(3) / 6, "1+O(b/d)")
        comps = (
            BudgetComponent("peel", _h2(1 / b) * n, None),
            BudgetComponent("residual", residual[0], residual[1]),
        )
        params = {"n": n, "b": b, "triangle_free": triangle_free}
    elif kind == "entropy":
        if t is None or t < 2:
            raise InvalidParameterError("sampling budget needs t >= 2")
        residual = (n / 4, "1+O(k/d)") if triangle_free else (n * math.log2(3) / 6, "1+O(k/d)")
        comps = (
            BudgetComponent("kernel", _h2(1 / t) * n, None),
            BudgetComponent("leftover", _h2(1 / t) * n, None),
            BudgetComponent("trace", n * math.log(t) / t, None),
            BudgetComponent("residual", residual[0], residual[1]),
        )
        params = {"n": n, "t": t, "triangle_free": triangle_free}
    elif kind == "antichain":
        if b is None or b < 2:
            raise InvalidParameterError("peel budget needs b >= 2")
        ground = 1 << n
        comps = (
            BudgetComponent("peel", _h2(1 / b) * ground, None),
            BudgetComponent("residual", math.comb(n, n // 2) / 2, "1+O(b/n)"),
        )
        params = {"n": n, "b": b}
    else:
        raise InvalidParameterError(f"unknown certificate kind {kind!r}")
    return BudgetReport(kind, params, comps)
