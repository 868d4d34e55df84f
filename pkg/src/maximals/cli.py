"""Command-line front door.

Verbs: gen, count, encode, decode, verify, bounds, check, sweep.  Every
request is validated before any computation starts; reports are emitted as
JSON (sorted keys) or CSV with documented column orders, bit-stable for
identical inputs apart from elapsed-time fields.

Exit codes: 0 success, 1 invalid input, 2 budget or timeout exhausted,
3 verification failure (invalid certificate or violated inequality).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import bounds as bounds_mod
from . import certificates as certs
from .enumeration import (
    EnumerationConfig,
    count_maximal_antichains,
    count_maximal_antichains_of,
    count_mis,
    count_mis_naive,
    ma_bound_convex,
)
from .errors import (
    BudgetExceeded,
    CapacityError,
    InvalidCertificate,
    InvalidParameterError,
    PreconditionViolation,
    SamplingFailure,
    VerificationFailure,
)
from .graphs import (
    BitGraph,
    VertexSet,
    bilayer,
    comparability_graph,
    h_n_graph,
    hypercube,
    random_maximal_independent_set,
    random_regular,
    read_graph,
    write_graph,
)
from .posets import (
    BooleanLattice,
    ConvexSubposet,
    random_convex_subposet,
    read_element_set,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BUDGET = 2
EXIT_VERIFY = 3


class CliError(Exception):
    """Invalid command line or input file; maps to exit code 1."""


@dataclass(frozen=True)
class CommandRequest:
    """A fully validated command: verb, target, parsed flags, io paths."""

    verb: str
    target: str
    params: dict = field(default_factory=dict)
    out: Optional[str] = None
    fmt: str = "json"


# ---------------------------------------------------------------------------
# Serialization


def fmt_float(x: float) -> str:
    """12 significant digits; integral values keep a trailing .0."""
    s = f"{x:.12g}"
    if "." not in s and "e" not in s and "E" not in s and s.lstrip("+-").isdigit():
        s += ".0"
    return s


def _round12(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def serialize_report(report, fmt: str = "json") -> str:
    """Bit-stable rendering: JSON with sorted keys and counts as decimal
    strings, or CSV rows (header + data) with fixed column orders."""
    if fmt == "json":
        return json.dumps(_round12(report), sort_keys=True, separators=(",", ":")) + "\n"
    if fmt == "csv":
        if not (isinstance(report, dict) and "_csv" in report):
            raise CliError("csv format is not available for this report")
        header, rows = report["_csv"]
        lines = [",".join(header)]
        lines += [",".join(_csv_cell(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    raise CliError(f"unknown format {fmt!r}")


def _emit(req: CommandRequest, report) -> None:
    if isinstance(report, dict) and "_csv" in report and req.fmt == "json":
        report = _strip_csv(report)
    text = serialize_report(report, req.fmt)
    if req.out:
        with open(req.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _strip_csv(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "_csv"}


# ---------------------------------------------------------------------------
# Input parsing


def parse_family(spec: str) -> BitGraph:
    """hypercube:N | bilayer:N:K | hn:D:COPIES | comparability:N |
    regular:N:D:SEED | file:PATH"""
    head, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    try:
        if head == "hypercube" and len(args) == 1:
            return hypercube(int(args[0]))
        if head == "bilayer" and len(args) == 2:
            return bilayer(int(args[0]), int(args[1]))
        if head == "hn" and len(args) == 2:
            return h_n_graph(int(args[0]), int(args[1]))
        if head == "comparability" and len(args) == 1:
            return comparability_graph(int(args[0]))
        if head == "regular" and len(args) == 3:
            return random_regular(int(args[0]), int(args[1]), int(args[2]))
        if head == "file" and rest:
            return read_graph(rest)
    except (ValueError, OSError) as exc:
        raise CliError(f"bad family spec {spec!r}: {exc}") from exc
    raise CliError(f"unrecognized family spec {spec!r}")


def parse_vertex_set(spec: str, G: BitGraph) -> VertexSet:
    """"v1,v2,..." | greedy:SEED (random maximal independent set)"""
    if spec.startswith("greedy:"):
        return random_maximal_independent_set(G, int(spec[len("greedy:"):]))
    try:
        members = [int(tok, 0) for tok in spec.split(",") if tok.strip() != ""]
        return VertexSet(G.n, members)
    except ValueError as exc:
        raise CliError(f"bad vertex set {spec!r}: {exc}") from exc


def parse_element_set(spec: str, L: BooleanLattice) -> frozenset[int]:
    """"m1,m2,..." (decimal or 0x-hex) | greedy:SEED | file:PATH"""
    if spec.startswith("file:"):
        lattice, members = read_element_set(spec[len("file:"):])
        if lattice.n != L.n:
            raise CliError(f"element file is for n={lattice.n}, expected {L.n}")
        return members
    if spec.startswith("greedy:"):
        G = comparability_graph(L.n)
        return frozenset(random_maximal_independent_set(G, int(spec[len("greedy:"):])))
    try:
        members = frozenset(int(tok, 0) for tok in spec.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise CliError(f"bad element set {spec!r}: {exc}") from exc
    for x in members:
        if not 0 <= x < L.size:
            raise CliError(f"mask {x} outside the lattice")
    return members


def parse_zone(spec: str, L: BooleanLattice) -> frozenset[int]:
    """level:K | levels:A:B | file:PATH | inline masks"""
    if spec.startswith("level:"):
        k = int(spec[len("level:"):])
        return frozenset(L.level_elements(k))
    if spec.startswith("levels:"):
        a, b = (int(x) for x in spec[len("levels:"):].split(":"))
        return frozenset(x for x in L.elements() if a <= x.bit_count() <= b)
    return parse_element_set(spec, L)


def _config(params: dict) -> EnumerationConfig:
    return EnumerationConfig(
        max_nodes=params.get("max_nodes"),
        workers=params.get("workers") or 1,
        emit=False,
        max_seconds=params.get("timeout_s"),
    )


# ---------------------------------------------------------------------------
# Handlers


def _handle_gen(req: CommandRequest) -> int:
    G = parse_family(req.params["family"])
    if req.out:
        write_graph(req.out, G)
    else:
        write_graph(sys.stdout, G)
    return EXIT_OK


def _count_report(res) -> dict:
    d = res.to_json_dict()
    d["_csv"] = (
        ("count", "nodes", "elapsed_ms"),
        [(d["count"], d["nodes"], d["elapsed_ms"])],
    )
    return d


def _handle_count(req: CommandRequest) -> int:
    cfg = _config(req.params)
    if req.target == "mis":
        G = parse_family(req.params["graph"])
        res = count_mis_naive(G) if req.params.get("naive") else count_mis(G, cfg)
    elif req.target == "ma":
        res = count_maximal_antichains(req.params["n"], cfg)
    else:
        raise CliError(f"unknown count target {req.target!r}")
    _emit(req, _count_report(res))
    return EXIT_OK


def _handle_encode(req: CommandRequest) -> int:
    if req.target == "sap":
        G = parse_family(req.params["graph"])
        I = parse_vertex_set(req.params["set"], G)
        cert = certs.sap_encode(G, I, req.params["b"])
    elif req.target == "entropy":
        G = parse_family(req.params["graph"])
        I = parse_vertex_set(req.params["set"], G)
        cert = certs.entropy_encode(G, I, req.params["t"], req.params.get("seed") or 0)
    elif req.target == "antichain":
        L = BooleanLattice(req.params["n"])
        A = parse_element_set(req.params["set"], L)
        cert = certs.antichain_encode(L, A, req.params.get("b"))
    else:
        raise CliError(f"unknown certificate kind {req.target!r}")
    _emit(req, cert.to_json_dict())
    return EXIT_OK


def _load_cert(path: str):
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read certificate {path!r}: {exc}") from exc
    return certs.certificate_from_json_dict(data)


def _handle_decode(req: CommandRequest) -> int:
    cert = _load_cert(req.params["cert"])
    if req.target == "sap":
        G = parse_family(req.params["graph"])
        decoded = sorted(certs.sap_decode(G, cert))
    elif req.target == "entropy":
        G = parse_family(req.params["graph"])
        decoded = sorted(certs.entropy_decode(G, cert))
    elif req.target == "antichain":
        L = BooleanLattice(req.params["n"])
        decoded = sorted(certs.antichain_decode(L, cert))
    else:
        raise CliError(f"unknown certificate kind {req.target!r}")
    _emit(req, {"valid": True, "kind": req.target, "set": decoded})
    return EXIT_OK


def _handle_verify(req: CommandRequest) -> int:
    if req.target != "claim1":
        raise CliError(f"unknown verify target {req.target!r}")
    L = BooleanLattice(req.params["n"])
    members = parse_zone(req.params["z"], L)
    Z = ConvexSubposet(L, members)
    b = req.params.get("b")
    if b is None:
        raise CliError("verify claim1 needs --b")
    rep = certs.verify_claim1(L, Z, b)
    _emit(req, rep.to_json_dict())
    ok = rep.all_ok and rep.ratio_ok is not False
    return EXIT_OK if ok else EXIT_VERIFY


def _handle_bounds(req: CommandRequest) -> int:
    rep = bounds_mod.evaluate_bound(
        req.target,
        n=req.params.get("n"),
        k=req.params.get("k"),
        d=req.params.get("d"),
        r=req.params.get("r"),
        s=req.params.get("s"),
        a=req.params.get("a"),
        b=req.params.get("b_part"),
    )
    d = rep.to_json_dict()
    aux = rep.params.get("k", rep.params.get("d"))
    if aux is None and "r" in rep.params:
        aux = f"{rep.params['r']}:{rep.params['s']}"
    d["_csv"] = (
        ("name", "n", "aux", "log2_value", "exactness"),
        [(rep.name, rep.params.get("n"), aux, rep.log2_value, rep.exactness)],
    )
    _emit(req, d)
    return EXIT_OK


def _handle_check(req: CommandRequest) -> int:
    p = req.params
    if req.target == "matching-lb":
        L = BooleanLattice(p["n"])
        distinct, floor = bounds_mod.matching_lower_bound(L, p["i"])
        _emit(req, {"distinct": str(distinct), "floor": str(floor), "ok": True})
        return EXIT_OK
    if req.target == "shearer":
        rng = random.Random(p.get("seed") or 0)
        worst = float("inf")
        for _ in range(p.get("samples") or 100):
            inst = _random_shearer_instance(rng)
            _, _, slack = bounds_mod.shearer_check(inst)
            worst = min(worst, slack)
        _emit(req, {"samples": p.get("samples") or 100, "min_slack": worst, "ok": True})
        return EXIT_OK
    if req.target == "binomial-tail":
        n_max = p.get("n_max") or 40
        worst = float("inf")
        for n in range(n_max + 1):
            for t in range(n // 2 + 1):
                exact, bound = bounds_mod.binomial_tail_check(n, t)
                worst = min(worst, bound - exact)
        _emit(req, {"n_max": n_max, "min_margin": worst, "ok": True})
        return EXIT_OK
    if req.target == "claim2":
        rng = random.Random(p.get("seed") or 0)
        n = p.get("n") or 5
        L = BooleanLattice(n)
        checked = 0
        for _ in range(p.get("samples") or 50):
            Z = random_convex_subposet(L, rng)
            bd = ma_bound_convex(Z)
            exact = count_maximal_antichains_of(Z).count
            if bd < exact or bd * bd > (1 << len(Z)):
                raise VerificationFailure(
                    f"claim-2 bound failed on {sorted(Z.members)}: "
                    f"bound={bd}, exact={exact}"
                )
            checked += 1
        _emit(req, {"n": n, "samples": checked, "ok": True})
        return EXIT_OK
    raise CliError(f"unknown check target {req.target!r}")


def _random_shearer_instance(rng: random.Random):
    import numpy as np

    from .bounds import ShearerInstance

    pmf = np.array([rng.random() for _ in range(16)]).reshape((2, 2, 2, 2))
    pmf /= pmf.sum()
    cover = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    return ShearerInstance((2, 2, 2, 2), pmf, tuple(cover), 3)


def _handle_sweep(req: CommandRequest) -> int:
    if req.target != "conj52":
        raise CliError(f"unknown sweep target {req.target!r}")
    p = req.params
    rep = bounds_mod.conjecture52_sweep(
        p["d"], p.get("n_max") or 14, p.get("samples") or 0,
        p.get("seed") or 0, _config(p),
    )
    d = rep.to_json_dict()
    d["_csv"] = (
        ("name", "n", "d", "seed", "count", "bound_log2", "ratio"),
        [
            (row.name, row.n, row.d, row.seed, str(row.count),
             row.bound_log2, row.ratio)
            for row in rep.rows
        ],
    )
    _emit(req, d)
    return EXIT_OK


_HANDLERS = {
    "gen": _handle_gen,
    "count": _handle_count,
    "encode": _handle_encode,
    "decode": _handle_decode,
    "verify": _handle_verify,
    "bounds": _handle_bounds,
    "check": _handle_check,
    "sweep": _handle_sweep,
}


def run_command(req: CommandRequest) -> int:
    """Dispatch a validated request; returns the process exit code."""
    try:
        return _HANDLERS[req.verb](req)
    except InvalidCertificate as exc:
        sys.stdout.write(serialize_report(
            {"valid": False, "check": exc.check, "detail": exc.detail}, "json"))
        return EXIT_VERIFY
    except VerificationFailure as exc:
        sys.stdout.write(serialize_report(
            {"ok": False, "error": str(exc)}, "json"))
        return EXIT_VERIFY
    except BudgetExceeded as exc:
        sys.stdout.write(serialize_report(
            {"aborted": True, "reason": exc.reason, "nodes": exc.nodes_visited},
            "json"))
        return EXIT_BUDGET
    except (CliError, SamplingFailure, ValueError, OSError) as exc:
        # InvalidParameterError, CapacityError and PreconditionViolation are
        # ValueError subclasses: all map to invalid input.
        sys.stdout.write(serialize_report(
            {"error": str(exc), "kind": type(exc).__name__}, "json"))
        return EXIT_INVALID


# ---------------------------------------------------------------------------
# Argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def build_parser() -> _Parser:
    p = _Parser(prog="maximals", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    def add_common(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out")

    g = sub.add_parser("gen", help="write a family graph in the edge-list format")
    g.add_argument("family")
    g.add_argument("--out")

    c = sub.add_parser("count", help="count maximal independent sets / antichains")
    c.add_argument("target", choices=("mis", "ma"))
    c.add_argument("--graph")
    c.add_argument("--n", type=int)
    c.add_argument("--naive", action="store_true")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--max-nodes", type=int, dest="max_nodes")
    c.add_argument("--timeout-s", type=float, dest="timeout_s")
    add_common(c)

    e = sub.add_parser("encode", help="build a certificate for a given set")
    e.add_argument("target", choices=("sap", "entropy", "antichain"))
    e.add_argument("--graph")
    e.add_argument("--n", type=int)
    e.add_argument("--set", required=True)
    e.add_argument("--b", type=float)
    e.add_argument("--t", type=float)
    e.add_argument("--seed", type=int, default=0)
    add_common(e)

    d = sub.add_parser("decode", help="replay and validate a certificate")
    d.add_argument("target", choices=("sap", "entropy", "antichain"))
    d.add_argument("--graph")
    d.add_argument("--n", type=int)
    d.add_argument("--cert", required=True)
    add_common(d)

    v = sub.add_parser("verify", help="run an inequality verifier")
    v.add_argument("target", choices=("claim1",))
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--b", type=float, required=True)
    v.add_argument("--z", required=True)
    add_common(v)

    b = sub.add_parser("bounds", help="evaluate a named log2-scale bound")
    b.add_argument("target", choices=bounds_mod.BOUND_NAMES)
    b.add_argument("--n", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--d", type=int)
    b.add_argument("--r", type=int)
    b.add_argument("--s", type=int)
    b.add_argument("--a", type=int)
    b.add_argument("--b-part", type=int, dest="b_part")
    add_common(b)

    k = sub.add_parser("check", help="run a construction or inequality suite")
    k.add_argument("target", choices=("matching-lb", "shearer", "binomial-tail", "claim2"))
    k.add_argument("--n", type=int)
    k.add_argument("--i", type=int)
    k.add_argument("--samples", type=int)
    k.add_argument("--seed", type=int)
    k.add_argument("--n-max", type=int, dest="n_max")
    add_common(k)

    s = sub.add_parser("sweep", help="extremal-count conjecture sweep")
    s.add_argument("target", choices=("conj52",))
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n-max", type=int, dest="n_max")
    s.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--max-nodes", type=int, dest="max_nodes")
    s.add_argument("--timeout-s", type=float, dest="timeout_s")
    add_common(s)

    return p


def _validate(ns: argparse.Namespace) -> CommandRequest:
    params = {k: v for k, v in vars(ns).items()
              if k not in ("verb", "target", "format", "out")}
    verb = ns.verb
    target = getattr(ns, "target", "")
    if verb == "gen":
        params = {"family": ns.family}
        target = "graph"
    if verb == "count":
        if ns.target == "mis" and not ns.graph:
            raise CliError("count mis needs --graph")
        if ns.target == "ma" and ns.n is None:
            raise CliError("count ma needs --n")
    if verb == "encode":
        if ns.target in ("sap", "entropy") and not ns.graph:
            raise CliError(f"encode {ns.target} needs --graph")
        if ns.target == "sap" and ns.b is None:
            raise CliError("encode sap needs --b")
        if ns.target == "entropy" and ns.t is None:
            raise CliError("encode entropy needs --t")
        if ns.target == "antichain" and ns.n is None:
            raise CliError("encode antichain needs --n")
    if verb == "decode":
        if ns.target in ("sap", "entropy") and not ns.graph:
            raise CliError(f"decode {ns.target} needs --graph")
        if ns.target == "antichain" and ns.n is None:
            raise CliError("decode antichain needs --n")
    fmt = getattr(ns, "format", "json")
    return CommandRequest(verb, target, params, getattr(ns, "out", None), fmt)


def main(argv: Optional[list[str]] = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        req = _validate(ns)
    except CliError as exc:
        sys.stdout.write(serialize_report(
            {"error": str(exc), "kind": "CliError"}, "json"))
        return EXIT_INVALID
    return run_command(req)


if __name__ == "__main__":
    sys.exit(main())
