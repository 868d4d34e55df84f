import json

import pytest

from maximals.cli import (
    EXIT_BUDGET,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_VERIFY,
    fmt_float,
    main,
    parse_family,
    serialize_report,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def drop_timing(obj):
    if isinstance(obj, dict):
        return {k: drop_timing(v) for k, v in obj.items() if k != "elapsed_ms"}
    if isinstance(obj, list):
        return [drop_timing(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------


def test_count_mis_json(capsys):
    code, got = run_json(capsys, "count", "mis", "--graph", "hypercube:3")
    assert code == EXIT_OK
    assert got["count"] == "6"
    assert set(got) == {"count", "nodes", "elapsed_ms"}


def test_count_ma(capsys):
    code, got = run_json(capsys, "count", "ma", "--n", "4")
    assert code == EXIT_OK and got["count"] == "29"


def test_count_naive_agrees(capsys):
    _, fast = run_json(capsys, "count", "mis", "--graph", "bilayer:4:1")
    _, slow = run_json(capsys, "count", "mis", "--graph", "bilayer:4:1", "--naive")
    assert fast["count"] == slow["count"] == "12"


def test_count_csv(capsys):
    code, out = run(capsys, "count", "mis", "--graph", "hypercube:2", "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().split("\n")
    assert lines[0] == "count,nodes,elapsed_ms"
    assert lines[1].startswith("2,")


def test_count_budget_exit(capsys):
    code, got = run_json(capsys, "count", "mis", "--graph", "hypercube:4",
                         "--max-nodes", "3")
    assert code == EXIT_BUDGET
    assert got["aborted"] is True and got["reason"] == "nodes"


def test_unknown_flag_is_hard_error(capsys):
    code, got = run_json(capsys, "count", "mis", "--graph", "hypercube:2",
                         "--frobnicate")
    assert code == EXIT_INVALID


def test_missing_required(capsys):
    code, got = run_json(capsys, "count", "mis")
    assert code == EXIT_INVALID
    code, got = run_json(capsys, "count", "ma")
    assert code == EXIT_INVALID


def test_bad_family(capsys):
    code, got = run_json(capsys, "count", "mis", "--graph", "dodecahedron:3")
    assert code == EXIT_INVALID


def test_gen_roundtrip(tmp_path, capsys):
    path = tmp_path / "g.txt"
    code, _ = run(capsys, "gen", "bilayer:4:1", "--out", str(path))
    assert code == EXIT_OK
    code, got = run_json(capsys, "count", "mis", "--graph", f"file:{path}")
    assert code == EXIT_OK and got["count"] == "12"


def test_gen_stdout(capsys):
    code, out = run(capsys, "gen", "hypercube:1")
    assert code == EXIT_OK and out == "2 1\n0 1\n"


@pytest.mark.parametrize(
    "kind,extra",
    [
        ("sap", ["--b", "2"]),
        ("entropy", ["--t", "2", "--seed", "5"]),
    ],
)
def test_encode_decode_roundtrip_graph(tmp_path, capsys, kind, extra):
    cert = tmp_path / "cert.json"
    code, _ = run(capsys, "encode", kind, "--graph", "hypercube:4",
                  "--set", "greedy:3", "--out", str(cert), *extra)
    assert code == EXIT_OK
    code, got = run_json(capsys, "decode", kind, "--graph", "hypercube:4",
                         "--cert", str(cert))
    assert code == EXIT_OK and got["valid"] is True
    from maximals.graphs import hypercube, random_maximal_independent_set

    want = sorted(random_maximal_independent_set(hypercube(4), 3))
    assert got["set"] == want


def test_encode_decode_roundtrip_antichain(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, _ = run(capsys, "encode", "antichain", "--n", "4",
                  "--set", "greedy:9", "--b", "2", "--out", str(cert))
    assert code == EXIT_OK
    code, got = run_json(capsys, "decode", "antichain", "--n", "4",
                         "--cert", str(cert))
    assert code == EXIT_OK and got["valid"] is True


def test_decode_tampered_exit3(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    run(capsys, "encode", "sap", "--graph", "hypercube:3",
        "--set", "0,3,5,6", "--b", "2", "--out", str(cert))
    data = json.loads(cert.read_text())
    data["sets"]["residual"] = data["sets"]["residual"][1:]
    cert.write_text(json.dumps(data))
    code, got = run_json(capsys, "decode", "sap", "--graph", "hypercube:3",
                         "--cert", str(cert))
    assert code == EXIT_VERIFY
    assert got["valid"] is False
    assert got["check"] == "residual-not-maximal"


def test_verify_claim1(capsys):
    code, got = run_json(capsys, "verify", "claim1", "--n", "10", "--b", "1",
                         "--z", "level:5")
    assert code == EXIT_OK
    assert got["all_ok"] is True and got["ratio"] == 1.0


def test_verify_claim1_precondition_exit1(capsys):
    code, got = run_json(capsys, "verify", "claim1", "--n", "10", "--b", "1",
                         "--z", "levels:4:5")
    assert code == EXIT_INVALID


def test_bounds_csv_golden(capsys):
    code, out = run(capsys, "bounds", "lbs-ma", "--n", "4", "--format", "csv")
    assert code == EXIT_OK
    assert out == "name,n,aux,log2_value,exactness\nlbs-ma,4,,3.0,exact\n"


def test_bounds_json(capsys):
    code, got = run_json(capsys, "bounds", "conj52", "--n", "6", "--d", "5")
    assert code == EXIT_OK
    assert got["exactness"] == "conjectured"
    assert abs(got["log2_value"] - 2.58496250072) < 1e-9


def test_bounds_missing_param(capsys):
    code, _ = run_json(capsys, "bounds", "lbs-ma")
    assert code == EXIT_INVALID


def test_check_commands(capsys):
    code, got = run_json(capsys, "check", "matching-lb", "--n", "3", "--i", "1")
    assert code == EXIT_OK
    assert got == {"distinct": "4", "floor": "4", "ok": True}
    code, got = run_json(capsys, "check", "binomial-tail", "--n-max", "20")
    assert code == EXIT_OK and got["ok"] is True
    code, got = run_json(capsys, "check", "shearer", "--samples", "20", "--seed", "1")
    assert code == EXIT_OK and got["min_slack"] >= -1e-9
    code, got = run_json(capsys, "check", "claim2", "--n", "4", "--samples", "20",
                         "--seed", "2")
    assert code == EXIT_OK and got["ok"] is True


def test_sweep_csv_deterministic(capsys):
    args = ("sweep", "conj52", "--d", "3", "--n-max", "10", "--samples", "5",
            "--seed", "11", "--format", "csv")
    code1, out1 = run(capsys, *args)
    code2, out2 = run(capsys, *args)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2
    assert out1.startswith("name,n,d,seed,count,bound_log2,ratio\n")


def test_report_determinism_across_workers(capsys):
    _, a = run_json(capsys, "count", "mis", "--graph", "hypercube:4",
                    "--workers", "1")
    _, b = run_json(capsys, "count", "mis", "--graph", "hypercube:4",
                    "--workers", "4")
    assert drop_timing(a) == drop_timing(b)


def test_serialize_sorted_and_stable():
    blob = serialize_report({"b": 1.5, "a": [1, 2.25]}, "json")
    assert blob == '{"a":[1,2.25],"b":1.5}\n'


def test_fmt_float():
    assert fmt_float(3.0) == "3.0"
    assert fmt_float(2.584962500721156) == "2.58496250072"
    assert fmt_float(0.25) == "0.25"


def test_parse_family_regular():
    G = parse_family("regular:8:3:5")
    assert G.n == 8 and all(G.degree(v) == 3 for v in range(8))
