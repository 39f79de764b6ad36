"""End-to-end CLI coverage."""
import json

import pytest

from balpart.cli import main
from balpart.io import read_graph


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_and_solve_exact(tmp_path, capsys):
    out = tmp_path / "h.el"
    code, _, err = run_cli(capsys, "construct", "--family", "paper-h",
                           "--out", str(out))
    assert code == 0 and "n=12 m=40" in err
    code, stdout, _ = run_cli(capsys, "solve-exact", str(out),
                              "--objective", "minmax")
    assert code == 0
    doc = json.loads(stdout)
    assert doc["schema_version"] == 1
    assert doc["results"]["value"] == 10
    assert doc["results"]["proven_optimal"]
    mask = int(doc["results"]["witness_bitmask_hex"], 16)
    assert bin(mask).count("1") == 6


def test_solve_blowup_value(capsys):
    code, stdout, _ = run_cli(capsys, "solve-blowup", "--base", "paper-h",
                              "--mult", "2")
    assert code == 0
    doc = json.loads(stdout)
    assert doc["results"]["value"] == 37


def test_graph6_round_trip_via_cli(tmp_path, capsys):
    g6 = tmp_path / "g.g6"
    el = tmp_path / "g.el"
    run_cli(capsys, "construct", "--family", "cycle", "--n", "6",
            "--format", "graph6", "--out", str(g6))
    run_cli(capsys, "construct", "--family", "cycle", "--n", "6",
            "--out", str(el))
    assert read_graph(str(g6)) == read_graph(str(el))


def test_heuristic_pipelines(tmp_path, capsys):
    gfile = tmp_path / "t.el"
    run_cli(capsys, "construct", "--family", "random-tripartite", "--n", "60",
            "--p", "0.4", "--seed", "5", "--out", str(gfile))
    code, stdout, _ = run_cli(capsys, "heuristic", str(gfile),
                              "--pipeline", "k4free", "--seed", "0")
    assert code == 0
    doc = json.loads(stdout)
    trace = doc["results"]["trace"]
    assert trace["case_label"] in {"COR36", "L41_C11", "L41_C12", "L43_C31",
                                   "L43_C32", "L43_C331", "FALLBACK"} \
        or trace["case_label"].startswith("L43_C332")
    assert trace["compliant"] in (True, False)

    code, stdout, _ = run_cli(capsys, "heuristic", str(gfile),
                              "--pipeline", "bipartize")
    assert code == 0
    assert "deleted" in json.loads(stdout)["results"]

    code, stdout, _ = run_cli(capsys, "heuristic", str(gfile),
                              "--pipeline", "xu")
    assert code == 0
    assert json.loads(stdout)["results"]["degree_bound_met"] is True


def test_heuristic_join_requires_block(tmp_path, capsys):
    gfile = tmp_path / "j.el"
    run_cli(capsys, "construct", "--family", "paper-h", "--out", str(gfile))
    code, _, err = run_cli(capsys, "heuristic", str(gfile), "--pipeline", "join")
    assert code == 2 and "--i-size" in err
    code, stdout, _ = run_cli(capsys, "heuristic", str(gfile),
                              "--pipeline", "join", "--i-size", "7")
    assert code == 0
    assert json.loads(stdout)["results"]["trace"]["compliant"] is True


def test_certify_all_green(capsys):
    code, stdout, _ = run_cli(capsys, "certify", "--all")
    assert code == 0
    doc = json.loads(stdout)
    assert doc["results"]["all_passed"]
    assert len(doc["results"]["claims"]) >= 20


def test_certify_single_claim(capsys):
    code, stdout, _ = run_cli(capsys, "certify", "--claim", "CUBIC1")
    assert code == 0
    assert json.loads(stdout)["results"]["claims"][0]["verdict"] == "verified"


def test_malformed_graph_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.el"
    bad.write_text("3 2\n0 1\n0 9\n")
    code, _, err = run_cli(capsys, "solve-exact", str(bad))
    assert code == 2 and "line 3" in err


def test_verify_paper_only_filter(capsys):
    code, stdout, err = run_cli(capsys, "verify-paper", "--only", "prop-2.1")
    assert code == 0
    doc = json.loads(stdout)
    assert {c["anchor"] for c in doc["results"]["checks"]} == {"prop-2.1"}
    assert "PASS" in err
    code, _, err = run_cli(capsys, "verify-paper", "--only", "nope")
    assert code == 2


def test_bench_csv(capsys):
    code, stdout, _ = run_cli(capsys, "bench", "--target", "blowup",
                              "--family", "paper-h", "--sizes", "1,2")
    assert code == 0
    lines = stdout.strip().splitlines()
    assert lines[0] == "n,operation,wall_ms,nodes"
    assert len(lines) == 3
