"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The criteria run through the same registry as the `verify-paper` CLI
(balpart.verification), so this module and the CLI cannot drift apart.
Pipeline criteria persist bound misses under artifacts/ as
counterexample candidates; they fail only on internally inconsistent
witnesses or traces.
"""
import pytest

from balpart import verification as V


def _run(criterion, fn, *args, **kwargs):
    res = fn(*args, **kwargs)
    status = "PASS" if res.passed else "FAIL"
    print(f"ACCEPTANCE {criterion:38s} {status}  [{res.anchor}] {res.details}")
    assert res.passed, f"{criterion}: {res.details}"
    return res


def test_criterion_01_join12_exact_value():
    _run("01 join12 min-max value", V.check_join12_value)


def test_criterion_02_join12_table():
    _run("02 join12 constrained table", V.check_join12_table)


def test_criterion_03_blowup_values():
    _run("03 blow-up optimum 37n^2 (n=1,2,3)", V.check_blowup_values)
    _run("03b optimal count-vector structure", V.check_blowup_equality_structure)


def test_criterion_04_profile_lower_bound():
    _run("04 cyclic form >= pentagram form", V.check_profile_lower_bound)


def test_criterion_05_profile_closed_form():
    _run("05 closed-form minimum + uniqueness", V.check_profile_closed_form)


def test_criterion_06_transfer_machinery():
    _run("06 transfer deltas + loop contract", V.check_transfer_machinery)


def test_criterion_07_tripartite_equality():
    _run("07 3-partite equality values", V.check_tripartite_equality)


def test_criterion_08_degree_bound_corpus():
    _run("08 degree-bound target, 500 instances", V.check_degree_bound_target)


def test_criterion_09_proportional_subset():
    _run("09 proportional subset inequality", V.check_proportional_subset)


def test_criterion_10_bipartize_target():
    _run("10 bipartization budget, 200 instances", V.check_bipartize_target)


def test_criterion_11_certificates():
    _run("11 certificate catalog", V.check_certificates)


def test_criterion_12_pipelines():
    _run("12a k4free pipeline corpus", V.check_k4free_pipeline,
         artifacts_dir="artifacts")
    _run("12b join pipeline corpus", V.check_join_pipeline,
         artifacts_dir="artifacts")


def test_criterion_13_oracle_equivalence():
    _run("13 blow-up reduction == expanded exact", V.check_oracle_equivalence)


def test_criterion_14_determinism():
    _run("14 worker-count determinism", V.check_determinism)
