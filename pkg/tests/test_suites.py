import json
from pathlib import Path

import pytest

from rloops import catalog, groups, suites, transversals
from rloops.suites import SuiteParams


def suite_by_name(report_suites, name):
    return [s for s in report_suites if s["suite"] == name][0]


def test_counterexample_s3_suite():
    d = suites.verify_counterexample_s3(SuiteParams())
    assert d["verdict"] == "pass"
    assert len(d["rows"]) == 3
    for row in d["rows"]:
        assert row["transversals"] == 4
        assert row["generating"] == 3
        assert row["solvable_generating"] == 0
        assert row["group_solvable"]


def test_theorem1_small():
    d = suites.verify_theorem1(SuiteParams(max_order=8))
    assert d["verdict"] == "pass"
    assert d["summary"]["instances"] > 50
    assert d["summary"]["loop_order_hist"]
    assert all(r["violations"] == 0 for r in d["rows"])


def test_theorem1_sampling_mode():
    d = suites.verify_theorem1(SuiteParams(max_order=24, max_transversals=50, sample=10))
    assert d["verdict"] == "pass"
    modes = {r["mode"] for r in d["rows"]}
    assert "sampled" in modes and "exhaustive" in modes
    for r in d["rows"]:
        if r["mode"] == "sampled":
            assert r["transversals"] <= 10


def test_theorem1_seed_changes_sampled_rows_only():
    a = suites.verify_theorem1(SuiteParams(max_order=12, max_transversals=20, sample=5, seed=1))
    b = suites.verify_theorem1(SuiteParams(max_order=12, max_transversals=20, sample=5, seed=2))
    assert [r["mode"] for r in a["rows"]] == [r["mode"] for r in b["rows"]]
    assert a["verdict"] == b["verdict"] == "pass"


def test_theorem2_small():
    d = suites.verify_theorem2(SuiteParams(max_order=10))
    assert d["verdict"] == "pass"
    assert d["summary"]["qualifying_instances"] > 0
    assert d["summary"]["torsion_order_hist"]


def test_corollaries_small():
    d1 = suites.verify_corollary1(SuiteParams(max_order=8))
    assert d1["verdict"] == "pass"
    assert d1["summary"]["solvable_loops_checked"] > 10
    d2 = suites.verify_corollary2(SuiteParams(max_order=12))
    assert d2["verdict"] == "pass"
    assert d2["summary"]["qualifying_triples"] > 0


def test_cameron_small():
    d = suites.verify_cameron(SuiteParams(max_order=12))
    assert d["verdict"] == "pass"
    assert all(r["found"] for r in d["rows"])


def test_iso_classes_small():
    d = suites.verify_iso_classes(SuiteParams(max_order=9))
    assert d["verdict"] == "pass"
    s3_rows = [r for r in d["rows"] if r["group"] == "S3" and r["index"] == 3 and r["core_free"]]
    assert s3_rows and all(r["classes"] == 3 for r in s3_rows)
    flags = {f["kind"] for f in d["summary"]["flagged"]}
    assert "convention-exception-trivial-subgroup" in flags  # (C3, {0})
    assert "index3-not-core-free" in flags  # normal index-3 subgroups give 1 class


def test_lemmas_small_passes():
    d = suites.verify_lemmas(SuiteParams(max_order=8))
    assert d["verdict"] == "pass"
    assert d["summary"]["checks"]["factor-compatibility"] > 100
    assert d["summary"]["checks"]["derived-chain"] > 10


def test_lemmas_at_16_reports_only_the_chain_finding():
    """At order 16 the suite must surface the documented derived-chain
    counterexamples and nothing else."""
    d = suites.verify_lemmas(SuiteParams(max_order=16))
    assert d["verdict"] == "fail"
    kinds = {c["kind"] for c in d["counterexamples"]}
    assert kinds == {"derived-chain-failed"}
    for c in d["counterexamples"]:
        eq = c["witness"]["equation"]
        assert eq.startswith("HS") and "=H(HS" in eq
        n = int(eq[2:].split("=", 1)[0])
        assert n >= 2


def test_reconstruction_small():
    d = suites.verify_reconstruction(SuiteParams(max_order=8))
    assert d["verdict"] == "pass"
    assert d["summary"]["generating_checked"] > 20


def test_run_suites_order_and_unknown():
    out, timings = suites.run_suites(["theorem2", "counterexample-s3"], SuiteParams(max_order=6))
    assert [s["suite"] for s in out] == ["counterexample-s3", "theorem2"]
    assert set(timings) == {"counterexample-s3", "theorem2"}
    with pytest.raises(ValueError):
        suites.run_suites(["nope"], SuiteParams())


def test_catalog_names_and_orders():
    entries = catalog.builtin_catalog()
    names = [e.name for e in entries]
    assert len(names) == len(set(names))
    assert "S4" in names and "A5" in names and "Q8" in names
    a5 = [e for e in entries if e.name == "A5"][0]
    assert a5.group.order == 60 and a5.sample_only
    assert all(e.group.order <= 24 for e in catalog.catalog_upto(24))


def test_a5_sampled_pairs_have_no_solvable_generating_transversal():
    """Contrapositive spot check on the non-solvable stress entry."""
    from rloops import congruences

    a5 = [e for e in catalog.builtin_catalog() if e.name == "A5"][0].group
    assert not groups.is_solvable_group(a5)
    five_cycle = a5.element_orders.index(5)
    three_cycle = a5.element_orders.index(3)
    for seed_elems in ([five_cycle], [three_cycle]):
        h = groups.subgroup_closure(a5, seed_elems)
        assert groups.core(a5, h).order == 1
        import random

        rng = random.Random(f"a5-test-{h.order}")
        for tr in transversals.sample_transversals(a5, h, 12, rng):
            bundle = transversals.induced_loop(tr)
            if transversals.is_generating(tr):
                assert not congruences.is_solvable(bundle.loop)
