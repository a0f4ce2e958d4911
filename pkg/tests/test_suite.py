import pytest

from gglab.instances import BUILTIN_NAMES, load_builtin
from gglab.suite import MANIFEST, run_suite

S3_IDS = [cid for cid, _, scope in MANIFEST if scope == "s3"]
ALL_IDS = [cid for cid, _, _ in MANIFEST]


@pytest.fixture(scope="module")
def reports():
    return {name: run_suite(load_builtin(name), scope="all") for name in BUILTIN_NAMES}


def test_full_scope_covers_manifest(reports):
    for name, report in reports.items():
        assert report.check_ids() == ALL_IDS, name


def test_s3_scope(reports):
    report = run_suite(load_builtin("pair_f5"), scope="s3")
    assert report.check_ids() == S3_IDS


def test_no_violations_on_builtins(reports):
    for name, report in reports.items():
        assert report.violations == [], (name, [c.check_id for c in report.violations])
        assert report.exit_code == 0


def test_no_silent_skips(reports):
    # every skip names its failed hypothesis
    for report in reports.values():
        for c in report.checks:
            if c.verdict == "skip":
                assert c.hypothesis == "unmet"
                assert c.detail


def record(reports, name, cid):
    return next(c for c in reports[name].checks if c.check_id == cid)


def test_pair_f5_negative_control(reports):
    # double-centralizer hypothesis unmet, so 3.10/3.11 skip, never violation
    for cid in ("theorem_3_10", "theorem_3_11"):
        rec = record(reports, "pair_f5", cid)
        assert rec.verdict == "skip"
        assert rec.hypothesis == "unmet"
    rec = record(reports, "pair_f5", "theorem_3_10")
    fail = rec.witnesses.get("double_centralizer_failure")
    assert fail and fail["invariants_dim"] == 1 and fail["bicommutant_dim"] == 2


def test_pair_f5_gamma_collapse(reports):
    rec = record(reports, "pair_f5", "theorem_3_10")
    table = rec.witnesses
    assert table["theta_injective"]["wide"] is True
    assert table["gamma_injective"]["wide"] is False


def test_klein_m2f3_fundamental_theorem_fails_honestly(reports):
    rec = record(reports, "klein_m2f3", "fundamental_theorem")
    assert rec.verdict == "pass"  # a decided property, not a theorem claim
    assert rec.witnesses["separable_subalgebras"] == 11
    assert rec.witnesses["holds"] is False
    assert rec.witnesses["injective"] is True
    assert rec.witnesses["image_separable"] is True
    assert rec.witnesses["surjective"] is False
    # and the biconditional of the characterization is respected
    rec44 = record(reports, "klein_m2f3", "theorem_4_4")
    assert rec44.verdict == "pass"
    assert rec44.witnesses == {
        "fundamental_theorem": False,
        "decomposition_for_all_separable": False,
    }


def test_klein_m2f3_theorem_3_9_sweep(reports):
    rec = record(reports, "klein_m2f3", "theorem_3_9")
    assert rec.verdict == "pass"
    assert rec.witnesses["swept"] == 11
    assert rec.witnesses["mode"] == "exhaustive"


def test_lemma_3_1_counts(reports):
    assert record(reports, "pair_f5", "lemma_3_1").witnesses["checks"] == 4
    assert record(reports, "pair_f5", "lemma_3_1").witnesses["wide"] == 2
    assert record(reports, "klein_m2f3", "lemma_3_1").witnesses["wide"] == 5
    assert record(reports, "klein_disjoint2", "lemma_3_1").witnesses["wide"] == 25


def test_connecting_arrow_observation(reports):
    rec = record(reports, "pair_f5", "connecting_arrows")
    assert rec.verdict == "pass"
    assert set(rec.witnesses["connecting_arrows"]) == {"t", "s"}


def test_non_wide_theta_collision_reported_not_judged(reports):
    # klein_disjoint2: theta({e1}) = theta({e2}) = R under the literal
    # all-subgroupoid reading; surfaced as data, not a violation
    rec = record(reports, "klein_disjoint2", "lemma_3_2")
    assert rec.verdict == "pass"
    assert rec.witnesses["non_wide_coincidences"]


def test_json_deterministic():
    a = run_suite(load_builtin("klein_m2f3"), scope="all").to_json()
    b = run_suite(load_builtin("klein_m2f3"), scope="all").to_json()
    assert a == b
    assert '"seconds"' not in a


def test_bad_scope_rejected():
    with pytest.raises(ValueError, match="scope"):
        run_suite(load_builtin("trivial"), scope="s5")


def test_hypothesis_column_consistency(reports):
    for report in reports.values():
        for c in report.checks:
            assert c.verdict in ("pass", "skip", "violation", "inconclusive")
            if c.verdict == "violation":
                assert c.witnesses
