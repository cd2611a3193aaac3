import json

import pytest

from addilog import chow
from addilog.suite import SuiteConfig, build_checks, check_seed, default_seed, run_suite


def ids(cfg):
    return [c.id for c in build_checks(cfg)]


def test_check_ids_sorted_and_unique():
    got = ids(SuiteConfig())
    assert got == sorted(got) and len(got) == len(set(got))
    assert {i.split(".")[0] for i in got} == {"bloch", "lie", "chow", "as"}
    assert {i for i in got if i.startswith("as.")} >= {f"as.p{p}.heisenberg" for p in (2, 3, 5)}


def test_as_primes_selection():
    got = ids(SuiteConfig(suites=("as",), primes=(2, 3)))
    assert got and all(i.startswith(("as.p2.", "as.p3.")) for i in got)


def test_trials_zero_skips_randomized_only():
    rep = run_suite(SuiteConfig(suites=("bloch", "lie"), trials=0))
    by_status = {}
    for c in rep.checks:
        by_status.setdefault(c.status, []).append(c.id)
    assert "bloch.four-term-random" in by_status["skipped"]
    assert "lie.weight2-epsilon" in by_status["skipped"]
    assert "bloch.four-term" in by_status["pass"]
    assert "lie.d-squared" in by_status["pass"]
    assert "fail" not in by_status
    assert rep.summary["skipped"] == len(by_status["skipped"])
    assert rep.exit_status == 0


def test_seed_mixing():
    assert check_seed(0, "a") != check_seed(0, "b")
    assert check_seed(1, "a") != check_seed(0, "a")
    assert check_seed(0, "a") == check_seed(0, "a")


def test_default_seed_from_environment(monkeypatch):
    monkeypatch.setenv("ADDILOG_SEED", "17")
    assert default_seed() == 17 and SuiteConfig().seed == 17
    monkeypatch.delenv("ADDILOG_SEED")
    assert default_seed() == 0


def test_report_is_deterministic():
    cfg = dict(suites=("bloch", "lie", "chow"), trials=5, seed=3)
    a = run_suite(SuiteConfig(**cfg)).to_json()
    b = run_suite(SuiteConfig(**cfg)).to_json()
    assert a == b
    data = json.loads(a)
    assert data["config"]["seed"] == 3
    assert all(c["millis"] is None for c in data["checks"])


def test_timings_flag_records_millis():
    rep = run_suite(SuiteConfig(suites=("lie",), trials=2, timings=True))
    assert all(isinstance(c.millis, float) for c in rep.checks)


def test_degree_cap_is_restored():
    before = chow.DEGREE_CAP
    run_suite(SuiteConfig(suites=("chow",), trials=1, degree_cap=6))
    assert chow.DEGREE_CAP == before


def test_text_report():
    rep = run_suite(SuiteConfig(suites=("lie",), trials=2))
    text = rep.to_text()
    assert all(c.id in text for c in rep.checks)
    assert text.count("PASS") >= len(rep.checks)


def test_exceptions_become_failures(monkeypatch):
    from addilog import suite

    def boom(n, seed, cfg):
        raise RuntimeError("boom")

    checks = suite.build_checks(SuiteConfig(suites=("lie",)))
    monkeypatch.setattr(suite, "build_checks", lambda cfg: [
        suite.Check(checks[0].id, checks[0].suite, checks[0].ref, boom, checks[0].default_trials)
    ])
    rep = suite.run_suite(SuiteConfig(suites=("lie",)))
    assert rep.checks[0].status == "fail" and "boom" in rep.checks[0].witness
    assert rep.exit_status == 1
