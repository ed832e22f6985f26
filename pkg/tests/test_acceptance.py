"""Acceptance suite: one test per criterion, each printing a pass/fail line.

All tolerances are zero: every asserted quantity is an exact integer or an
exact byte comparison.  Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import time

import pytest

from pchar.constructions import (
    ExampleSpec,
    cross_check_methods,
    verify_example_via_orbits,
    verify_example_via_table,
)
from pchar.corpus import TableCache, default_corpus_path, load_corpus, run_corpus
from pchar.cyclotomic import lemma_2_1_random_suite
from pchar.characters import decompose, product
from pchar.reporting import reports_to_csv, reports_to_json


def _line(num: int, ok: bool, text: str) -> None:
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, text


@pytest.fixture(scope="session")
def corpus_entries():
    entries, base = load_corpus(default_corpus_path())
    return entries, base


@pytest.fixture(scope="session")
def corpus_shared(corpus_entries, session_cache, cfg):
    """Corpus results computed against the shared session table cache."""
    entries, _ = corpus_entries
    return run_corpus(entries, cfg, cache=session_cache)


@pytest.fixture(scope="session")
def corpus_fresh(corpus_entries, cfg):
    """A second, fully independent corpus run (fresh cache), timed."""
    entries, base = corpus_entries
    t0 = time.perf_counter()
    results = run_corpus(entries, cfg, cache=TableCache(cfg, base))
    return results, time.perf_counter() - t0


def _reports(results, statement=None):
    out = []
    for res in results:
        for r in res.reports:
            if statement is None or r.statement == statement:
                out.append(r)
    return out


def test_criterion_1_small_cases_via_table(timed_example31, timed_example51):
    t31, secs31 = timed_example31
    t0 = time.perf_counter()
    rep31 = verify_example_via_table(ExampleSpec(3, 1), table=t31)
    secs31 += time.perf_counter() - t0
    ok31 = (
        rep31.status == "pass"
        and rep31.details["eta"] == 2
        and rep31.details["chi_degree"] == 3
        and rep31.details["group_order"] == 81
        and secs31 < 5.0
    )
    t51, secs51 = timed_example51
    t0 = time.perf_counter()
    rep51 = verify_example_via_table(ExampleSpec(5, 1), table=t51)
    secs51 += time.perf_counter() - t0
    ok51 = (
        rep51.status == "pass"
        and rep51.details["eta"] == 3
        and rep51.details["chi_degree"] == 5
        and rep51.details["group_order"] == 15625
        and secs51 < 120.0
    )
    _line(
        1,
        ok31 and ok51,
        f"table method: (3,1) eta=2, chi(1)=3, |G|=81 in {secs31:.1f}s (<5s); "
        f"(5,1) eta=3, chi(1)=5, |G|=15625 in {secs51:.1f}s (<120s)",
    )


def test_criterion_2_orbit_method_scalable(timed_example31, timed_example51):
    t0 = time.perf_counter()
    rep71 = verify_example_via_orbits(ExampleSpec(7, 1))
    secs71 = time.perf_counter() - t0
    t0 = time.perf_counter()
    rep32 = verify_example_via_orbits(ExampleSpec(3, 2))
    secs32 = time.perf_counter() - t0
    ok = (
        rep71.status == "pass"
        and rep71.details["orbit_count"] == 4
        and secs71 < 1.0
        and rep32.status == "pass"
        and rep32.details["orbit_count"] == 2
        and secs32 < 1.0
    )
    # cross-check wherever both methods run
    cc31 = cross_check_methods(ExampleSpec(3, 1), table=timed_example31[0])
    cc51 = cross_check_methods(ExampleSpec(5, 1), table=timed_example51[0])
    ok = ok and cc31.status == "pass" and cc51.status == "pass"
    _line(
        2,
        ok,
        f"orbit method: (7,1) eta=4 in {secs71 * 1000:.0f}ms, (3,2) eta=2 in "
        f"{secs32 * 1000:.0f}ms (each <1s); cross-checks agree at (3,1) and (5,1)",
    )


def test_criterion_3_theorem_a_zero_violations(corpus_shared, corpus_fresh):
    reports = _reports(corpus_shared, "theorem-a")
    fails = [r for r in reports if r.status == "fail"]
    passes = [r for r in reports if r.status == "pass"]
    pair_total = sum(r.details.get("pair_count", 0) for r in passes)
    _, fresh_secs = corpus_fresh
    ok = not fails and len(passes) >= 12 and pair_total > 125_000 and fresh_secs < 600.0
    _line(
        3,
        ok,
        f"theorem-a dichotomy: 0 violations over {pair_total} faithful pairs in "
        f"{len(passes)} p-group entries; full fresh corpus ran in {fresh_secs:.0f}s (<600s)",
    )


def test_criterion_4_main_lemma(corpus_shared):
    reports = _reports(corpus_shared, "main-lemma")
    fails = [r for r in reports if r.status == "fail"]
    passes = [r for r in reports if r.status == "pass"]
    eta_one = all(r.details.get("all_hypothesis_pairs_have_eta_1", False) for r in passes)
    in_scope = sum(r.details.get("pairs_in_hypothesis", 0) for r in passes)
    ok = not fails and passes and eta_one
    _line(
        4,
        ok,
        f"main lemma: every faithful pair with 2*eta <= p vanishes outside the "
        f"center and has eta = 1 ({in_scope} pairs in hypothesis)",
    )


def test_criterion_5_lemma_4_1(corpus_shared, cfg):
    reports = _reports(corpus_shared, "lemma-4-1")
    fails = [r for r in reports if r.status == "fail"]
    passes = [r for r in reports if r.status == "pass"]
    triples = sum(r.details.get("triples", 0) for r in passes)
    ok = not fails and triples > 50
    _line(
        5,
        ok,
        f"lemma 4.1: |Irr(G|phi)| in {{1}} or >= p for all {triples} (G, N, phi) "
        f"triples over corpus groups of order <= {cfg.lemma41_max_order}",
    )


def test_criterion_6_theorem_b(corpus_shared):
    reports = _reports(corpus_shared, "theorem-b")
    fails = [r for r in reports if r.status == "fail"]
    passes = [r for r in reports if r.status == "pass"]
    strict_recorded = all("strict_bound_failures" in r.details for r in passes)
    rows = sum(r.details.get("rows", 0) for r in passes)
    ok = not fails and strict_recorded and rows > 700
    _line(
        6,
        ok,
        f"theorem B: chi(1) permissible for n = eta(chi, conj chi) across {rows} "
        f"irreducibles of nilpotent entries; strict-bound outcomes recorded",
    )


def test_criterion_7_table_self_validation(session_cache, corpus_shared):
    # explicit re-validation of every table computed for the corpus
    tables = list(session_cache._tables.values())
    assert len(tables) >= 10
    for t in tables:
        t.validate()  # raises on any inexactness
    # decomposition integrality sweep: decompose a product on each table
    for t in tables:
        r = t.num_rows - 1
        d = decompose(product(t.row(r), t.row(r)), t)
        assert all(isinstance(m, int) and m > 0 for _, m in d.pairs)
    false_zeros = lemma_2_1_random_suite(primes=(3, 5, 7, 11), trials=10_000, seed=0)
    ok = false_zeros == 0
    _line(
        7,
        ok,
        f"self-validation: exact row/column orthogonality and degree sums on "
        f"{len(tables)} tables; prime-conductor randomized suite found "
        f"{false_zeros} false zeros in 4x10^4 trials",
    )


def test_criterion_8_determinism(corpus_shared, corpus_fresh, cfg):
    fresh_results, _ = corpus_fresh
    a_json = reports_to_json(_reports(corpus_shared), cfg.include_timings).encode()
    b_json = reports_to_json(_reports(fresh_results), cfg.include_timings).encode()
    a_csv = reports_to_csv(_reports(corpus_shared), cfg.include_timings).encode()
    b_csv = reports_to_csv(_reports(fresh_results), cfg.include_timings).encode()
    ok = a_json == b_json and a_csv == b_csv
    _line(
        8,
        ok,
        f"determinism: two independent corpus runs serialize to byte-identical "
        f"reports ({len(a_json)} bytes json, {len(a_csv)} bytes csv)",
    )
