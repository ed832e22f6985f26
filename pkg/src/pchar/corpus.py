"""Corpus files: named group entries with expected facts, run end to end.

A corpus is a TOML file of entries; each entry names a group descriptor,
optional verification methods (for example entries), and an optional block
of expected facts asserted after computation.  The runner executes every
statement against every entry, reusing one character table per descriptor.
"""

from __future__ import annotations

import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):  # pragma: no cover
    import tomllib
else:
    import tomli as tomllib

from .characters import CharacterTable, character_table, eta as eta_op
from .config import Config
from .constructions import (
    ExampleSpec,
    cross_check_methods,
    verify_example_via_orbits,
    verify_example_via_table,
)
from .descriptors import Descriptor, build_group, parse_descriptor
from .groups import FiniteGroup, group_prime, is_nilpotent
from .verifiers import (
    VerificationReport,
    verify_conjecture_scan,
    verify_lemma_2_2,
    verify_lemma_4_1_all,
    verify_lemma_5_1,
    verify_main_lemma,
    verify_theorem_a,
    verify_theorem_b,
)

__all__ = [
    "STATEMENTS",
    "CorpusEntry",
    "EntryResult",
    "TableCache",
    "load_corpus",
    "default_corpus_path",
    "run_entry",
    "run_corpus",
]

STATEMENTS = (
    "theorem-a",
    "main-lemma",
    "lemma-2-2",
    "lemma-4-1",
    "lemma-5-1",
    "theorem-b",
    "example",
    "conjecture-scan",
)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    descriptor: str
    methods: tuple[str, ...] = ("table", "orbit")
    expect: dict = field(default_factory=dict)


@dataclass
class EntryResult:
    entry: CorpusEntry
    reports: list[VerificationReport]
    expectation_failures: list[dict]

    @property
    def failed(self) -> bool:
        return bool(self.expectation_failures) or any(r.status == "fail" for r in self.reports)


def load_corpus(path: str | Path) -> tuple[list[CorpusEntry], Path]:
    p = Path(path)
    with open(p, "rb") as fh:
        data = tomllib.load(fh)
    entries = []
    for raw in data.get("entries", []):
        if "name" not in raw or "descriptor" not in raw:
            raise ValueError("corpus entry needs 'name' and 'descriptor'")
        parse_descriptor(raw["descriptor"])  # validate early
        entries.append(
            CorpusEntry(
                name=str(raw["name"]),
                descriptor=str(raw["descriptor"]),
                methods=tuple(raw.get("methods", ["table", "orbit"])),
                expect=dict(raw.get("expect", {})),
            )
        )
    return entries, p.parent


def default_corpus_path() -> Path:
    return Path(__file__).parent / "data" / "corpus" / "default.toml"


class TableCache:
    """Shared group/table store keyed by canonical descriptor."""

    def __init__(self, cfg: Config, base_dir: Path | None = None):
        self.cfg = cfg
        self.base_dir = base_dir
        self._groups: dict[str, FiniteGroup] = {}
        self._tables: dict[str, CharacterTable] = {}
        self._mutex = threading.Lock()
        self._key_locks: dict[str, threading.Lock] = {}

    def _lock_for(self, key: str) -> threading.Lock:
        with self._mutex:
            if key not in self._key_locks:
                self._key_locks[key] = threading.Lock()
            return self._key_locks[key]

    def group(self, desc: Descriptor) -> FiniteGroup:
        key = desc.canonical()
        with self._lock_for("group:" + key):
            if key not in self._groups:
                self._groups[key] = build_group(desc, self.cfg.element_cap, self.base_dir)
            return self._groups[key]

    def table(self, desc: Descriptor) -> CharacterTable:
        key = desc.canonical()
        with self._lock_for("table:" + key):
            if key not in self._tables:
                self._tables[key] = character_table(self.group(desc), seed=self.cfg.seed)
            return self._tables[key]


def _skipped(statement: str, group: str, reason: str) -> VerificationReport:
    return VerificationReport(statement=statement, group=group, status="skipped", details={"reason": reason})


def _statement_reports(
    statement: str,
    entry: CorpusEntry,
    desc: Descriptor,
    cache: TableCache,
    cfg: Config,
) -> list[VerificationReport]:
    name = desc.canonical()
    is_example = desc.kind == "example"
    table_backed = (not is_example) or ("table" in entry.methods)

    if statement == "example":
        if not is_example:
            return [_skipped("example", name, "descriptor is not an example construction")]
        spec = ExampleSpec(*desc.ints)
        reports = []
        if "orbit" in entry.methods:
            reports.append(verify_example_via_orbits(spec, seed=cfg.seed))
        if "table" in entry.methods:
            table = None
            if spec.group_order <= min(cfg.element_cap, cfg.max_table_order):
                table = cache.table(desc)
            reports.append(
                verify_example_via_table(
                    spec,
                    table=table,
                    seed=cfg.seed,
                    cap=cfg.element_cap,
                    max_table_order=cfg.max_table_order,
                    budget_s=cfg.table_budget_s,
                )
            )
            if "orbit" in entry.methods:
                reports.append(
                    cross_check_methods(
                        spec, table=table, seed=cfg.seed, cap=cfg.element_cap, max_table_order=cfg.max_table_order
                    )
                )
        return reports

    if not table_backed:
        return [_skipped(statement, name, "orbit-method-only entry; table-backed statements not run")]

    group = cache.group(desc)
    p = group_prime(group)
    needs_p = statement in ("theorem-a", "main-lemma", "lemma-2-2", "lemma-4-1", "lemma-5-1", "conjecture-scan")
    if needs_p and p is None:
        return [_skipped(statement, name, "not a p-group of order > 1")]
    if statement == "conjecture-scan" and p == 2:
        return [_skipped(statement, name, "scan applies to odd p only")]
    if statement == "theorem-b" and not is_nilpotent(group):
        return [_skipped(statement, name, "group is not nilpotent")]
    if statement == "lemma-2-2" and group.order > cfg.lemma22_max_order:
        return [_skipped(statement, name, f"order {group.order} exceeds enumeration cap {cfg.lemma22_max_order}")]
    if statement == "lemma-4-1" and group.order > cfg.lemma41_max_order:
        return [_skipped(statement, name, f"order {group.order} exceeds enumeration cap {cfg.lemma41_max_order}")]

    table = cache.table(desc)
    if statement == "theorem-a":
        return [verify_theorem_a(group, table=table, seed=cfg.seed)]
    if statement == "main-lemma":
        return [verify_main_lemma(group, table=table, seed=cfg.seed)]
    if statement == "lemma-2-2":
        return [verify_lemma_2_2(group, table=table, seed=cfg.seed, max_order=cfg.lemma22_max_order)]
    if statement == "lemma-4-1":
        return [verify_lemma_4_1_all(group, table=table, seed=cfg.seed, max_order=cfg.lemma41_max_order)]
    if statement == "lemma-5-1":
        return [verify_lemma_5_1(group, table=table, seed=cfg.seed)]
    if statement == "theorem-b":
        return [verify_theorem_b(group, table=table, seed=cfg.seed)]
    if statement == "conjecture-scan":
        return [verify_conjecture_scan(group, table=table, seed=cfg.seed)]
    raise ValueError(f"unknown statement {statement!r}")


def _check_expectations(entry: CorpusEntry, desc: Descriptor, cache: TableCache, cfg: Config, reports: list[VerificationReport]) -> list[dict]:
    exp = entry.expect
    failures: list[dict] = []
    if not exp:
        return failures
    is_example = desc.kind == "example"
    table_backed = (not is_example) or ("table" in entry.methods)

    def mismatch(fact: str, expected, got):
        failures.append({"entry": entry.name, "fact": fact, "expected": expected, "got": got})

    if "order" in exp:
        got = ExampleSpec(*desc.ints).group_order if is_example else cache.group(desc).order
        if got != int(exp["order"]):
            mismatch("order", int(exp["order"]), got)
    if table_backed and ("classes" in exp or "degrees" in exp or "degree_counts" in exp or "etas" in exp):
        table = cache.table(desc)
        if "classes" in exp and table.conj.num_classes != int(exp["classes"]):
            mismatch("classes", int(exp["classes"]), table.conj.num_classes)
        if "degrees" in exp:
            got = sorted(int(d) for d in table.degrees)
            want = sorted(int(d) for d in exp["degrees"])
            if got != want:
                mismatch("degrees", want, got)
        if "degree_counts" in exp:
            want = {int(d): int(c) for d, c in exp["degree_counts"]}
            if table.degree_multiset() != want:
                mismatch("degree_counts", want, table.degree_multiset())
        for spec_eta in exp.get("etas", []):
            i, j = int(spec_eta["i"]), int(spec_eta["j"])
            got = eta_op(table.row(i), table.row(j), table)
            if got != int(spec_eta["eta"]):
                mismatch(f"eta({i},{j})[{spec_eta.get('tag', '')}]", int(spec_eta["eta"]), got)
    if "example_eta" in exp and is_example:
        want = int(exp["example_eta"])
        for r in reports:
            if r.statement == "example" and r.status == "pass":
                got = r.details.get("eta", r.details.get("orbit_count"))
                if got != want:
                    mismatch(f"example_eta[{exp.get('example_eta_tag', '')}]", want, got)
    return failures


def run_entry(
    entry: CorpusEntry,
    cfg: Config,
    cache: TableCache,
    statements: tuple[str, ...] = STATEMENTS,
    check_expectations: bool = True,
) -> EntryResult:
    desc = parse_descriptor(entry.descriptor)
    reports: list[VerificationReport] = []
    for stmt in statements:
        reports.extend(_statement_reports(stmt, entry, desc, cache, cfg))
    failures = _check_expectations(entry, desc, cache, cfg, reports) if check_expectations else []
    return EntryResult(entry=entry, reports=reports, expectation_failures=failures)


def run_corpus(
    entries: list[CorpusEntry],
    cfg: Config,
    cache: TableCache | None = None,
    base_dir: Path | None = None,
    statements: tuple[str, ...] = STATEMENTS,
    check_expectations: bool = True,
) -> list[EntryResult]:
    cache = cache if cache is not None else TableCache(cfg, base_dir)
    if cfg.jobs <= 1 or len(entries) <= 1:
        return [run_entry(e, cfg, cache, statements, check_expectations) for e in entries]
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = [
            pool.submit(run_entry, e, cfg, cache, statements, check_expectations)
            for e in entries
        ]
        return [f.result() for f in futures]
