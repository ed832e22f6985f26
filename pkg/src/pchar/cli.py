"""Command-line interface: pchar table | eta | verify | corpus."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .characters import decompose, product
from .config import Config
from .corpus import (
    STATEMENTS,
    TableCache,
    default_corpus_path,
    load_corpus,
    run_corpus,
    run_entry,
    CorpusEntry,
)
from .descriptors import parse_descriptor
from .errors import GroupFileError, NotACharacterError, ResourceLimitError, TableConsistencyError
from .reporting import (
    report_text_lines,
    reports_to_csv,
    reports_to_json,
    sanitize_for_filename,
    table_export_csv,
    table_export_json,
    write_text_file,
)

_USER_ERRORS = (
    ValueError,
    GroupFileError,
    NotACharacterError,
    ResourceLimitError,
    TableConsistencyError,
    OSError,
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["json", "csv", "text"], default=None, help="report format")
    parser.add_argument("--out", type=Path, default=None, help="output directory for artifacts")
    parser.add_argument("--seed", type=int, default=None, help="table-splitting seed")
    parser.add_argument("--cap", type=int, default=None, help="element-count cap")
    parser.add_argument("--budget-s", type=float, default=None, help="table time budget in seconds")
    parser.add_argument("--jobs", type=int, default=None, help="parallel corpus entries")
    parser.add_argument("--timings", action="store_true", help="include timings in report files")


def _config_from(args: argparse.Namespace) -> Config:
    cfg = Config().with_env_overrides()
    updates = {}
    if args.format is not None:
        updates["report_format"] = args.format
    if args.out is not None:
        updates["out_dir"] = args.out
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.cap is not None:
        updates["element_cap"] = args.cap
    if args.budget_s is not None:
        updates["table_budget_s"] = args.budget_s
    if args.jobs is not None:
        updates["jobs"] = args.jobs
    if args.timings:
        updates["include_timings"] = True
    return replace(cfg, **updates) if updates else cfg


def _degree_multiset_str(table) -> str:
    return " ".join(f"{d}^{c}" if c > 1 else str(d) for d, c in sorted(table.degree_multiset().items()))


def cmd_table(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    desc = parse_descriptor(args.descriptor)
    cache = TableCache(cfg, base_dir=Path.cwd())
    table = cache.table(desc)
    print(f"group {desc.canonical()}: order {table.group.order}, {table.conj.num_classes} classes")
    print(f"degrees: {_degree_multiset_str(table)}")
    if cfg.out_dir is not None:
        stem = "table-" + sanitize_for_filename(desc.canonical())
        if cfg.report_format in ("json", "text"):
            write_text_file(cfg.out_dir / f"{stem}.json", table_export_json(table))
            print(f"wrote {cfg.out_dir / (stem + '.json')}")
        if cfg.report_format == "csv":
            write_text_file(cfg.out_dir / f"{stem}.csv", table_export_csv(table))
            print(f"wrote {cfg.out_dir / (stem + '.csv')}")
        if args.emit_group:
            from .groupfile import group_to_table_text

            gpath = cfg.out_dir / ("group-" + sanitize_for_filename(desc.canonical()) + ".group")
            write_text_file(gpath, group_to_table_text(table.group))
            print(f"wrote {gpath}")
    return 0


def cmd_eta(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    desc = parse_descriptor(args.descriptor)
    cache = TableCache(cfg, base_dir=Path.cwd())
    table = cache.table(desc)
    i, j = args.i, args.j
    if not (0 <= i < table.num_rows and 0 <= j < table.num_rows):
        raise ValueError(f"row indices must lie in 0..{table.num_rows - 1}, got ({i}, {j})")
    dec = decompose(product(table.row(i), table.row(j)), table)
    print(f"eta(row {i}, row {j}) = {dec.support_size} on {desc.canonical()}")
    for r, m in dec.pairs:
        print(f"  constituent row {r} (degree {int(table.degrees[r])}) multiplicity {m}")
    if cfg.out_dir is not None:
        payload = {
            "group": desc.canonical(),
            "i": i,
            "j": j,
            "eta": dec.support_size,
            "constituents": [{"row": r, "degree": int(table.degrees[r]), "multiplicity": m} for r, m in dec.pairs],
        }
        path = cfg.out_dir / f"eta-{sanitize_for_filename(desc.canonical())}-{i}-{j}.json"
        write_text_file(path, json.dumps(payload, sort_keys=True, indent=2) + "\n")
        print(f"wrote {path}")
    return 0


def _emit_reports(reports, cfg: Config, stem: str) -> None:
    if cfg.out_dir is None:
        return
    if cfg.report_format == "json":
        write_text_file(cfg.out_dir / f"{stem}.json", reports_to_json(reports, cfg.include_timings))
    elif cfg.report_format == "csv":
        write_text_file(cfg.out_dir / f"{stem}.csv", reports_to_csv(reports, cfg.include_timings))
    else:
        lines = []
        for r in reports:
            lines.extend(report_text_lines(r, cfg.include_timings))
        write_text_file(cfg.out_dir / f"{stem}.txt", "\n".join(lines) + "\n")


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    statement = args.statement
    if statement not in STATEMENTS:
        raise ValueError(f"unknown statement {statement!r}; choose from {', '.join(STATEMENTS)}")
    if args.p is not None or args.m is not None:
        if args.p is None or args.m is None:
            raise ValueError("--p and --m must be given together")
        target_desc = f"example:{args.p},{args.m}"
    elif args.target is None:
        raise ValueError("verify needs a group descriptor, a corpus file, or --p/--m")
    else:
        target_desc = args.target

    reports = []
    path = Path(target_desc)
    if target_desc.endswith(".toml") and path.is_file():
        entries, base = load_corpus(path)
        cache = TableCache(cfg, base_dir=base)
        results = run_corpus(entries, cfg, cache=cache, statements=(statement,), check_expectations=False)
        for res in results:
            reports.extend(res.reports)
    else:
        desc = parse_descriptor(target_desc)
        entry = CorpusEntry(name=desc.canonical(), descriptor=target_desc)
        cache = TableCache(cfg, base_dir=Path.cwd())
        res = run_entry(entry, cfg, cache, statements=(statement,), check_expectations=False)
        reports.extend(res.reports)

    for r in reports:
        for line in report_text_lines(r, cfg.include_timings):
            print(line)
    _emit_reports(reports, cfg, f"verify-{sanitize_for_filename(statement)}")
    return 1 if any(r.status == "fail" for r in reports) else 0


def cmd_corpus(args: argparse.Namespace) -> int:
    cfg = _config_from(args)
    if args.corpus == "default":
        corpus_path = default_corpus_path()
    else:
        corpus_path = Path(args.corpus)
    entries, base = load_corpus(corpus_path)
    cache = TableCache(cfg, base_dir=base)
    results = run_corpus(entries, cfg, cache=cache)

    short = {"pass": "P", "fail": "F", "skipped": "s"}
    width = max((len(e.name) for e in entries), default=4)
    print(f"{'entry':<{width}}  " + "  ".join(s[:12] for s in STATEMENTS))
    all_reports = []
    failures = []
    for res in results:
        by_stmt = {}
        for r in res.reports:
            by_stmt.setdefault(r.statement, []).append(r.status)
        cells = []
        for s in STATEMENTS:
            states = by_stmt.get(s, [])
            if not states:
                cells.append("-")
            elif "fail" in states:
                cells.append("F")
            elif all(x == "skipped" for x in states):
                cells.append("s")
            else:
                cells.append("P")
        print(f"{res.entry.name:<{width}}  " + "  ".join(f"{c:<12}" for c in cells))
        all_reports.extend(res.reports)
        failures.extend(res.expectation_failures)

    for f in failures:
        print(f"EXPECTATION MISMATCH: {json.dumps(f, sort_keys=True)}")
    n_fail = sum(1 for r in all_reports if r.status == "fail")
    print(f"{len(all_reports)} reports: {sum(1 for r in all_reports if r.status == 'pass')} pass, "
          f"{n_fail} fail, {sum(1 for r in all_reports if r.status == 'skipped')} skipped; "
          f"{len(failures)} expectation mismatches")

    out_dir = cfg.out_dir if cfg.out_dir is not None else Path("pchar-out")
    cfg_out = replace(cfg, out_dir=out_dir)
    write_text_file(out_dir / "reports.json", reports_to_json(all_reports, cfg.include_timings))
    write_text_file(out_dir / "summary.csv", reports_to_csv(all_reports, cfg.include_timings))
    if failures:
        write_text_file(
            out_dir / "expectation-failures.json",
            json.dumps({"failures": failures}, sort_keys=True, indent=2) + "\n",
        )
    print(f"wrote {out_dir / 'reports.json'} and {out_dir / 'summary.csv'}")
    return 1 if (n_fail or failures) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pchar",
        description="Exact character tables, products of irreducible characters, "
        "and statement verifiers for finite p-groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="compute a character table")
    p_table.add_argument("descriptor", help="group descriptor, e.g. cyclic:6 or extraspecial:3,2")
    p_table.add_argument(
        "--emit-group",
        action="store_true",
        help="also write the group itself in the reusable table file format",
    )
    _add_common(p_table)
    p_table.set_defaults(func=cmd_table)

    p_eta = sub.add_parser("eta", help="decompose a product of two table rows")
    p_eta.add_argument("descriptor")
    p_eta.add_argument("i", type=int)
    p_eta.add_argument("j", type=int)
    _add_common(p_eta)
    p_eta.set_defaults(func=cmd_eta)

    p_verify = sub.add_parser("verify", help="run one statement verifier")
    p_verify.add_argument("statement", help="one of: " + ", ".join(STATEMENTS))
    p_verify.add_argument("target", nargs="?", default=None, help="group descriptor or corpus .toml")
    p_verify.add_argument("--p", type=int, default=None, help="example construction prime")
    p_verify.add_argument("--m", type=int, default=None, help="example construction exponent parameter")
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_corpus = sub.add_parser("corpus", help="run every statement over a corpus")
    p_corpus.add_argument("corpus", nargs="?", default="default", help="corpus .toml path or 'default'")
    _add_common(p_corpus)
    p_corpus.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _USER_ERRORS as exc:
        print(f"pchar: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
