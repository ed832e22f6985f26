"""Serialization of verification reports and table exports.

Report files are byte-identical across runs with the same configuration:
timings are zeroed unless explicitly enabled, dict keys are sorted, and all
ordering comes from corpus/statement order.
"""

from __future__ import annotations

import json
from pathlib import Path

from .characters import CharacterTable
from .verifiers import VerificationReport

__all__ = [
    "reports_to_json",
    "reports_to_csv",
    "report_text_lines",
    "table_export_dict",
    "table_export_json",
    "table_export_csv",
    "sanitize_for_filename",
]


def _stable_dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def reports_to_json(reports: list[VerificationReport], include_timings: bool = False) -> str:
    return _stable_dumps({"reports": [r.as_dict(include_timings) for r in reports]})


def reports_to_csv(reports: list[VerificationReport], include_timings: bool = False) -> str:
    lines = ["group,statement,status,witness_count,detail"]
    for r in reports:
        d = r.as_dict(include_timings)
        detail = json.dumps(
            {k: v for k, v in d["details"].items()},
            sort_keys=True,
            ensure_ascii=False,
        ).replace('"', "'")
        lines.append(f'{r.group},{r.statement},{r.status},{len(r.witnesses)},"{detail}"')
    return "\n".join(lines) + "\n"


def report_text_lines(report: VerificationReport, include_timings: bool = False) -> list[str]:
    head = f"{report.status.upper():7s} {report.statement:18s} {report.group}"
    if include_timings:
        head += f"  ({report.elapsed_ms:.0f} ms)"
    lines = [head]
    reason = report.details.get("reason")
    if reason:
        lines.append(f"        reason: {reason}")
    hist = report.details.get("eta_histogram")
    if hist:
        lines.append(f"        eta histogram: {hist}")
    for w in report.witnesses[:8]:
        lines.append(f"        witness: {json.dumps(w, sort_keys=True)}")
    if len(report.witnesses) > 8:
        lines.append(f"        ... {len(report.witnesses) - 8} more witnesses")
    return lines


def table_export_dict(table: CharacterTable) -> dict:
    """Class metadata plus rows of serialized exact cyclotomic values."""
    conj = table.conj
    e = table.conductor
    red = table.reduced3()
    classes = [
        {
            "index": c,
            "size": int(conj.sizes[c]),
            "representative": int(conj.reps[c]),
            "element_order": int(conj.rep_orders[c]),
        }
        for c in range(conj.num_classes)
    ]
    rows = []
    for r in range(table.num_rows):
        values = [
            {"conductor": e, "coeffs": [[int(x), 1] for x in red[r, c]]}
            for c in range(conj.num_classes)
        ]
        rows.append({"degree": int(table.degrees[r]), "values": values})
    return {
        "group": table.group.name,
        "order": table.group.order,
        "conductor": e,
        "num_classes": conj.num_classes,
        "classes": classes,
        "irreducibles": rows,
    }


def table_export_json(table: CharacterTable) -> str:
    return _stable_dumps(table_export_dict(table))


def table_export_csv(table: CharacterTable) -> str:
    """Display-only rendering: complex approximations, flagged as lossy."""
    conj = table.conj
    lines = [
        "# complex values below are display-only floating approximations (lossy);"
        " use the JSON export for exact values",
        "degree," + ",".join(f"class{c}(size {int(conj.sizes[c])})" for c in range(conj.num_classes)),
    ]
    for r in range(table.num_rows):
        row = table.row(r)
        vals = []
        for c in range(conj.num_classes):
            z = row.value(c).approx_complex()
            vals.append(f"{z.real:.6g}{z.imag:+.6g}j")
        lines.append(f"{int(table.degrees[r])}," + ",".join(vals))
    return "\n".join(lines) + "\n"


def sanitize_for_filename(text: str) -> str:
    out = []
    for ch in text:
        out.append(ch if ch.isalnum() or ch in "-._" else "_")
    return "".join(out)


def write_text_file(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")
