"""Run configuration with environment overrides (PCHAR_* variables)."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path

__all__ = ["Config", "ENV_PREFIX"]

ENV_PREFIX = "PCHAR_"


@dataclass(frozen=True)
class Config:
    element_cap: int = 200_000
    table_budget_s: float = 120.0
    seed: int = 0
    jobs: int = 1
    out_dir: Path | None = None
    report_format: str = "json"  # json | csv | text
    include_timings: bool = False
    max_table_order: int = 20_000
    lemma22_max_order: int = 2_187
    lemma41_max_order: int = 243

    def __post_init__(self):
        if self.element_cap < 1:
            raise ValueError("element cap must be at least 1")
        if self.table_budget_s <= 0:
            raise ValueError("table budget must be positive")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.report_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown report format {self.report_format!r}")

    def with_env_overrides(self, env: dict | None = None) -> "Config":
        env = os.environ if env is None else env
        updates = {}
        mapping = {
            "SEED": ("seed", int),
            "CAP": ("element_cap", int),
            "BUDGET_S": ("table_budget_s", float),
            "JOBS": ("jobs", int),
            "FORMAT": ("report_format", str),
            "OUT": ("out_dir", Path),
            "TIMINGS": ("include_timings", lambda s: s.lower() in ("1", "true", "yes")),
        }
        for suffix, (field_name, conv) in mapping.items():
            raw = env.get(ENV_PREFIX + suffix)
            if raw is not None and raw != "":
                updates[field_name] = conv(raw)
        return replace(self, **updates) if updates else self
