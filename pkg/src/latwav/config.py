"""Runtime limits and defaults shared by the CLI and the library."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import InputFormatError

DEFAULT_CELL_BUDGET = 5_000_000


@dataclass
class Config:
    tolerance: float = 1e-10
    cascade_level_cap: int = 12
    cell_budget: int = DEFAULT_CELL_BUDGET
    enumeration_budget: int = 1 << 20
    output_dir: str = "."

    def __post_init__(self):
        if self.tolerance <= 0:
            raise InputFormatError("tolerance must be positive")
        if self.cascade_level_cap <= 0 or self.cell_budget <= 0 or self.enumeration_budget <= 0:
            raise InputFormatError("budgets and caps must be positive")

    @classmethod
    def from_file(cls, path: str | Path) -> "Config":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InputFormatError(f"{path}: unknown config keys {sorted(unknown)}")
        return cls(**data)
