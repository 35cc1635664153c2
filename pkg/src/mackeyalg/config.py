"""Run-level configuration shared by the CLI and the scripts."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .fdalg.integral import DEFAULT_INT_RANK_CAP
from .fdalg.modules import DEFAULT_RESOLUTION_CAP
from .grpcore import DEFAULT_ORDER_CAP

FORMATS = ("text", "json")


@dataclass
class RunConfig:
    order_cap: int = DEFAULT_ORDER_CAP
    resolution_cap: int = DEFAULT_RESOLUTION_CAP
    int_rank_cap: int = DEFAULT_INT_RANK_CAP
    degree: int = 2
    timestamps: bool = True
    output: str = "text"
    manifest: str | None = None     # None: the bundled reference values

    def __post_init__(self):
        if self.output not in FORMATS:
            raise ValueError(f"unknown output format {self.output!r}")
        if self.order_cap < 1 or self.resolution_cap < 1:
            raise ValueError("caps must be positive")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")

    @classmethod
    def from_file(cls, path) -> "RunConfig":
        data = json.loads(Path(path).read_text())
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> dict:
        return asdict(self)
