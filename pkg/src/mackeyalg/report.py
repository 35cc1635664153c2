"""Report documents: per-check records plus deterministic JSON/text output."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__

STATUSES = ("pass", "fail", "inconclusive")
PLUMBING = "plumbing"


def plain(x):
    """Convert numpy scalars/arrays and tuples into JSON-ready values."""
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return plain(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def matches(computed, expected) -> bool:
    """Exact match, except that dict expectations only constrain their own keys."""
    if isinstance(expected, dict) and isinstance(computed, dict) and expected:
        return all(k in computed and matches(computed[k], v) for k, v in expected.items())
    return computed == expected


@dataclass
class Record:
    name: str
    anchor: str
    status: str
    computed: dict
    expected: dict | None = None
    provenance: str = "none"      # manifest | theory | oracle | none
    seconds: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")
        if not self.anchor:
            raise ValueError("every record needs an anchor")

    def to_json(self, timestamps: bool = True) -> dict:
        d = {"name": self.name, "anchor": self.anchor, "status": self.status,
             "computed": plain(self.computed), "expected": plain(self.expected),
             "provenance": self.provenance}
        if timestamps:
            d["seconds"] = round(self.seconds, 4)
        return d


def timed(name, anchor, fn, expected=None, provenance="none") -> Record:
    """Run ``fn`` and judge it: with no expectation the check passes if it ran."""
    t0 = time.perf_counter()
    computed = plain(fn())
    expected = plain(expected)
    if expected is None:
        status = "pass"
    else:
        status = "pass" if matches(computed, expected) else "fail"
    if isinstance(computed, dict) and computed.get("inconclusive"):
        status = "inconclusive"
    return Record(name, anchor, status, computed, expected, provenance,
                  time.perf_counter() - t0)


@dataclass
class ReportDocument:
    command: str
    group: str | None = None
    records: list = field(default_factory=list)
    tool: str = "mackeyalg"
    version: str = __version__

    @property
    def status(self) -> str:
        states = {r.status for r in self.records}
        if "fail" in states:
            return "fail"
        if "inconclusive" in states:
            return "inconclusive"
        return "pass"

    def to_json(self, timestamps: bool = True) -> dict:
        return {"tool": self.tool, "version": self.version, "command": self.command,
                "group": self.group, "status": self.status,
                "records": [r.to_json(timestamps) for r in self.records]}

    def dumps(self, timestamps: bool = True) -> str:
        return json.dumps(self.to_json(timestamps), sort_keys=True, indent=2,
                          ensure_ascii=False) + "\n"

    def render_text(self, timestamps: bool = True) -> str:
        head = f"{self.tool} {self.version}  {self.command}"
        if self.group:
            head += f"  group={self.group}"
        lines = [head]
        for r in self.records:
            t = f"  ({r.seconds:.2f}s)" if timestamps else ""
            lines.append(f"[{r.status.upper()}] {r.name}  <{r.anchor}>{t}")
            for k, v in r.computed.items():
                lines.append(f"    {k}: {_text_value(v)}")
            if r.expected is not None and r.status != "pass":
                lines.append(f"    expected: {_text_value(r.expected)}")
        lines.append(f"overall: {self.status}")
        return "\n".join(lines) + "\n"


def _text_value(v) -> str:
    if isinstance(v, dict) and v and all(k.startswith(("[", "G/")) for k in v) and all(
            isinstance(x, int) and not isinstance(x, bool) for x in v.values()):
        # a linear combination, e.g. of spans
        return " + ".join(k if c == 1 else f"{c}·{k}" for k, c in v.items())
    if isinstance(v, dict) and not v:
        return "0"
    if isinstance(v, list) and all(isinstance(x, str) for x in v):
        return "; ".join(v) if v else "(none)"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text_value(x)}" for k, x in v.items()) + "}"
    return json.dumps(v, ensure_ascii=False) if not isinstance(v, str) else v
