"""Curated litmus tests with frozen expectations.

``goldens.json`` records, per (file, architecture), the number of normal
executions, the set of final observations and the condition verdict.  The
values were computed by brute-force enumeration (every execution, no
pruning) and each entry carries a short note on where it comes from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..lang import Litmus, parse_litmus


@dataclass(frozen=True)
class GoldenCase:
    file: str
    arch: str
    normal_count: int
    observations: frozenset  # of sorted (name, value) tuples
    condition_holds: bool
    note: str

    def litmus(self) -> Litmus:
        return load(self.file)


def _root():
    return resources.files(__package__)


def litmus_files() -> list[str]:
    return sorted(p.name for p in _root().iterdir() if p.name.endswith(".lit"))


def load(name: str) -> Litmus:
    return parse_litmus(_root().joinpath(name).read_text(encoding="utf-8"))


def corpus_cases() -> list[GoldenCase]:
    data = json.loads(_root().joinpath("goldens.json").read_text(encoding="utf-8"))
    return [
        GoldenCase(
            file=c["file"],
            arch=c["arch"],
            normal_count=c["normal_count"],
            observations=frozenset(tuple(sorted(o.items())) for o in c["observations"]),
            condition_holds=c["condition_holds"],
            note=c["note"],
        )
        for c in data["cases"]
    ]
