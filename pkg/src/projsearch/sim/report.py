"""Simulation result containers with table/JSON/plot-row output."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class PointStat:
    mean: float
    stderr: float
    n: int


def point_stat(values: Sequence[float]) -> PointStat:
    n = len(values)
    if n == 0:
        return PointStat(mean=float("nan"), stderr=float("nan"), n=0)
    mean = sum(values) / n
    if n < 2:
        return PointStat(mean=mean, stderr=0.0, n=n)
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return PointStat(mean=mean, stderr=math.sqrt(var / n), n=n)


@dataclass
class DriftReport:
    seeds: tuple[int, ...]
    curves: dict[str, list[PointStat]]  # mode -> per-query-index stats

    def as_dict(self) -> dict:
        return {
            "experiment": "drift",
            "seeds": list(self.seeds),
            "curves": {
                mode: [
                    {"query_index": i + 1, "mean": p.mean, "stderr": p.stderr, "n": p.n}
                    for i, p in enumerate(points)
                ]
                for mode, points in self.curves.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def plot_rows(self) -> list[tuple[int, str, float, float]]:
        rows = []
        for mode, points in sorted(self.curves.items()):
            for i, p in enumerate(points):
                rows.append((i + 1, mode, p.mean, p.stderr))
        rows.sort(key=lambda r: (r[0], r[1]))
        return rows

    def to_table(self) -> str:
        n_queries = max(len(p) for p in self.curves.values())
        header = "mode      " + "".join(f"   q{i+1}    " for i in range(n_queries))
        lines = [header, "-" * len(header)]
        for mode in sorted(self.curves):
            cells = "".join(f" {p.mean:5.1f}±{p.stderr:4.1f}" for p in self.curves[mode])
            lines.append(f"{mode:<10}{cells}")
        lines.append(f"seeds: {len(self.seeds)}  (mean precision@10 % ± standard error)")
        return "\n".join(lines)


@dataclass
class SuggestionReport:
    seeds: tuple[int, ...]
    threshold: float
    queries_to_threshold: dict[str, PointStat]
    precision_curves: dict[str, list[PointStat]]  # policy -> per-round stats

    def as_dict(self) -> dict:
        return {
            "experiment": "suggestion",
            "seeds": list(self.seeds),
            "threshold": self.threshold,
            "queries_to_threshold": {
                policy: {"mean": p.mean, "stderr": p.stderr, "n": p.n}
                for policy, p in self.queries_to_threshold.items()
            },
            "precision_curves": {
                policy: [
                    {"round": i + 1, "mean": p.mean, "stderr": p.stderr, "n": p.n}
                    for i, p in enumerate(points)
                ]
                for policy, points in self.precision_curves.items()
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def plot_rows(self) -> list[tuple[int, str, float, float]]:
        rows = []
        for policy, points in sorted(self.precision_curves.items()):
            for i, p in enumerate(points):
                rows.append((i + 1, policy, p.mean, p.stderr))
        rows.sort(key=lambda r: (r[0], r[1]))
        return rows

    def to_table(self) -> str:
        lines = [
            f"queries to reach precision@10 >= {self.threshold:.0f}%"
            f" (mean over {len(self.seeds)} seeds)",
            "-" * 58,
        ]
        for policy in sorted(self.queries_to_threshold):
            p = self.queries_to_threshold[policy]
            lines.append(f"{policy:<22} {p.mean:5.2f} ± {p.stderr:4.2f}")
        return "\n".join(lines)
