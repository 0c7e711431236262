"""Evaluation measures: precision@k and background-normalized precision."""

from __future__ import annotations

from dataclasses import dataclass, field

from projsearch.store.store import ProjectStore, QueryRecord


class InsufficientLabels(ValueError):
    pass


def precision_at_k(record: QueryRecord, k: int = 10) -> float:
    """Percent of the first `k` results labeled relevant.

    Requires at least `k` labels on the record; unlabeled docs among the
    first `k` count as not relevant.
    """
    if len(record.labels) < k:
        raise InsufficientLabels(
            f"{record.query_id} has {len(record.labels)} labels, needs {k}"
        )
    top = record.result_keys[:k]
    relevant = sum(1 for key in top if record.labels.get(key) == "relevant")
    return 100.0 * relevant / k


def normalize_precision(qp: float, rsb: int, max_rsb: int) -> float:
    """Scale a precision by max_rsb/rsb to correct evaluator-background
    skew (rsb = subjects able to judge relevance for that engine)."""
    if rsb == 0:
        raise ZeroDivisionError("rsb must be non-zero")
    return max_rsb * qp / rsb


@dataclass
class MetricsReport:
    per_query: dict[str, float] = field(default_factory=dict)
    mode_means: dict[str, float] = field(default_factory=dict)
    normalized_mode_means: dict[str, float] = field(default_factory=dict)
    k: int = 10

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "per_query": self.per_query,
            "mode_means": self.mode_means,
            "normalized_mode_means": self.normalized_mode_means,
        }


def build_metrics(
    store: ProjectStore, k: int = 10, rsb: dict[str, int] | None = None
) -> MetricsReport:
    """precision@k for every record with enough labels, plus per-mode means.

    `rsb` maps a mode to its count of subjects with the background to judge
    it; when given, each mode mean is also reported scaled by max/own count.
    """
    report = MetricsReport(k=k)
    by_mode: dict[str, list[float]] = {}
    for record in store.list_queries():
        try:
            value = precision_at_k(record, k)
        except InsufficientLabels:
            continue
        report.per_query[record.query_id] = value
        by_mode.setdefault(record.mode, []).append(value)
    report.mode_means = {
        mode: sum(vals) / len(vals) for mode, vals in sorted(by_mode.items())
    }
    if rsb:
        top = max(rsb.values())
        report.normalized_mode_means = {
            mode: normalize_precision(mean, rsb[mode], top)
            for mode, mean in report.mode_means.items()
            if mode in rsb
        }
    return report
