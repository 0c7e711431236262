"""Simulation harness: synthetic corpora, drift and suggestion experiments."""

from .corpus import ConfigError, Corpus, CorpusSpec, SimUser, SyntheticTopic, build_corpus
from .drift import DRIFT_MODES, DriftConfig, run_drift_experiment
from .report import DriftReport, PointStat, SuggestionReport, point_stat
from .suggestion import (
    POLICY_SEARCH_ONLY,
    POLICY_SUGGESTION_AND_SEARCH,
    POLICY_SUGGESTION_ONLY,
    SUGGESTION_POLICIES,
    SuggestionSimConfig,
    run_suggestion_experiment,
)

__all__ = [
    "ConfigError",
    "Corpus",
    "CorpusSpec",
    "DRIFT_MODES",
    "DriftConfig",
    "DriftReport",
    "POLICY_SEARCH_ONLY",
    "POLICY_SUGGESTION_AND_SEARCH",
    "POLICY_SUGGESTION_ONLY",
    "PointStat",
    "SUGGESTION_POLICIES",
    "SimUser",
    "SuggestionReport",
    "SuggestionSimConfig",
    "SyntheticTopic",
    "build_corpus",
    "point_stat",
    "run_drift_experiment",
    "run_suggestion_experiment",
]
