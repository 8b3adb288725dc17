"""
Evaluation package initialization
"""

from .matcher import GroundTruthEvent, MatchReport, compute_metrics, match_events, percent
from .sweep import (
    GridRow,
    ParameterGrid,
    Combination,
    SweepResult,
    SweepRunner,
    enumerate_grid,
    sweep,
)

__all__ = [
    "GroundTruthEvent",
    "MatchReport",
    "compute_metrics",
    "match_events",
    "percent",
    "GridRow",
    "ParameterGrid",
    "Combination",
    "SweepResult",
    "SweepRunner",
    "enumerate_grid",
    "sweep",
]
