"""
Parameter grids and sweep execution
"""

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Tuple

import pandas as pd

from src.detection.registry import build_config, get_detector, run_detector
from src.evaluation.matcher import match_events
from src.utils.config import Config
from src.utils.constants import METRIC_COLUMNS
from src.utils.errors import ArgumentError
from src.utils.logging import get_logger

logger = get_logger("evaluation.sweep")


@dataclass(frozen=True)
class GridRow:
    name: str
    minimum: float
    maximum: float
    increment: float

    def values(self) -> List[float]:
        if self.increment <= 0:
            raise ArgumentError(f"increment of '{self.name}' must be > 0")
        if self.minimum > self.maximum:
            raise ArgumentError(f"min > max for '{self.name}'")
        count = int(math.floor((self.maximum - self.minimum) / self.increment + 1e-9)) + 1
        return [round(self.minimum + k * self.increment, 10) for k in range(count)]


@dataclass(frozen=True)
class ParameterGrid:
    rows: Tuple[GridRow, ...]

    @property
    def names(self):
        return [row.name for row in self.rows]

    def size(self):
        return math.prod(len(row.values()) for row in self.rows)


@dataclass(frozen=True)
class Combination:
    index: int
    params: Dict[str, float]


@dataclass(frozen=True)
class SweepRow:
    index: int
    params: Dict[str, float]
    report: object


def enumerate_grid(grid) -> List[Combination]:
    """
    Cartesian product of the grid rows, last row varying fastest

    Args:
        grid: ParameterGrid

    Returns:
        list of Combination numbered from 1
    """
    if not grid.rows:
        raise ArgumentError("parameter grid is empty")
    names = grid.names
    if len(set(names)) != len(names):
        raise ArgumentError("parameter grid repeats a parameter name")
    product = itertools.product(*(row.values() for row in grid.rows))
    return [Combination(index=k, params=dict(zip(names, values))) for k, values in enumerate(product, start=1)]


def _run_combination(job):
    detector, series, truth, tolerance, combination = job
    events = run_detector(detector, series, combination.params)
    report = match_events(events, truth, tolerance, series.rate, series.origin_time)
    return SweepRow(index=combination.index, params=combination.params, report=report)


class SweepResult:
    """Per-combination reports plus best / worst / average summaries"""

    def __init__(self, detector, rows):
        self.detector = detector
        self.rows = sorted(rows, key=lambda row: row.index)

    @property
    def best(self) -> SweepRow:
        # ties go to the lowest combination index
        return max(self.rows, key=lambda row: (row.report.f1, -row.index))

    @property
    def worst(self) -> SweepRow:
        return min(self.rows, key=lambda row: (row.report.f1, row.index))

    def f1_spread(self):
        return self.best.report.f1 - self.worst.report.f1

    def to_frame(self) -> pd.DataFrame:
        records = []
        for row in self.rows:
            record = {"index": row.index}
            record.update(row.params)
            record.update({"TP": row.report.tp, "FP": row.report.fp, "FN": row.report.fn})
            record.update(row.report.percentages())
            records.append(record)
        return pd.DataFrame(records)

    def average(self) -> Dict[str, float]:
        """Mean of each rounded metric over all combinations"""
        frame = self.to_frame()
        return {name: round(float(frame[name].mean()), 1) for name in METRIC_COLUMNS}

    def format_report(self) -> str:
        frame = self.to_frame()
        names = [column for column in frame.columns if column not in ("index", "TP", "FP", "FN", *METRIC_COLUMNS)]
        header = ["#"] + names + METRIC_COLUMNS
        lines = ["\t".join(header)]
        for row in self.rows:
            pct = row.report.percentages()
            cells = [str(row.index)] + [f"{row.params[name]:g}" for name in names]
            cells += [f"{pct[name]:.1f}" for name in METRIC_COLUMNS]
            lines.append("\t".join(cells))

        average = self.average()
        lines.append("\t".join(["avg"] + [""] * len(names) + [f"{average[name]:.1f}" for name in METRIC_COLUMNS]))
        best = self.best
        lines.append(f"# best: combination {best.index} ({', '.join(f'{k}={v:g}' for k, v in best.params.items())})"
                     f" f1={best.report.percentages()['f1']:.1f}")
        lines.append(f"# f1 spread: {self.f1_spread() * 100:.1f} points")
        return "\n".join(lines) + "\n"


class SweepRunner:
    """Run one detector over every grid combination on the same series"""

    def __init__(self, workers=None):
        self.logger = logger
        self.workers = workers or Config.SWEEP_WORKERS

    def run(self, series, truth, detector, grid, tolerance=None) -> SweepResult:
        """
        Sweep a detector over a parameter grid

        Args:
            series: PowerSeries
            truth: list of GroundTruthEvent
            detector: str, registered detector name
            grid: ParameterGrid
            tolerance: float, matching tolerance in seconds

        Returns:
            SweepResult
        """
        tolerance = Config.MATCH_TOLERANCE_S if tolerance is None else tolerance
        get_detector(detector)
        combinations = enumerate_grid(grid)
        # fail fast on unknown parameter names
        build_config(detector, combinations[0].params)

        self.logger.info(f"Sweeping {detector} over {len(combinations)} combinations ({self.workers} worker(s))")
        jobs = [(detector, series, truth, tolerance, combination) for combination in combinations]
        if self.workers > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                rows = list(pool.map(_run_combination, jobs))
        else:
            rows = [_run_combination(job) for job in jobs]

        result = SweepResult(detector, rows)
        best = result.best
        self.logger.info(f"Best combination {best.index}: f1={best.report.f1:.3f}; spread {result.f1_spread():.3f}")
        return result


def sweep(series, truth, detector, grid, tolerance=None) -> SweepResult:
    return SweepRunner().run(series, truth, detector, grid, tolerance)
