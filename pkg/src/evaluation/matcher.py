"""
Event matching against ground truth and TPP / FPP / FNP / f1 metrics
"""

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from typing import Dict, List, Optional

from src.utils.constants import METRIC_COLUMNS, PERCENT_DECIMALS
from src.utils.errors import ArgumentError
from src.utils.logging import get_logger

logger = get_logger("evaluation.matcher")


@dataclass(frozen=True)
class GroundTruthEvent:
    time: float
    label: Optional[str] = None


@dataclass(frozen=True)
class MatchReport:
    """Counts plus exact fractions; percentages rounded half-up for tables"""

    tp: int
    fp: int
    fn: int
    ed: int
    eg: int
    tpp: float
    fpp: float
    fnp: float
    f1: float

    def percentages(self) -> Dict[str, float]:
        """TPP, FPP, FNP and f1 as percentages with one decimal, half-up"""
        f1_num, f1_den = 2 * self.tp, 2 * self.tp + self.fp + self.fn
        return {
            "TPP": percent(self.tp, self.eg),
            "FPP": percent(self.fp, self.ed) if self.ed else 0.0,
            "FNP": percent(self.fn, self.eg),
            "f1": percent(f1_num, f1_den) if f1_den else 0.0,
        }

    def as_row(self) -> str:
        values = self.percentages()
        return "  ".join(f"{values[name]:5.1f}%" for name in METRIC_COLUMNS)


def percent(numerator, denominator, decimals=PERCENT_DECIMALS) -> float:
    """Exact numerator/denominator * 100, rounded half-up"""
    with localcontext() as ctx:
        ctx.prec = 50
        value = Decimal(numerator) * 100 / Decimal(denominator)
        quantum = Decimal(1).scaleb(-decimals)
        return float(value.quantize(quantum, rounding=ROUND_HALF_UP))


def compute_metrics(tp, fp, fn, ed, eg) -> MatchReport:
    """
    Metric fractions from match counts

    Args:
        tp, fp, fn: int, true positives, false positives, false negatives
        ed: int, number of detected events (tp + fp)
        eg: int, number of ground-truth events (tp + fn)

    Returns:
        MatchReport
    """
    if min(tp, fp, fn, ed) < 0:
        raise ArgumentError("counts must be non-negative")
    if eg < 1:
        raise ArgumentError("at least one ground-truth event is required")
    if tp + fp != ed or tp + fn != eg:
        raise ArgumentError(f"inconsistent counts: TP={tp} FP={fp} FN={fn} ED={ed} EG={eg}")

    denominator = tp + 0.5 * (fp + fn)
    return MatchReport(
        tp=tp, fp=fp, fn=fn, ed=ed, eg=eg,
        tpp=tp / eg,
        fpp=fp / ed if ed else 0.0,
        fnp=fn / eg,
        f1=tp / denominator if denominator else 0.0,
    )


def match_events(detected, truth: List[GroundTruthEvent], tolerance, rate, origin_time=0.0) -> MatchReport:
    """
    Greedy one-to-one matching in time order

    A detection matches the nearest unmatched truth event lying within
    [start - tolerance, end + tolerance].

    Args:
        detected: list of DetectedEvent (sample indices)
        truth: list of GroundTruthEvent (seconds)
        tolerance: float, seconds
        rate: float, sample rate used to convert indices to seconds
        origin_time: float, time of sample 0

    Returns:
        MatchReport
    """
    if tolerance < 0:
        raise ArgumentError(f"tolerance must be >= 0, got {tolerance}")

    truth_times = [event.time for event in truth]
    matched = [False] * len(truth_times)
    tp = 0
    for event in sorted(detected, key=lambda e: e.start):
        start = origin_time + event.start / rate
        end = origin_time + event.end / rate
        best, best_distance = None, None
        for k, t in enumerate(truth_times):
            if matched[k] or t < start - tolerance:
                continue
            if t > end + tolerance:
                break
            distance = max(start - t, t - end, 0.0)
            if best is None or distance < best_distance:
                best, best_distance = k, distance
        if best is not None:
            matched[best] = True
            tp += 1

    ed, eg = len(detected), len(truth_times)
    fp, fn = ed - tp, eg - tp
    logger.debug(f"matched TP={tp} FP={fp} FN={fn} (tolerance {tolerance}s)")
    if eg == 0:
        raise ArgumentError("ground truth is empty")
    return compute_metrics(tp, fp, fn, ed, eg)
