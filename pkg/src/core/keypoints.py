"""
Start / spike / end keypoints of a transition
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.utils.errors import RangeError


@dataclass(frozen=True)
class KeyPoints:
    """Keypoint indices and values; degenerate when no clean departure/settle was found"""

    start: Tuple[int, float]
    spike: Tuple[int, float]
    end: Tuple[int, float]
    degenerate: bool = False


def _settle_index(values, post_mean, p_thre, lo):
    """First index >= lo from which every value stays within p_thre of post_mean"""
    outside = np.nonzero(np.abs(values[lo:] - post_mean) > p_thre)[0]
    if outside.size == 0:
        return lo
    last_outside = lo + int(outside[-1])
    if last_outside + 1 < len(values):
        return last_outside + 1
    return None


def locate_keypoints(series, event, pre_mean, post_mean, p_thre, span: Optional[Tuple[int, int]] = None):
    """
    Locate start, spike and end of a transition inside its span

    Args:
        series: PowerSeries
        event: object with start / end sample indices (DetectedEvent)
        pre_mean: float, mean of the previous steady period
        post_mean: float, mean of the next steady period
        p_thre: float, tolerance for "close to the steady mean"
        span: optional (lo, hi) search range overriding the event's own bounds

    Returns:
        KeyPoints
    """
    lo, hi = span if span is not None else (event.start, event.end)
    if lo < 0 or hi >= len(series) or lo > hi:
        raise RangeError(f"event span [{lo}, {hi}] outside series of length {len(series)}")

    values = series.samples[lo:hi + 1]
    deviation = values - pre_mean
    rising = post_mean >= pre_mean

    departed = np.nonzero(np.abs(deviation) > p_thre)[0]
    if departed.size == 0:
        return KeyPoints((lo, float(values[0])), (lo, float(values[0])), (hi, float(values[-1])), degenerate=True)
    first_departure = int(departed[0])

    degenerate = False
    settle = _settle_index(values, post_mean, p_thre, first_departure)
    if settle is None:
        settle = len(values) - 1
        degenerate = True

    # extremal deviation in the transition's own direction
    segment = deviation[first_departure:settle + 1]
    offset = int(np.argmax(segment)) if rising else int(np.argmin(segment))
    spike = first_departure + offset

    within_pre = np.nonzero(np.abs(deviation[:spike]) <= p_thre)[0]
    if within_pre.size:
        start = int(within_pre[-1])
    else:
        start = 0
        degenerate = True

    end = max(settle, spike)
    return KeyPoints(
        start=(lo + start, float(values[start])),
        spike=(lo + spike, float(values[spike])),
        end=(lo + end, float(values[end])),
        degenerate=degenerate,
    )
