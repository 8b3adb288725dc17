"""
Power series type and per-sample statistics used by every detector
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from src.utils.errors import ArgumentError, RangeError


@dataclass(frozen=True)
class PowerSeries:
    """Uniformly sampled active-power observations"""

    samples: np.ndarray
    rate: float
    origin_time: float = 0.0

    def __post_init__(self):
        values = np.asarray(self.samples, dtype=float)
        if self.rate <= 0:
            raise ArgumentError(f"rate must be > 0, got {self.rate}")
        if values.ndim != 1:
            raise ArgumentError("samples must be one-dimensional")
        if not np.all(np.isfinite(values)):
            raise ArgumentError("samples must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "samples", values)

    def __len__(self):
        return len(self.samples)

    def time_of(self, index):
        """Time in seconds of a sample index"""
        return self.origin_time + index / self.rate


@dataclass(frozen=True)
class SampleDelta:
    """One first difference d_i = o_i - o_(i-1) and its sign"""

    index: int
    d: float
    sign: int


def sign_of(d):
    """
    Sign of a power difference

    Args:
        d: float, power difference in watts

    Returns:
        int in {-1, 0, +1}
    """
    if d < 0:
        return -1
    if d > 0:
        return 1
    return 0


def _check_range(series, start, stop, min_start=0):
    if start < min_start or stop >= len(series) or start > stop:
        raise RangeError(
            f"range [{start}, {stop}] outside [{min_start}, {len(series) - 1}]"
        )


def diff_series(series, start, stop) -> List[SampleDelta]:
    """
    First differences over an inclusive index range

    Args:
        series: PowerSeries
        start: int, first index (>= 1)
        stop: int, last index (inclusive)

    Returns:
        list of SampleDelta, one per index in [start, stop]
    """
    _check_range(series, start, stop, min_start=1)
    values = series.samples
    deltas = np.diff(values[start - 1:stop + 1])
    return [
        SampleDelta(index=start + k, d=float(d), sign=sign_of(d))
        for k, d in enumerate(deltas)
    ]


def window_stats(series, start, stop) -> Tuple[float, float]:
    """
    Mean and population standard deviation over an inclusive range

    Args:
        series: PowerSeries
        start: int, first index
        stop: int, last index (inclusive)

    Returns:
        tuple (mean, std) in watts
    """
    _check_range(series, start, stop)
    window = series.samples[start:stop + 1]
    return float(np.mean(window)), float(np.std(window))


class RunningStats:
    """Streaming mean and population std, merged one chunk at a time"""

    def __init__(self):
        self.n = 0
        self.mean = 0.0
        self._m2 = 0.0

    def update(self, values):
        values = np.asarray(values, dtype=float)
        if values.size == 0:
            return
        n_b = values.size
        mean_b = float(values.mean())
        m2_b = float(((values - mean_b) ** 2).sum())
        n = self.n + n_b
        delta = mean_b - self.mean
        self.mean += delta * n_b / n
        self._m2 += m2_b + delta * delta * self.n * n_b / n
        self.n = n

    @property
    def std(self):
        if self.n == 0:
            return 0.0
        return float(np.sqrt(max(self._m2, 0.0) / self.n))

    def reset(self):
        self.n = 0
        self.mean = 0.0
        self._m2 = 0.0
