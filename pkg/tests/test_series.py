"""
Unit tests for PowerSeries and per-sample statistics
"""

import numpy as np
import pytest

from src.core.series import PowerSeries, RunningStats, diff_series, sign_of, window_stats
from src.utils.errors import ArgumentError, RangeError


@pytest.fixture
def step():
    """20 Hz step 0 -> 1000 at index 10"""
    return PowerSeries(np.r_[np.zeros(10), np.full(10, 1000.0)], 20.0)


def test_series_validation():
    """Test rate and finiteness checks"""
    with pytest.raises(ArgumentError):
        PowerSeries(np.zeros(3), 0)
    with pytest.raises(ArgumentError):
        PowerSeries(np.array([1.0, np.nan]), 20.0)


def test_series_is_read_only(step):
    """Test samples cannot be modified in place"""
    with pytest.raises(ValueError):
        step.samples[0] = 5.0


def test_time_of_origin():
    """Test sample times start at the origin"""
    series = PowerSeries(np.zeros(100), 20.0, origin_time=10.0)

    assert series.time_of(20) == pytest.approx(11.0)
    assert series.time_of(0) == 10.0


def test_sign_of():
    """Test sign classification"""
    assert sign_of(-3.2) == -1
    assert sign_of(0) == 0
    assert sign_of(5.0) == 1


def test_diff_series_values():
    """Test first differences and signs"""
    series = PowerSeries(np.array([100.0, 105.0, 103.0]), 20.0)
    deltas = diff_series(series, 1, 2)

    assert [d.d for d in deltas] == [5.0, -2.0]
    assert [d.sign for d in deltas] == [1, -1]
    assert [d.index for d in deltas] == [1, 2]


def test_diff_series_constant():
    """Test a constant series gives zero deltas"""
    deltas = diff_series(PowerSeries(np.zeros(3), 20.0), 1, 2)

    assert [d.d for d in deltas] == [0.0, 0.0]
    assert [d.sign for d in deltas] == [0, 0]


def test_diff_series_step(step):
    """Test a single step gives one nonzero delta"""
    deltas = diff_series(step, 1, len(step) - 1)
    nonzero = [d for d in deltas if d.d != 0]

    assert len(nonzero) == 1
    assert nonzero[0].index == 10
    assert nonzero[0].d == 1000.0


def test_diff_series_cumsum_reconstructs():
    """Test cumulative deltas rebuild the samples"""
    rng = np.random.default_rng(3)
    series = PowerSeries(rng.normal(500, 50, 50), 20.0)
    deltas = diff_series(series, 5, 40)
    rebuilt = series.samples[4] + np.cumsum([d.d for d in deltas])

    assert np.allclose(rebuilt, series.samples[5:41])


def test_diff_series_range_errors(step):
    """Test invalid ranges are rejected"""
    with pytest.raises(RangeError):
        diff_series(step, 0, 5)
    with pytest.raises(RangeError):
        diff_series(step, 5, 20)
    with pytest.raises(RangeError):
        diff_series(step, 6, 5)


def test_window_stats():
    """Test mean and population std"""
    assert window_stats(PowerSeries(np.array([10.0, 10.0, 10.0]), 20.0), 0, 2) == (10.0, 0.0)
    assert window_stats(PowerSeries(np.array([0.0, 20.0]), 20.0), 0, 1) == (10.0, 10.0)


def test_window_stats_gaussian():
    """Test statistics of a large Gaussian sample"""
    rng = np.random.default_rng(11)
    series = PowerSeries(rng.normal(1027, 5.2, 1200), 20.0)
    mean, std = window_stats(series, 0, 1199)

    assert abs(mean - 1027) < 0.5
    assert abs(std - 5.2) < 0.5


def test_running_stats_matches_numpy():
    """Test chunked merging equals a single pass"""
    rng = np.random.default_rng(5)
    values = rng.normal(0, 103, 1000)
    stats = RunningStats()
    for chunk in np.array_split(values, 7):
        stats.update(chunk)

    assert stats.n == 1000
    assert stats.mean == pytest.approx(values.mean())
    assert stats.std == pytest.approx(values.std())

    stats.reset()
    assert stats.std == 0.0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
