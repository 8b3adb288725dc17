"""
Core package initialization
"""

from .series import PowerSeries, SampleDelta, RunningStats, diff_series, sign_of, window_stats
from .keypoints import KeyPoints, locate_keypoints

__all__ = [
    "PowerSeries",
    "SampleDelta",
    "RunningStats",
    "KeyPoints",
    "locate_keypoints",
    "diff_series",
    "sign_of",
    "window_stats",
]
