"""
Detection package initialization
"""

from .events import DetectedEvent, RISING, FALLING, MAIN, MACRO, MICRO
from .wamma import (
    DetectorConfig,
    WindowState,
    WammaDetector,
    window_measurements,
    margins_steady,
    trend_fraction,
    adjust_margins,
    cusum_event_check,
    macro_screen,
    micro_screen,
    merge_unsettled_runs,
    update_threshold,
    detect_events,
)
from .baselines import (
    StepChangeConfig,
    WmConfig,
    CusumConfig,
    step_change_detect,
    wm_fixed_detect,
    cusum_detect,
)
from .registry import DETECTORS, build_config, run_detector

__all__ = [
    "DetectedEvent",
    "RISING",
    "FALLING",
    "MAIN",
    "MACRO",
    "MICRO",
    "DetectorConfig",
    "WindowState",
    "WammaDetector",
    "window_measurements",
    "margins_steady",
    "trend_fraction",
    "adjust_margins",
    "cusum_event_check",
    "macro_screen",
    "micro_screen",
    "merge_unsettled_runs",
    "update_threshold",
    "detect_events",
    "StepChangeConfig",
    "WmConfig",
    "CusumConfig",
    "step_change_detect",
    "wm_fixed_detect",
    "cusum_detect",
    "DETECTORS",
    "build_config",
    "run_detector",
]
