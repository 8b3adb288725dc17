"""
Named detectors for the sweep runner and the command line
"""

from dataclasses import fields
from typing import Callable, Dict, NamedTuple

from src.detection.baselines import (
    CusumConfig,
    StepChangeConfig,
    WmConfig,
    cusum_detect,
    step_change_detect,
    wm_fixed_detect,
)
from src.detection.wamma import DetectorConfig, detect_events
from src.utils.errors import ArgumentError


class DetectorSpec(NamedTuple):
    config_type: type
    run: Callable
    defaults: Dict[str, object]
    aliases: Dict[str, str]


_WAMMA_ALIASES = {"p_thre": "p_thre_init"}

DETECTORS = {
    "wamma": DetectorSpec(DetectorConfig, detect_events, {}, _WAMMA_ALIASES),
    # ablations: fixed margins / no one-margin lookaheads
    "wamma_fwa": DetectorSpec(DetectorConfig, detect_events, {"adaptive_margins": False}, _WAMMA_ALIASES),
    "wamma_fwm": DetectorSpec(DetectorConfig, detect_events, {"macro_screening": False}, _WAMMA_ALIASES),
    "step": DetectorSpec(StepChangeConfig, step_change_detect, {}, {}),
    "wm": DetectorSpec(WmConfig, wm_fixed_detect, {}, {}),
    "cusum": DetectorSpec(CusumConfig, cusum_detect, {}, {}),
}


def get_detector(name) -> DetectorSpec:
    if name not in DETECTORS:
        raise ArgumentError(f"unknown detector '{name}' (choose from {', '.join(sorted(DETECTORS))})")
    return DETECTORS[name]


def build_config(name, params):
    """
    Build a detector config from a flat parameter mapping

    Args:
        name: str, registered detector name
        params: dict of parameter name -> value (aliases accepted)

    Returns:
        the detector's config dataclass
    """
    spec = get_detector(name)
    known = {f.name for f in fields(spec.config_type)}
    values = dict(spec.defaults)
    for key, value in params.items():
        field = spec.aliases.get(key, key)
        if field not in known:
            raise ArgumentError(f"detector '{name}' has no parameter '{key}'")
        values[field] = value
    try:
        return spec.config_type(**values)
    except TypeError as exc:
        raise ArgumentError(f"detector '{name}' is missing parameters: {exc}") from exc


def run_detector(name, series, params):
    """Detect events with a named detector"""
    spec = get_detector(name)
    return spec.run(series, build_config(name, params))
