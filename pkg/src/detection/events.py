"""
Detected event type shared by WAMMA and the baseline detectors
"""

from dataclasses import dataclass
from typing import Optional

RISING = "rising"
FALLING = "falling"

MAIN = "main"
MACRO = "macro"
MICRO = "micro"


@dataclass(frozen=True)
class DetectedEvent:
    """A transition period located by start, spike and end sample indices"""

    start: int
    spike: Optional[int]
    end: int
    direction: str
    pre_mean: float
    post_mean: float
    provenance: str = MAIN


def direction_of(pre_mean, post_mean):
    """Rising iff the level increases across the transition"""
    return RISING if post_mean > pre_mean else FALLING
