"""
Fixed-parameter reference detectors: step-change, window with margins, windowed CUSUM
"""

from dataclasses import dataclass
from typing import List

import pandas as pd

from src.core.keypoints import locate_keypoints
from src.detection.events import MAIN, DetectedEvent, direction_of
from src.utils.errors import ArgumentError
from src.utils.logging import get_logger

logger = get_logger("detection.baselines")


@dataclass(frozen=True)
class StepChangeConfig:
    r: float
    p_thre: float

    def validate(self):
        if self.r <= 0 or self.p_thre <= 0:
            raise ArgumentError("step-change needs r > 0 and p_thre > 0")


@dataclass(frozen=True)
class WmConfig:
    r_d: float
    r_f: float
    r_m: float
    p_thre: float

    def validate(self):
        if min(self.r_d, self.r_f, self.r_m, self.p_thre) <= 0:
            raise ArgumentError("window-with-margins parameters must all be positive")
        if self.r_m >= self.r_d:
            raise ArgumentError("r_m must be smaller than r_d")


@dataclass(frozen=True)
class CusumConfig:
    r: float
    p_thre: float

    def validate(self):
        if self.r <= 0 or self.p_thre <= 0:
            raise ArgumentError("CUSUM needs r > 0 and p_thre > 0")


def _samples(seconds, rate):
    return max(1, int(round(seconds * rate)))


def _make_event(series, lo, hi, pre, post, p_thre, previous_end):
    """Locate keypoints in [lo, hi] and build an event after previous_end"""
    lo = max(lo, previous_end + 1, 0)
    hi = min(hi, len(series) - 1)
    if lo > hi:
        return None
    kp = locate_keypoints(series, None, pre, post, p_thre, span=(lo, hi))
    spike = kp.spike[0] if kp.start[0] <= kp.spike[0] <= kp.end[0] else None
    return DetectedEvent(
        start=kp.start[0],
        spike=spike,
        end=kp.end[0],
        direction=direction_of(pre, post),
        pre_mean=pre,
        post_mean=post,
        provenance=MAIN,
    )


class StepChangeDetector:
    """Transient-passing step change: windowed means drift away from the steady reference"""

    def __init__(self, config):
        self.logger = logger
        self.config = config

    def detect_events(self, series) -> List[DetectedEvent]:
        """
        Compare each trailing windowed mean with the steady reference;
        a transient lasts until two consecutive windows agree or one
        window length has passed

        Args:
            series: PowerSeries

        Returns:
            list of DetectedEvent
        """
        cfg = self.config
        cfg.validate()
        w = _samples(cfg.r, series.rate)
        n = len(series)
        if n < 2 * w:
            self.logger.warning(f"series of {n} samples shorter than two windows ({2 * w}); no events")
            return []

        means = pd.Series(series.samples).rolling(window=w).mean().to_numpy()
        events = []
        reference = means[w - 1]
        transient_from = None
        previous_end = -1
        for i in range(w, n):
            if transient_from is None:
                if abs(means[i] - reference) > cfg.p_thre:
                    transient_from = i
                continue
            settled = i - w >= w - 1 and abs(means[i] - means[i - w]) <= cfg.p_thre
            # a transient never outlasts one window
            if settled or i - transient_from >= w:
                post = means[i]
                event = _make_event(series, transient_from - w, i, reference, post, cfg.p_thre, previous_end)
                if event is not None and abs(post - reference) > cfg.p_thre:
                    events.append(event)
                    previous_end = event.end
                reference = post
                transient_from = None

        self.logger.info(f"Step-change found {len(events)} events")
        return events


class WindowMarginsDetector:
    """Window with fixed margins; a secondary window places the change inside flagged windows"""

    def __init__(self, config):
        self.logger = logger
        self.config = config

    def _boundary(self, values, lo, hi, n_f):
        """Index in (lo, hi] with the largest jump between the N_f-sample blocks around it"""
        best, best_gap = lo + 1, -1.0
        for k in range(lo + 1, hi + 1):
            left = values[max(lo, k - n_f):k].mean()
            right = values[k:min(hi + 1, k + n_f)].mean()
            gap = abs(right - left)
            if gap > best_gap:
                best, best_gap = k, gap
        return best

    def detect_events(self, series) -> List[DetectedEvent]:
        """
        Slide the primary window; flag it when |mean(right margin) - mean(left margin)| > p_thre

        Args:
            series: PowerSeries

        Returns:
            list of DetectedEvent
        """
        cfg = self.config
        cfg.validate()
        n_d = _samples(cfg.r_d, series.rate)
        n_f = _samples(cfg.r_f, series.rate)
        n_m = _samples(cfg.r_m, series.rate)
        x = series.samples
        n = len(x)
        if n < n_d:
            self.logger.warning(f"series of {n} samples shorter than the primary window ({n_d}); no events")
            return []

        events = []
        previous_end = -1
        a = 0
        while a + n_d <= n:
            hi = a + n_d - 1
            mu_left = x[a:a + n_m].mean()
            mu_right = x[hi - n_m + 1:hi + 1].mean()
            if abs(mu_right - mu_left) <= cfg.p_thre:
                a = hi - n_m + 1
                continue

            k = self._boundary(x, a, hi, n_f)
            pre = float(x[max(a, k - n_f):k].mean())
            post = float(x[k:min(hi + 1, k + n_f)].mean())
            event = _make_event(series, max(a, k - n_f), min(hi, k + n_f - 1), pre, post, cfg.p_thre, previous_end)
            if event is not None:
                events.append(event)
                previous_end = event.end
            a = hi

        self.logger.info(f"Window-with-margins found {len(events)} events")
        return events


class WindowedCusumDetector:
    """Two-sided CUSUM of deviations from the trailing window mean, reset after each alarm"""

    def __init__(self, config):
        self.logger = logger
        self.config = config

    def detect_events(self, series) -> List[DetectedEvent]:
        """
        Accumulate S+ and S- around the rolling mean; alarm at the first
        crossing of p_thre, then restart once the window holds only new samples

        Args:
            series: PowerSeries

        Returns:
            list of DetectedEvent
        """
        cfg = self.config
        cfg.validate()
        w = _samples(cfg.r, series.rate)
        x = series.samples
        n = len(x)
        if n <= w:
            self.logger.warning(f"series of {n} samples not longer than the window ({w}); no events")
            return []

        # mean of the w samples before i
        trailing = pd.Series(x).rolling(window=w).mean().shift(1).to_numpy()
        events = []
        previous_end = -1
        s_plus = s_minus = 0.0
        i = w
        while i < n:
            deviation = x[i] - trailing[i]
            s_plus = max(0.0, s_plus + deviation)
            s_minus = max(0.0, s_minus - deviation)
            if s_plus > cfg.p_thre or s_minus > cfg.p_thre:
                pre = float(trailing[i])
                post = float(x[i:min(n, i + w)].mean())
                event = _make_event(series, i - w, min(n - 1, i + w - 1), pre, post, cfg.p_thre, previous_end)
                if event is not None:
                    events.append(event)
                    previous_end = event.end
                s_plus = s_minus = 0.0
                i += w
                continue
            i += 1

        self.logger.info(f"CUSUM found {len(events)} events")
        return events


def step_change_detect(series, cfg) -> List[DetectedEvent]:
    return StepChangeDetector(cfg).detect_events(series)


def wm_fixed_detect(series, cfg) -> List[DetectedEvent]:
    return WindowMarginsDetector(cfg).detect_events(series)


def cusum_detect(series, cfg) -> List[DetectedEvent]:
    return WindowedCusumDetector(cfg).detect_events(series)
