"""
WAMMA detector - window with adaptive margins, modified CUSUM with
sign-trend suppression, macro/micro-timescale screening and an adaptive threshold
"""

from dataclasses import dataclass, replace
from typing import List, NamedTuple, Tuple

import numpy as np

from src.core.keypoints import locate_keypoints
from src.core.series import RunningStats, diff_series, window_stats
from src.detection.events import MACRO, MAIN, MICRO, DetectedEvent, direction_of
from src.utils.constants import MACRO_ATTEMPT_LIMIT, MIN_MARGIN_SAMPLES, STD_FACTOR, TREND_MAJORITY
from src.utils.errors import ArgumentError, InsufficientDataError, RangeError
from src.utils.logging import get_logger

logger = get_logger("detection.wamma")


@dataclass(frozen=True)
class DetectorConfig:
    """WAMMA parameters; r_m and r_w are in seconds"""

    r_m: float
    r_w: float
    p_thre_init: float
    trend_majority: float = TREND_MAJORITY
    std_factor: float = STD_FACTOR
    macro_attempt_limit: int = MACRO_ATTEMPT_LIMIT
    adaptive_margins: bool = True
    macro_screening: bool = True

    def margin_samples(self, rate):
        return int(round(self.r_m * rate))

    def window_samples(self, rate):
        return int(round(self.r_w * rate))

    def validate(self, rate):
        n_m = self.margin_samples(rate)
        n_w = self.window_samples(rate)
        if n_m < MIN_MARGIN_SAMPLES:
            raise ArgumentError(f"margin must span >= {MIN_MARGIN_SAMPLES} samples, got {n_m} (r_m={self.r_m}, f={rate})")
        if n_w < 2 * n_m:
            raise ArgumentError(f"window ({n_w} samples) must be at least twice the margin ({n_m})")
        if self.p_thre_init <= 0:
            raise ArgumentError("p_thre_init must be > 0")
        if not 0.5 < self.trend_majority < 1:
            raise ArgumentError("trend_majority must lie in (0.5, 1)")
        if self.std_factor < 0:
            raise ArgumentError("std_factor must be >= 0")
        if self.macro_attempt_limit < 0:
            raise ArgumentError("macro_attempt_limit must be >= 0")


@dataclass(frozen=True)
class WindowState:
    """Border lines of both margins plus the live threshold"""

    L_l: int
    L_r: int
    R_l: int
    R_r: int
    p_thre_current: float
    s_cum: float = 0.0
    macro_extensions: int = 0


class Measurements(NamedTuple):
    dp_left: float
    dp_right: float
    mu_left: float
    mu_right: float
    dp: float


def initial_state(l_l, n_m, n_w, p_thre, r_r=None):
    """Window anchored at l_l with margins of n_m samples"""
    if r_r is None:
        r_r = l_l + n_w - 1
    return WindowState(L_l=l_l, L_r=l_l + n_m - 1, R_l=r_r - n_m + 1, R_r=r_r, p_thre_current=p_thre)


def _opposing_share(deltas, direction):
    """Share of absolute change moving against direction"""
    total = float(np.abs(deltas).sum())
    if total == 0.0:
        return 1.0
    opposing = float(np.abs(deltas[np.sign(deltas) == -direction]).sum())
    return opposing / total


def _is_directional(deltas, direction, trend_majority):
    return direction != 0 and _opposing_share(deltas, direction) < 1 - trend_majority


def _trend_share(deltas, direction):
    neg, pos = trend_fraction(deltas)
    return pos if direction > 0 else neg


def _trending(deltas, direction, trend_majority):
    """Sign majority or magnitude dominance in direction"""
    if direction == 0:
        return False
    return _trend_share(deltas, direction) > trend_majority or _is_directional(deltas, direction, trend_majority)


def _margin_moving(x, lo, hi, steady, trend_majority):
    """A margin moves when its change is directional and either beyond the threshold or trending"""
    deltas = np.diff(x[lo:hi + 1])
    net = float(x[hi] - x[lo])
    direction = int(np.sign(net)) if net != 0 else int(np.sign(deltas.sum()))
    if not _is_directional(deltas, direction, trend_majority):
        return False
    return not steady or _trend_share(deltas, direction) > trend_majority


def _excursions(above):
    """Number of maximal runs of True"""
    return int(above[0]) + int(np.count_nonzero(above[1:] & ~above[:-1]))


def _pending_crossing(deltas, p_thre, trend_majority):
    """
    Index into deltas of the first crossing |S_i| > p_thre whose signs over
    [0, i] trend, or None. Every crossing is vetoed when the whole range
    alternates, unless its change is one excursion carried by a sign majority
    """
    if deltas.size == 0:
        return None
    s = np.cumsum(deltas)
    above = np.abs(s) > p_thre
    crossed = np.nonzero(above)[0]
    if crossed.size == 0:
        return None

    single = _excursions(above) == 1
    allowed = {
        direction
        for direction in (-1, 1)
        if _is_directional(deltas, direction, trend_majority)
        or (single and _trend_share(deltas, direction) > trend_majority)
    }
    if not allowed:
        return None
    for i in crossed:
        direction = int(np.sign(s[i]))
        if direction in allowed and _trending(deltas[:i + 1], direction, trend_majority):
            return int(i)
    return None


def window_measurements(series, state) -> Measurements:
    """
    Margin change values and means of the current window

    Args:
        series: PowerSeries
        state: WindowState

    Returns:
        Measurements (dp_left, dp_right, mu_left, mu_right, dp)
    """
    n = len(series)
    if not (0 <= state.L_l <= state.L_r < state.R_l <= state.R_r < n):
        raise RangeError(f"border lines {state.L_l},{state.L_r},{state.R_l},{state.R_r} invalid for length {n}")
    x = series.samples
    mu_left = float(x[state.L_l:state.L_r + 1].mean())
    mu_right = float(x[state.R_l:state.R_r + 1].mean())
    return Measurements(
        dp_left=float(abs(x[state.L_r] - x[state.L_l])),
        dp_right=float(abs(x[state.R_r] - x[state.R_l])),
        mu_left=mu_left,
        mu_right=mu_right,
        dp=mu_right - mu_left,
    )


def margins_steady(measurements, p_thre_current) -> Tuple[bool, bool]:
    """Inclusive steadiness test of both margins"""
    return measurements.dp_left <= p_thre_current, measurements.dp_right <= p_thre_current


def trend_fraction(deltas) -> Tuple[float, float]:
    """
    Negative and positive sign fractions of a delta list

    Args:
        deltas: list of SampleDelta, or an array of raw differences

    Returns:
        tuple (neg_frac, pos_frac); zero signs count only in the denominator
    """
    if len(deltas) == 0:
        raise RangeError("trend_fraction needs at least one delta")
    if isinstance(deltas, np.ndarray):
        signs = np.sign(deltas)
    else:
        signs = np.array([delta.sign for delta in deltas])
    return float(np.count_nonzero(signs < 0)) / signs.size, float(np.count_nonzero(signs > 0)) / signs.size


def adjust_margins(series, state, cfg) -> WindowState:
    """
    Move L_r leftward and the right margin rightward until both settle

    Args:
        series: PowerSeries
        state: WindowState with L_l fixed
        cfg: DetectorConfig

    Returns:
        adjusted WindowState

    Raises:
        InsufficientDataError: the right margin would run past the series end
    """
    window_measurements(series, state)
    if not cfg.adaptive_margins:
        return state

    x = series.samples
    n_m = cfg.margin_samples(series.rate)
    thre = state.p_thre_current
    tm = cfg.trend_majority

    l_r = state.L_r
    floor = state.L_l + n_m - 1
    while l_r > floor:
        left_steady, _ = margins_steady(window_measurements(series, replace(state, L_r=l_r)), thre)
        if not _margin_moving(x, state.L_l, l_r, left_steady, tm):
            break
        l_r -= 1

    r_l, r_r = state.R_l, state.R_r
    while True:
        moved = replace(state, L_r=l_r, R_l=r_l, R_r=r_r)
        _, right_steady = margins_steady(window_measurements(series, moved), thre)
        if not _margin_moving(x, r_l, r_r, right_steady, tm):
            break
        if r_r + 1 >= len(x):
            raise InsufficientDataError(f"right margin unsettled at series end (R_r={r_r})")
        r_l += 1
        r_r += 1

    if (l_r, r_l) != (state.L_r, state.R_l):
        logger.debug(f"margins adjusted: L_r {state.L_r}->{l_r}, R_l {state.R_l}->{r_l}")
    return replace(state, L_r=l_r, R_l=r_l, R_r=r_r)


def cusum_event_check(series, state, cfg, start, stop) -> Tuple[bool, object]:
    """
    Modified CUSUM over [start, stop] with sign-trend suppression

    Args:
        series: PowerSeries
        state: WindowState (supplies the active threshold)
        cfg: DetectorConfig
        start: int, first delta index (>= 1)
        stop: int, last delta index

    Returns:
        tuple (event_pending, crossing_index or None)
    """
    deltas = np.array([delta.d for delta in diff_series(series, start, stop)])
    first = _pending_crossing(deltas, state.p_thre_current, cfg.trend_majority)
    if first is None:
        return False, None
    return True, start + first


def macro_screen(series, state, cfg) -> WindowState:
    """
    One-margin lookaheads beyond R_r; the right margin resumes shifting while
    the lookahead keeps moving in the transition's direction
    """
    x = series.samples
    n_m = cfg.margin_samples(series.rate)
    direction = int(np.sign(window_measurements(series, state).dp))
    if direction == 0:
        return state

    thre = state.p_thre_current
    tm = cfg.trend_majority
    for _ in range(cfg.macro_attempt_limit):
        lo, hi = state.R_r, state.R_r + n_m
        if hi >= len(x):
            break
        ahead = np.diff(x[lo:hi + 1])
        # flat samples inside the lookahead (a saddle ending) take no part in the census
        moving = ahead[ahead != 0]
        by_signs = moving.size > 0 and _trend_share(moving, direction) > tm and _is_directional(ahead, direction, tm)
        by_value = (x[hi] - x[lo]) * direction > thre
        if not (by_signs or by_value):
            break
        shifted = replace(state, R_l=state.R_l + n_m, R_r=state.R_r + n_m)
        try:
            shifted = adjust_margins(series, shifted, cfg)
        except InsufficientDataError:
            break
        state = replace(shifted, macro_extensions=state.macro_extensions + 1)
        logger.debug(f"macro lookahead {state.macro_extensions}: right margin carried to R_r={state.R_r}")
    return state


def micro_screen(series, window_from, window_to, cfg, p_thre_current) -> List[Tuple[int, int]]:
    """
    Slide an N_m-wide sub-window over the window; each maximal run of
    firing sub-windows is one suspicious event

    Returns:
        list of (start, end) sample spans
    """
    n_m = cfg.margin_samples(series.rate)
    if window_to - window_from + 1 < n_m:
        return []
    x = series.samples
    deltas = np.diff(x[window_from:window_to + 1])

    runs = []
    run_start = None
    last = window_to - n_m + 1
    for j in range(window_from, last + 1):
        offset = j - window_from
        sub = deltas[offset:offset + n_m - 1]
        fired = _pending_crossing(sub, p_thre_current, cfg.trend_majority) is not None
        if fired and run_start is None:
            run_start = j
        elif not fired and run_start is not None:
            runs.append((run_start, j - 1))
            run_start = None
    if run_start is not None:
        runs.append((run_start, last))
    return runs


def merge_unsettled_runs(series, runs, n_m, p_thre_current) -> List[Tuple[int, int]]:
    """
    Join adjacent micro runs unless the samples between them hold a settled
    level: at least n_m samples spanning no more than the threshold. A spike
    and its decay therefore stay one event.

    Args:
        series: PowerSeries
        runs: list of (first, last) sub-window starts from micro_screen
        n_m: int, margin width in samples
        p_thre_current: float, active threshold

    Returns:
        list of (first, last) runs, possibly fewer
    """
    if not runs:
        return []
    x = series.samples
    merged = [runs[0]]
    for first, last in runs[1:]:
        lo, hi = merged[-1][1] + 1, first + n_m - 2
        settled = hi - lo + 1 >= n_m and float(np.ptp(x[lo:hi + 1])) <= p_thre_current
        if settled:
            merged.append((first, last))
        else:
            merged[-1] = (merged[-1][0], last)
    if len(merged) < len(runs):
        logger.debug(f"{len(runs)} micro runs joined into {len(merged)} across unsettled gaps")
    return merged


def update_threshold(state, cfg, window_std) -> WindowState:
    """Threshold follows std_factor * std, never below the initial value"""
    if window_std < 0:
        raise ArgumentError(f"window std must be >= 0, got {window_std}")
    return replace(state, p_thre_current=max(cfg.p_thre_init, cfg.std_factor * window_std))


class WammaDetector:
    """Single-pass WAMMA over one power series"""

    def __init__(self, config):
        self.logger = logger
        self.config = config
        self.state = None
        self.threshold_history = []

    def _spans(self, series, state, extended):
        """Event spans with their pre/post levels and provenance"""
        cfg = self.config
        m = window_measurements(series, state)
        if extended:
            return [(state.L_l, state.R_r, m.mu_left, m.mu_right)], MACRO

        runs = micro_screen(series, state.L_l, state.R_r, cfg, state.p_thre_current)
        if not runs:
            return [(state.L_r, state.R_l, m.mu_left, m.mu_right)], MAIN

        n_m = cfg.margin_samples(series.rate)
        runs = merge_unsettled_runs(series, runs, n_m, state.p_thre_current)
        levels = [m.mu_left]
        for (_, prev_last), (next_first, _) in zip(runs, runs[1:]):
            levels.append(window_stats(series, prev_last + 1, next_first + n_m - 2)[0])
        levels.append(m.mu_right)

        spans = []
        lower = state.L_l
        for k, (first, last) in enumerate(runs):
            hi = last + n_m - 1
            if k + 1 < len(runs):
                hi = min(hi, runs[k + 1][0] + n_m - 2)
            lo = max(first, lower)
            spans.append((lo, hi, levels[k], levels[k + 1]))
            lower = hi + 1
        return spans, (MAIN if len(runs) == 1 else MICRO)

    def _decide(self, series, state):
        """Events of one settled window, plus the (possibly extended) state"""
        cfg = self.config
        thre = state.p_thre_current
        m = window_measurements(series, state)
        if abs(m.dp) <= thre:
            return [], state
        pending, crossing = cusum_event_check(series, state, cfg, state.L_l + 1, state.R_r)
        if not pending:
            return [], state

        if cfg.macro_screening:
            state = macro_screen(series, state, cfg)
            if abs(window_measurements(series, state).dp) <= thre:
                return [], state

        spans, provenance = self._spans(series, state, state.macro_extensions > 0)
        events = []
        for lo, hi, pre, post in spans:
            if abs(post - pre) <= thre:
                self.logger.debug(f"span [{lo}, {hi}] below threshold ({post - pre:.1f} W), dropped")
                continue
            kp = locate_keypoints(series, None, pre, post, thre, span=(lo, hi))
            spike = kp.spike[0] if kp.start[0] <= kp.spike[0] <= kp.end[0] else None
            events.append(DetectedEvent(
                start=kp.start[0],
                spike=spike,
                end=kp.end[0],
                direction=direction_of(pre, post),
                pre_mean=pre,
                post_mean=post,
                provenance=provenance,
            ))
        self.logger.debug(f"window L_l={state.L_l}: crossing at {crossing}, {len(events)} event(s) [{provenance}]")
        return events, state

    def detect_events(self, series) -> List[DetectedEvent]:
        """
        Run WAMMA over the whole series

        Args:
            series: PowerSeries

        Returns:
            list of DetectedEvent in increasing start order, non-overlapping
        """
        cfg = self.config
        cfg.validate(series.rate)
        n_m = cfg.margin_samples(series.rate)
        n_w = cfg.window_samples(series.rate)
        n = len(series)
        x = series.samples

        self.threshold_history = []
        self.state = None
        if n < n_w:
            self.logger.warning(f"series of {n} samples is shorter than one window ({n_w}); no events")
            return []

        events = []
        stats = RunningStats()
        stats_until = -1
        thre = cfg.p_thre_init
        l_l = 0
        last_event_end = 0
        while True:
            truncated = False
            if l_l + n_w - 1 <= n - 1:
                r_r = l_l + n_w - 1
            elif n - max(last_event_end, n - n_w) >= 2 * n_m:
                # final window ends on the last sample, reaching back no further than the last event
                l_l = max(last_event_end, n - n_w)
                r_r = n - 1
                truncated = True
                self.logger.debug(f"tail window [{l_l}, {r_r}] of {n - l_l} samples")
            else:
                if n - 1 > l_l:
                    self.logger.debug(f"tail of {n - l_l} samples shorter than two margins, discarded")
                break

            state = initial_state(l_l, n_m, n_w, thre, r_r=r_r)
            try:
                state = adjust_margins(series, state, cfg)
            except InsufficientDataError:
                self.logger.warning(f"stream ended before the right margin settled (window at {l_l})")
                break

            found, state = self._decide(series, state)
            self.state = state
            self.threshold_history.append(state.p_thre_current)

            if found:
                for event in found:
                    if events and event.start <= events[-1].end:
                        if event.end <= events[-1].end:
                            continue
                        keep_spike = event.spike is not None and event.spike > events[-1].end
                        event = replace(event, start=events[-1].end + 1,
                                        spike=event.spike if keep_spike else None)
                    events.append(event)
                stats.reset()
                stats_until = state.R_r - 1
                l_l = last_event_end = state.R_r
            else:
                stats.update(x[max(stats_until + 1, l_l):state.R_r + 1])
                stats_until = state.R_r
                state = update_threshold(state, cfg, stats.std)
                self.state = state
                thre = state.p_thre_current
                l_l = state.R_l

            if truncated:
                break

        self.logger.info(f"WAMMA found {len(events)} events in {n} samples (final threshold {thre:.2f} W)")
        return events


def detect_events(series, cfg) -> List[DetectedEvent]:
    """Convenience wrapper around WammaDetector"""
    return WammaDetector(cfg).detect_events(series)
