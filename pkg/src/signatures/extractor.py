"""
Transient / steady segmentation and Gaussian-modelled load signatures
"""

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage

from src.core.keypoints import KeyPoints, locate_keypoints
from src.utils.constants import MERGE_TOL_FACTOR
from src.utils.errors import ArgumentError
from src.utils.logging import get_logger

logger = get_logger("signatures.extractor")

STEADY = "steady"
TRANSIENT = "transient"
R_FORM = "R"
D_FORM = "D"


@dataclass(frozen=True)
class Period:
    kind: str
    start: int
    stop: int
    mean: Optional[float] = None

    def __len__(self):
        return self.stop - self.start + 1


@dataclass(frozen=True)
class Segmentation:
    periods: Tuple[Period, ...]


@dataclass(frozen=True)
class GaussianParam:
    mean: float
    std: float
    n: int = 1

    def __post_init__(self):
        if self.std < 0:
            raise ArgumentError(f"std must be >= 0, got {self.std}")
        if self.n < 1:
            raise ArgumentError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class SignatureSet:
    """Six signatures of one state transition; alpha=DTS, gamma=TRS, beta=DSP, delta=TDT, mu=SSP, tau=STD"""

    form: str
    alpha: GaussianParam
    gamma: GaussianParam
    beta: GaussianParam
    delta: GaussianParam
    transition_label: Tuple[int, int]
    mu: GaussianParam
    tau: GaussianParam

    @property
    def label(self):
        return f"{self.transition_label[0]}->{self.transition_label[1]}"


@dataclass(frozen=True)
class TransitionSignature:
    """Raw per-transition values; DTS/DSP in watts, TRS/TDT in seconds"""

    dts: float
    trs: float
    dsp: float
    tdt: float
    before: int
    after: int
    degenerate: bool = False


@dataclass(frozen=True)
class SteadySignature:
    ssp: float
    std: float


def segment_series(series, events) -> Segmentation:
    """
    Split a series into alternating steady and transient periods

    Args:
        series: PowerSeries
        events: list of DetectedEvent, ordered and non-overlapping

    Returns:
        Segmentation tiling [0, len(series))
    """
    n = len(series)
    x = series.samples
    periods = []
    cursor = 0
    previous_end = -1
    for event in events:
        if event.start <= previous_end:
            raise ArgumentError(f"events overlap or are unordered at start index {event.start}")
        if event.start < 0 or event.end >= n or event.start > event.end:
            raise ArgumentError(f"event [{event.start}, {event.end}] outside series of length {n}")
        if event.start > cursor:
            periods.append(Period(STEADY, cursor, event.start - 1, float(x[cursor:event.start].mean())))
        periods.append(Period(TRANSIENT, event.start, event.end))
        cursor = event.end + 1
        previous_end = event.end
    if cursor < n:
        periods.append(Period(STEADY, cursor, n - 1, float(x[cursor:].mean())))
    return Segmentation(tuple(periods))


def _neighbour_means(segmentation):
    """Index of the steady period before and after each transient"""
    periods = segmentation.periods
    result = []
    for k, period in enumerate(periods):
        if period.kind != TRANSIENT:
            continue
        before = k - 1 if k > 0 and periods[k - 1].kind == STEADY else None
        after = k + 1 if k + 1 < len(periods) and periods[k + 1].kind == STEADY else None
        result.append((k, before, after))
    return result


def locate_all_keypoints(series, segmentation, events, p_thre) -> List[KeyPoints]:
    """Keypoints of every event using the neighbouring steady means"""
    keypoints = []
    for event, (_, before, after) in zip(events, _neighbour_means(segmentation)):
        periods = segmentation.periods
        pre = periods[before].mean if before is not None else event.pre_mean
        post = periods[after].mean if after is not None else event.post_mean
        keypoints.append(locate_keypoints(series, event, pre, post, p_thre))
    return keypoints


def extract_signatures(series, segmentation, keypoints) -> Tuple[List[TransitionSignature], List[SteadySignature]]:
    """
    Raw transition tuples (DTS, TRS, DSP, TDT) and steady tuples (SSP, STD)

    Args:
        series: PowerSeries
        segmentation: Segmentation
        keypoints: list of KeyPoints, one per transient in order

    Returns:
        tuple (transitions, steady states); transitions without a steady
        period on both sides are skipped
    """
    f = series.rate
    periods = segmentation.periods
    steady_index = {}
    states = []
    for k, period in enumerate(periods):
        if period.kind == STEADY:
            steady_index[k] = len(states)
            states.append(SteadySignature(ssp=period.mean, std=len(period) / f))

    transitions = []
    for kp, (_, before, after) in zip(keypoints, _neighbour_means(segmentation)):
        if before is None or after is None:
            logger.debug("transition at series boundary skipped")
            continue
        pre_mean = periods[before].mean
        post_mean = periods[after].mean
        transitions.append(TransitionSignature(
            dts=kp.spike[1] - pre_mean,
            trs=(kp.spike[0] - kp.start[0]) / f,
            dsp=post_mean - pre_mean,
            tdt=(kp.end[0] - kp.start[0]) / f,
            before=steady_index[before],
            after=steady_index[after],
            degenerate=kp.degenerate,
        ))
    return transitions, states


def fit_gaussian(values) -> GaussianParam:
    """Mean and population std of a non-empty sample"""
    values = np.asarray(list(values), dtype=float)
    if values.size == 0:
        raise ArgumentError("cannot fit a Gaussian to an empty sample")
    return GaussianParam(mean=float(values.mean()), std=float(values.std()), n=int(values.size))


def classify_waveshape(alpha, beta, p_thre) -> str:
    """D-form when the spike exceeds the steady change by more than p_thre"""
    return D_FORM if abs(alpha.mean) > abs(beta.mean) + p_thre else R_FORM


def cluster_steady_states(steady_means, merge_tol) -> List[int]:
    """
    Single-linkage 1-D clustering cut at gaps larger than merge_tol

    Args:
        steady_means: list of float, watts
        merge_tol: float, watts (> 0)

    Returns:
        list of state labels, 0 for the cluster holding the minimum
    """
    if len(steady_means) == 0:
        raise ArgumentError("no steady periods to cluster")
    if merge_tol <= 0:
        raise ArgumentError("merge_tol must be > 0")
    means = np.asarray(steady_means, dtype=float)
    if means.size == 1:
        return [0]
    clusters = fcluster(linkage(means[:, None], method="single"), t=merge_tol, criterion="distance")
    ids = np.unique(clusters)
    centers = np.array([means[clusters == c].mean() for c in ids])
    # relabel so states count up from the lowest power level
    state_of = {int(c): k for k, c in enumerate(ids[np.argsort(centers, kind="stable")])}
    return [state_of[int(c)] for c in clusters]


def learn_signatures(series, events, p_thre, merge_tol=None) -> List[SignatureSet]:
    """
    Segment, extract, cluster and fit one SignatureSet per state transition

    Args:
        series: PowerSeries
        events: list of DetectedEvent
        p_thre: float, keypoint / waveshape tolerance in watts
        merge_tol: float, steady clustering tolerance (default 2 * p_thre)

    Returns:
        list of SignatureSet ordered by transition label
    """
    merge_tol = MERGE_TOL_FACTOR * p_thre if merge_tol is None else merge_tol
    segmentation = segment_series(series, events)
    keypoints = locate_all_keypoints(series, segmentation, events, p_thre)
    transitions, states = extract_signatures(series, segmentation, keypoints)
    if not transitions:
        logger.warning("no complete transitions to learn from")
        return []

    labels = cluster_steady_states([s.ssp for s in states], merge_tol)
    groups: Dict[Tuple[int, int], List[TransitionSignature]] = defaultdict(list)
    for transition in transitions:
        label = (labels[transition.before], labels[transition.after])
        if label[0] == label[1]:
            logger.debug(f"transition within state {label[0]} ignored (DSP {transition.dsp:.1f} W)")
            continue
        groups[label].append(transition)

    sets = []
    for label in sorted(groups):
        members = groups[label]
        alpha = fit_gaussian(t.dts for t in members)
        beta = fit_gaussian(t.dsp for t in members)
        sets.append(SignatureSet(
            form=classify_waveshape(alpha, beta, p_thre),
            alpha=alpha,
            gamma=fit_gaussian(t.trs for t in members),
            beta=beta,
            delta=fit_gaussian(t.tdt for t in members),
            transition_label=label,
            mu=fit_gaussian(states[t.after].ssp for t in members),
            tau=fit_gaussian(states[t.after].std for t in members),
        ))
    logger.info(f"Learned {len(sets)} signature set(s) from {len(transitions)} transitions, {max(labels) + 1} states")
    return sets
