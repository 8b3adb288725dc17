"""
Signature-driven load reconstruction and labelled scenario synthesis
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.core.series import PowerSeries
from src.evaluation.matcher import GroundTruthEvent
from src.signatures.extractor import D_FORM
from src.utils.constants import REDRAW_LIMIT
from src.utils.errors import ArgumentError
from src.utils.logging import get_logger

logger = get_logger("reconstruction.generator")


@dataclass(frozen=True)
class AppliancePlan:
    name: str
    signatures: object
    activations: Optional[Tuple[float, ...]] = None
    count: Optional[int] = None
    noise_std: float = 0.0
    tdt_stretch: float = 1.0


@dataclass(frozen=True)
class ScenarioSpec:
    rate: float
    duration: float
    noise_std: float = 0.0
    seed: int = 0
    base_power: float = 0.0
    appliances: Tuple[AppliancePlan, ...] = ()

    def validate(self):
        if self.rate <= 0:
            raise ArgumentError("scenario rate must be > 0")
        if self.duration <= 0:
            raise ArgumentError("scenario duration must be > 0")
        if self.noise_std < 0:
            raise ArgumentError("scenario noise_std must be >= 0")
        for plan in self.appliances:
            if plan.noise_std < 0 or plan.tdt_stretch <= 0:
                raise ArgumentError(f"{plan.name}: noise_std must be >= 0 and tdt_stretch > 0")
            if plan.activations is None and not plan.count:
                raise ArgumentError(f"{plan.name}: give activation times or a count")
            for t in plan.activations or ():
                if not 0 <= t < self.duration:
                    raise ArgumentError(f"{plan.name}: activation at {t}s outside [0, {self.duration})")


@dataclass
class ScenarioResult:
    series: PowerSeries
    truth: List[GroundTruthEvent]
    components: Dict[str, np.ndarray] = field(default_factory=dict)


@dataclass(frozen=True)
class CycleLayout:
    values: np.ndarray
    on_index: int
    off_index: int
    base: float


def _draw(rng, gaussian, lower=None):
    """Gaussian draw, redrawn while not above lower"""
    for _ in range(REDRAW_LIMIT):
        value = rng.normal(gaussian.mean, gaussian.std) if gaussian.std > 0 else gaussian.mean
        if lower is None or value > lower:
            return float(value)
    raise ArgumentError(f"could not draw a value above {lower} from N({gaussian.mean}, {gaussian.std})")


def _draw_samples(rng, gaussian, rate, stretch=1.0, at_least=1):
    """Duration draw (> one sample period) converted to a sample count above at_least - 1"""
    for _ in range(REDRAW_LIMIT):
        seconds = _draw(rng, gaussian, lower=1.0 / rate) * stretch
        count = max(1, int(round(seconds * rate)))
        if count >= at_least:
            return count
    raise ArgumentError(f"could not draw a duration of at least {at_least} samples from N({gaussian.mean}, {gaussian.std})")


def build_cycle(signatures, rate, rng, padding=5.0, base=None, tdt_stretch=1.0) -> CycleLayout:
    """
    Sample one on/off cycle as piecewise-linear keypoints

    The off level is mu.mean - beta.mean unless base is given; the on level
    follows the SSP draw. The off transition ramps back over the same TDT.
    """
    if rate <= 0:
        raise ArgumentError("rate must be > 0")
    base = signatures.mu.mean - signatures.beta.mean if base is None else base

    alpha = _draw(rng, signatures.alpha)
    if signatures.form == D_FORM:
        n_trs = _draw_samples(rng, signatures.gamma, rate)
        n_tdt = _draw_samples(rng, signatures.delta, rate, tdt_stretch, at_least=n_trs + 1)
    else:
        n_tdt = _draw_samples(rng, signatures.delta, rate, tdt_stretch)
        n_trs = n_tdt
    on_level = _draw(rng, signatures.mu)
    hold = _draw_samples(rng, signatures.tau, rate)
    pad = int(round(padding * rate))

    spike = base + alpha
    rise = base + alpha * np.arange(1, n_trs + 1) / n_trs
    decay_len = n_tdt - n_trs
    decay = spike + (on_level - spike) * np.arange(1, decay_len + 1) / decay_len if decay_len else np.empty(0)
    fall = on_level + (base - on_level) * np.arange(1, n_tdt + 1) / n_tdt

    on_index = pad
    off_index = pad + n_tdt + hold + 1
    values = np.concatenate([
        np.full(pad + 1, base),
        rise,
        decay,
        np.full(hold + 1, on_level),
        fall,
        np.full(pad, base),
    ])
    return CycleLayout(values=values, on_index=on_index, off_index=off_index, base=base)


def _labels(signatures, prefix=""):
    on = f"{prefix}{signatures.transition_label[0]}->{signatures.transition_label[1]}"
    off = f"{prefix}{signatures.transition_label[1]}->{signatures.transition_label[0]}"
    return on, off


def reconstruct_cycle(signatures, rate, seed=None, padding=5.0, origin_time=0.0) -> Tuple[PowerSeries, List[GroundTruthEvent]]:
    """
    Generate one operating cycle from a SignatureSet

    Args:
        signatures: SignatureSet
        rate: float, Hz
        seed: int, rng seed
        padding: float, seconds of off level before and after the cycle
        origin_time: float, time of sample 0

    Returns:
        tuple (PowerSeries, ground-truth events at both transition starts)
    """
    return reconstruct_cycles(signatures, rate, 1, seed=seed, padding=padding, origin_time=origin_time)


def reconstruct_cycles(signatures, rate, cycles, seed=None, padding=5.0, origin_time=0.0, label_prefix=""):
    """Concatenate independently drawn cycles sharing one off level"""
    if cycles < 1:
        raise ArgumentError("cycles must be >= 1")
    rng = np.random.default_rng(seed)
    on_label, off_label = _labels(signatures, label_prefix)
    chunks, truth = [], []
    offset = 0
    for _ in range(cycles):
        layout = build_cycle(signatures, rate, rng, padding=padding)
        chunks.append(layout.values)
        truth.append(GroundTruthEvent(origin_time + (offset + layout.on_index) / rate, on_label))
        truth.append(GroundTruthEvent(origin_time + (offset + layout.off_index) / rate, off_label))
        offset += len(layout.values)
    return PowerSeries(np.concatenate(chunks), rate, origin_time), truth


def reconstruct_from_tree(tree, rate, cycles, seed=None, padding=5.0):
    """
    Walk the tree in preorder and reconstruct cycles for every turn-on path

    Returns:
        tuple (PowerSeries, ground-truth events)
    """
    rng_seeds = np.random.SeedSequence(seed).spawn(max(1, len(tree.paths())))
    chunks, truth = [], []
    offset = 0.0
    for path, child in zip(tree.paths(), rng_seeds):
        s = path.signatures
        if s.transition_label[0] >= s.transition_label[1]:
            continue
        series, events = reconstruct_cycles(s, rate, cycles, seed=child, padding=padding,
                                            origin_time=offset, label_prefix=f"{path.appliance}:")
        chunks.append(series.samples - series.samples[0])
        truth.extend(events)
        offset += len(series) / rate
        logger.info(f"Reconstructed {cycles} cycle(s) of {path.label}")
    if not chunks:
        raise ArgumentError("tree has no turn-on transitions to reconstruct")
    return PowerSeries(np.concatenate(chunks), rate), truth


def _activation_times(plan, duration):
    if plan.activations is not None:
        return sorted(plan.activations)
    slot = duration / plan.count
    return [k * slot + 0.1 * slot for k in range(plan.count)]


def synthesize_scenario(spec) -> ScenarioResult:
    """
    Additive multi-appliance scenario with white steady-state noise

    Args:
        spec: ScenarioSpec

    Returns:
        ScenarioResult with the aggregate series, merged truth and per-appliance components
    """
    spec.validate()
    rate = spec.rate
    n = int(round(spec.duration * rate))
    rng = np.random.default_rng(spec.seed)

    components = {}
    truth = []
    for plan in spec.appliances:
        component = np.zeros(n)
        on_label, off_label = _labels(plan.signatures, f"{plan.name}:")
        busy_until = -1
        for t in _activation_times(plan, spec.duration):
            start = int(round(t * rate))
            if start <= busy_until:
                raise ArgumentError(f"{plan.name}: activation at {t}s overlaps the previous cycle")
            layout = build_cycle(plan.signatures, rate, rng, padding=0.0, tdt_stretch=plan.tdt_stretch)
            cycle = layout.values - layout.base
            if plan.noise_std > 0:
                on_span = slice(layout.on_index + 1, layout.off_index + 1)
                cycle[on_span] += rng.normal(0.0, plan.noise_std, cycle[on_span].size)
            stop = min(n, start + len(cycle))
            component[start:stop] += cycle[:stop - start]
            busy_until = start + len(cycle) - 1
            for index, label in ((layout.on_index, on_label), (layout.off_index, off_label)):
                if start + index < n:
                    truth.append(GroundTruthEvent((start + index) / rate, label))
        components[plan.name] = component

    aggregate = np.full(n, float(spec.base_power))
    for component in components.values():
        aggregate = aggregate + component
    if spec.noise_std > 0:
        aggregate = aggregate + rng.normal(0.0, spec.noise_std, n)

    truth.sort(key=lambda e: (e.time, e.label or ""))
    logger.info(f"Synthesized {spec.duration}s at {rate} Hz: {len(spec.appliances)} appliance(s), {len(truth)} events")
    return ScenarioResult(series=PowerSeries(aggregate, rate), truth=truth, components=components)
