"""
CSV ingestion and export for power series, detected events and ground truth
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd

from src.core.series import PowerSeries
from src.detection.events import DetectedEvent
from src.evaluation.matcher import GroundTruthEvent
from src.utils.constants import DECIMALS, EVENTS_HEADER, RATE_SPACING_TOLERANCE, TRUTH_HEADER
from src.utils.errors import ParseError
from src.utils.logging import get_logger

logger = get_logger("data.csv_io")

TIME_COLUMNS = ("t", "time", "timestamp")
FLOAT_FORMAT = f"%.{DECIMALS}f"


@dataclass(frozen=True)
class EventRecord:
    """On-disk event: times in seconds"""

    start_time: float
    spike_time: Optional[float]
    end_time: float
    direction: str
    pre_mean: float
    post_mean: float
    provenance: str

    # spans in seconds, so records match with rate=1
    @property
    def start(self):
        return self.start_time

    @property
    def end(self):
        return self.end_time

    @classmethod
    def from_event(cls, event: DetectedEvent, rate, origin_time=0.0):
        return cls(
            start_time=origin_time + event.start / rate,
            spike_time=origin_time + event.spike / rate if event.spike is not None else None,
            end_time=origin_time + event.end / rate,
            direction=event.direction,
            pre_mean=event.pre_mean,
            post_mean=event.post_mean,
            provenance=event.provenance,
        )

    def to_event(self, rate, origin_time=0.0) -> DetectedEvent:
        """Back to sample indices of a series sampled at rate"""
        def index(t):
            return int(round((t - origin_time) * rate))
        return DetectedEvent(
            start=index(self.start_time),
            spike=index(self.spike_time) if self.spike_time is not None else None,
            end=index(self.end_time),
            direction=self.direction,
            pre_mean=self.pre_mean,
            post_mean=self.post_mean,
            provenance=self.provenance,
        )


def _read_frame(path):
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError as exc:
        raise ParseError(f"{path}: empty file", line=1) from exc
    except pd.errors.ParserError as exc:
        raise ParseError(f"{path}: malformed CSV ({exc})") from exc
    frame.columns = [str(c).strip() for c in frame.columns]
    return frame


def _numeric(frame, column, path, allow_blank=False):
    """Column as floats; the first non-finite cell is reported by file line"""
    raw = frame[column].str.strip()
    values = pd.to_numeric(raw, errors="coerce").to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if allow_blank:
        bad &= (raw != "").to_numpy()
    if bad.any():
        row = int(np.argmax(bad))
        raise ParseError(f"{path}: non-numeric value {frame[column].iloc[row]!r}", line=row + 2, field=column)
    return values


def read_power_csv(path, rate, column="power", time_column=None) -> PowerSeries:
    """
    Load one power column into a PowerSeries

    Args:
        path: str, CSV file with a header row
        rate: float, sample rate in Hz (never inferred)
        column: str, power column name
        time_column: str, optional timestamp column; auto-detected from t/time/timestamp

    Returns:
        PowerSeries; origin_time is the first timestamp when one is present

    Raises:
        ParseError: empty file, missing column, non-numeric power or non-uniform timestamps
    """
    frame = _read_frame(path)
    if column not in frame.columns:
        raise ParseError(f"{path}: missing power column '{column}'", line=1, field=column)
    if frame.empty:
        raise ParseError(f"{path}: no data rows", line=2)

    power = _numeric(frame, column, path)
    if time_column is None:
        time_column = next((c for c in TIME_COLUMNS if c in frame.columns), None)
    elif time_column not in frame.columns:
        raise ParseError(f"{path}: missing time column '{time_column}'", line=1, field=time_column)

    origin_time = 0.0
    if time_column is not None:
        times = _numeric(frame, time_column, path)
        period = 1.0 / rate
        gaps = np.abs(np.diff(times) - period)
        off = gaps > RATE_SPACING_TOLERANCE * period
        if off.any():
            row = int(np.argmax(off)) + 1
            raise ParseError(f"{path}: timestamps not uniform at {rate} Hz", line=row + 2, field=time_column)
        origin_time = float(times[0])

    logger.info(f"Loaded {len(power)} samples from {path}")
    return PowerSeries(power, rate, origin_time)


def write_power_csv(series, path):
    frame = pd.DataFrame({"time": series.origin_time + np.arange(len(series)) / series.rate,
                          "power": series.samples})
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_events_csv(events, path, rate, origin_time=0.0):
    """
    Write detected events with start, spike and end converted to seconds

    Args:
        events: list of DetectedEvent
        path: str, output file
        rate: float, sample rate of the detected series
        origin_time: float, time of sample 0
    """
    records = [EventRecord.from_event(e, rate, origin_time) for e in events]
    frame = pd.DataFrame([r.__dict__ for r in records], columns=EVENTS_HEADER)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"Wrote {len(records)} event(s) to {path}")


def read_events_csv(path) -> List[EventRecord]:
    frame = _read_frame(path)
    missing = [c for c in EVENTS_HEADER if c not in frame.columns]
    if missing:
        raise ParseError(f"{path}: missing column '{missing[0]}'", line=1, field=missing[0])

    starts = _numeric(frame, "start_time", path)
    spikes = _numeric(frame, "spike_time", path, allow_blank=True)
    ends = _numeric(frame, "end_time", path)
    pre = _numeric(frame, "pre_mean", path)
    post = _numeric(frame, "post_mean", path)

    records = []
    previous = -np.inf
    for k in range(len(frame)):
        spike = None if np.isnan(spikes[k]) else float(spikes[k])
        if not starts[k] <= ends[k] or (spike is not None and not starts[k] <= spike <= ends[k]):
            raise ParseError(f"{path}: event times out of order within the row", line=k + 2)
        if starts[k] < previous:
            raise ParseError(f"{path}: events not time-ordered", line=k + 2, field="start_time")
        previous = starts[k]
        records.append(EventRecord(
            start_time=float(starts[k]),
            spike_time=spike,
            end_time=float(ends[k]),
            direction=frame["direction"].iloc[k].strip(),
            pre_mean=float(pre[k]),
            post_mean=float(post[k]),
            provenance=frame["provenance"].iloc[k].strip(),
        ))
    return records


def write_truth_csv(truth, path):
    frame = pd.DataFrame({"time": [e.time for e in truth],
                          "label": [e.label or "" for e in truth]}, columns=TRUTH_HEADER)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def read_truth_csv(path) -> List[GroundTruthEvent]:
    """
    Load ground-truth instants

    Raises:
        ParseError: missing time column, non-numeric time or decreasing times
    """
    frame = _read_frame(path)
    if "time" not in frame.columns:
        raise ParseError(f"{path}: missing column 'time'", line=1, field="time")
    times = _numeric(frame, "time", path)
    decreasing = np.diff(times) < 0
    if decreasing.any():
        row = int(np.argmax(decreasing)) + 1
        raise ParseError(f"{path}: truth times must be non-decreasing", line=row + 2, field="time")

    labels = frame["label"].str.strip() if "label" in frame.columns else pd.Series([""] * len(frame))
    return [GroundTruthEvent(float(t), label or None) for t, label in zip(times, labels)]
