"""
Unit tests for event matching and metrics
"""

import pytest

from src.detection.events import DetectedEvent
from src.evaluation.matcher import GroundTruthEvent, compute_metrics, match_events, percent
from src.utils.errors import ArgumentError


def _event(start, end):
    return DetectedEvent(start=start, spike=None, end=end, direction="rising", pre_mean=0.0, post_mean=100.0)


@pytest.mark.parametrize(
    "tp, fp, fn, expected",
    [
        (16, 0, 2, {"TPP": 88.9, "FPP": 0.0, "FNP": 11.1, "f1": 94.1}),
        (17, 0, 1, {"TPP": 94.4, "FPP": 0.0, "FNP": 5.6, "f1": 97.1}),
        (1, 0, 17, {"TPP": 5.6, "FPP": 0.0, "FNP": 94.4, "f1": 10.5}),
        (120, 1, 1, {"TPP": 99.2, "FPP": 0.8, "FNP": 0.8, "f1": 99.2}),
    ],
)
def test_metric_percentages(tp, fp, fn, expected):
    """Test published count triples reproduce their percentages"""
    report = compute_metrics(tp, fp, fn, tp + fp, tp + fn)

    assert report.percentages() == expected


def test_exact_fractions():
    """Test fractions are kept unrounded"""
    report = compute_metrics(16, 0, 2, 16, 18)

    assert report.tpp == pytest.approx(16 / 18)
    assert report.f1 == pytest.approx(16 / 17)
    assert report.fpp == 0.0


def test_percent_rounds_half_up():
    """Test ties round away from zero"""
    assert percent(1, 16) == 6.3
    assert percent(3, 16) == 18.8
    assert percent(1, 8) == 12.5


def test_compute_metrics_validation():
    """Test inconsistent or empty counts are rejected"""
    with pytest.raises(ArgumentError):
        compute_metrics(5, 0, 0, 4, 5)
    with pytest.raises(ArgumentError):
        compute_metrics(0, 0, 0, 0, 0)
    with pytest.raises(ArgumentError):
        compute_metrics(-1, 1, 1, 0, 0)


def test_no_detections():
    """Test an empty detection list gives f1 of zero"""
    report = match_events([], [GroundTruthEvent(3.0)], 1.0, 20.0)

    assert (report.tp, report.fp, report.fn) == (0, 0, 1)
    assert report.f1 == 0.0
    assert report.percentages()["FPP"] == 0.0


def test_match_within_tolerance():
    """Test a truth event up to the tolerance past the end still matches"""
    detected = [_event(200, 210)]        # 10.0 s .. 10.5 s at 20 Hz

    assert match_events(detected, [GroundTruthEvent(11.2)], 1.0, 20.0).tp == 1
    assert match_events(detected, [GroundTruthEvent(12.0)], 1.0, 20.0).tp == 0
    assert match_events(detected, [GroundTruthEvent(9.0)], 1.0, 20.0).tp == 1


def test_one_to_one_matching():
    """Test two detections compete for a single truth event"""
    detected = [_event(200, 202), _event(206, 208)]
    report = match_events(detected, [GroundTruthEvent(10.2)], 1.0, 20.0)

    assert (report.tp, report.fp, report.fn) == (1, 1, 0)
    assert report.percentages()["FPP"] == 50.0


def test_nearest_truth_is_taken():
    """Test the closest unmatched truth event is consumed first"""
    detected = [_event(200, 210), _event(240, 250)]
    truth = [GroundTruthEvent(9.5), GroundTruthEvent(10.2), GroundTruthEvent(12.3)]
    report = match_events(detected, truth, 1.0, 20.0)

    assert (report.tp, report.fp, report.fn) == (2, 0, 1)


def test_origin_time_shifts_detections():
    """Test sample indices are offset by the series origin"""
    detected = [_event(0, 4)]

    assert match_events(detected, [GroundTruthEvent(100.1)], 0.5, 20.0, origin_time=100.0).tp == 1
    assert match_events(detected, [GroundTruthEvent(100.1)], 0.5, 20.0).tp == 0


def test_negative_tolerance():
    """Test negative tolerances are rejected"""
    with pytest.raises(ArgumentError):
        match_events([], [GroundTruthEvent(1.0)], -0.1, 20.0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
