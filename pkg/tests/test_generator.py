"""
Unit tests for load reconstruction and scenario synthesis
"""

import numpy as np
import pytest

from src.reconstruction.generator import (
    AppliancePlan,
    ScenarioSpec,
    build_cycle,
    reconstruct_cycle,
    reconstruct_cycles,
    reconstruct_from_tree,
    synthesize_scenario,
)
from src.signatures.extractor import D_FORM, R_FORM
from src.signatures.tree import build_tree
from src.utils.errors import ArgumentError

from tests.conftest import signature_set


@pytest.fixture
def exact_kettle():
    """Kettle means with every std set to zero"""
    return signature_set(R_FORM, dts=(1139, 0), dsp=(1138, 0), trs=(0.48, 0),
                         tdt=(0.48, 0), ssp=(1027, 0), std=(514, 0))


@pytest.fixture
def exact_vacuum():
    """Vacuum means with every std set to zero"""
    return signature_set(D_FORM, dts=(2339, 0), dsp=(1101, 0), trs=(0.14, 0),
                         tdt=(1.14, 0), ssp=(1002, 0), std=(225, 0))


def test_exact_kettle_cycle(exact_kettle):
    """Test the R-form layout at 50 Hz"""
    series, truth = reconstruct_cycle(exact_kettle, 50.0, seed=0)
    x = series.samples
    base = 1027 - 1138

    assert np.count_nonzero(x == 1027.0) == 25701
    assert x[0] == x[-1] == base
    assert x.max() == base + 1139
    assert int(np.argmax(x)) == 250 + 24
    assert [e.time for e in truth] == [5.0, 519.5]
    assert [e.label for e in truth] == ["0->1", "1->0"]
    assert len(series) == 251 + 24 + 25701 + 24 + 250


def test_exact_vacuum_cycle(exact_vacuum):
    """Test the D-form spike and decay at 50 Hz"""
    series, _ = reconstruct_cycle(exact_vacuum, 50.0, seed=0)
    x = series.samples
    base = 1002 - 1101

    assert x.max() - base == 2339
    assert int(np.argmax(x)) == 250 + 7
    assert x[250 + 57] == 1002.0
    assert x[250 + 56] > 1002.0


def test_build_cycle_indices(exact_vacuum):
    """Test on/off indices bracket the on level"""
    layout = build_cycle(exact_vacuum, 50.0, np.random.default_rng(0), padding=1.0)

    assert layout.on_index == 50
    assert layout.values[layout.on_index] == layout.base
    assert layout.values[layout.on_index + 1] > layout.base
    assert layout.values[layout.off_index] == 1002.0
    assert layout.values[layout.off_index + 1] < 1002.0


def test_durations_stay_positive(kettle):
    """Test every drawn duration spans at least one sample"""
    rng = np.random.default_rng(9)
    for _ in range(200):
        layout = build_cycle(kettle, 20.0, rng, padding=0.0)
        assert layout.off_index > layout.on_index


def test_d_form_decay_outlasts_rise(vacuum):
    """Test D-form cycles always decay after the spike"""
    rng = np.random.default_rng(2)
    for _ in range(100):
        layout = build_cycle(vacuum, 20.0, rng, padding=0.0)
        peak = int(np.argmax(layout.values))
        assert layout.values[peak + 1] < layout.values[peak]


def test_reconstruction_is_seeded(kettle):
    """Test equal seeds reproduce the series and different seeds do not"""
    first, _ = reconstruct_cycles(kettle, 20.0, 3, seed=5)
    again, _ = reconstruct_cycles(kettle, 20.0, 3, seed=5)
    other, _ = reconstruct_cycles(kettle, 20.0, 3, seed=6)

    assert np.array_equal(first.samples, again.samples)
    assert not (len(first) == len(other) and np.array_equal(first.samples, other.samples))


def test_reconstruct_cycles_truth(heater):
    """Test two truth events per cycle in time order"""
    series, truth = reconstruct_cycles(heater, 20.0, 4, seed=1, label_prefix="heater:")

    assert len(truth) == 8
    assert [e.time for e in truth] == sorted(e.time for e in truth)
    assert truth[0].label == "heater:0->1"
    assert truth[1].label == "heater:1->0"
    with pytest.raises(ArgumentError):
        reconstruct_cycles(heater, 20.0, 0)


def test_reconstruct_from_tree(kettle, vacuum):
    """Test every turn-on path is reconstructed from zero"""
    tree = build_tree("kettle", [kettle])
    build_tree("vacuum", [vacuum], tree)
    series, truth = reconstruct_from_tree(tree, 20.0, 2, seed=3)

    assert series.samples[0] == 0.0
    assert len(truth) == 8
    assert [e.label for e in truth[:2]] == ["kettle:0->1", "kettle:1->0"]
    assert truth[4].label == "vacuum:0->1"
    assert truth[0].time == pytest.approx(5.0)


def test_reconstruct_from_tree_needs_turn_on(kettle):
    """Test a tree holding only turn-off paths is rejected"""
    off_only = signature_set(R_FORM, dts=(-1139, 9.8), dsp=(-1138, 10.1), trs=(0.48, 0.28),
                             tdt=(0.48, 0.28), ssp=(0, 1), std=(60, 5), label=(1, 0))
    with pytest.raises(ArgumentError):
        reconstruct_from_tree(build_tree("kettle", [off_only]), 20.0, 1)


def test_single_activation_matches_cycle(kettle):
    """Test a lone noise-free activation is the reconstructed cycle above its off level"""
    spec = ScenarioSpec(rate=20.0, duration=700.0, seed=8,
                        appliances=(AppliancePlan("kettle", kettle, activations=(10.0,)),))
    result = synthesize_scenario(spec)
    cycle, _ = reconstruct_cycle(kettle, 20.0, seed=8, padding=0.0)
    expected = cycle.samples - cycle.samples[0]

    assert np.array_equal(result.series.samples[200:200 + len(expected)], expected)
    assert np.all(result.series.samples[:200] == 0.0)
    assert result.truth[0].time == 10.0


def test_scenario_is_additive(heater):
    """Test the aggregate is the base power plus every component"""
    spec = ScenarioSpec(rate=20.0, duration=200.0, seed=1, base_power=100.0, appliances=(
        AppliancePlan("heater", heater, count=3, noise_std=5.0),
        AppliancePlan("lamp", heater, activations=(30.0, 120.0)),
    ))
    result = synthesize_scenario(spec)
    total = 100.0 + result.components["heater"] + result.components["lamp"]

    assert np.allclose(result.series.samples, total)
    assert len(result.truth) == 10
    assert [e.time for e in result.truth] == sorted(e.time for e in result.truth)
    assert {e.label for e in result.truth} == {"heater:0->1", "heater:1->0", "lamp:0->1", "lamp:1->0"}


def test_count_activations_are_spread(heater):
    """Test counted activations start one tenth into equal slots"""
    spec = ScenarioSpec(rate=20.0, duration=100.0, appliances=(AppliancePlan("heater", heater, count=2),))
    on_times = [e.time for e in synthesize_scenario(spec).truth if e.label.endswith("0->1")]

    assert on_times == [5.0, 55.0]


def test_scenario_noise_is_seeded(heater):
    """Test the global noise follows the scenario seed"""
    plans = (AppliancePlan("heater", heater, count=2),)
    first = synthesize_scenario(ScenarioSpec(rate=20.0, duration=60.0, noise_std=2.0, seed=3, appliances=plans))
    again = synthesize_scenario(ScenarioSpec(rate=20.0, duration=60.0, noise_std=2.0, seed=3, appliances=plans))

    assert np.array_equal(first.series.samples, again.series.samples)
    assert 1.2 < np.std(first.series.samples[:60]) < 2.8


def test_overlapping_activations(heater):
    """Test a second activation inside the running cycle is rejected"""
    spec = ScenarioSpec(rate=20.0, duration=60.0, appliances=(AppliancePlan("heater", heater, activations=(1.0, 2.0)),))
    with pytest.raises(ArgumentError):
        synthesize_scenario(spec)


def test_scenario_validation(heater):
    """Test impossible scenarios are rejected"""
    with pytest.raises(ArgumentError):
        ScenarioSpec(rate=20.0, duration=60.0, appliances=(AppliancePlan("heater", heater),)).validate()
    with pytest.raises(ArgumentError):
        ScenarioSpec(rate=20.0, duration=60.0,
                     appliances=(AppliancePlan("heater", heater, activations=(75.0,)),)).validate()
    with pytest.raises(ArgumentError):
        ScenarioSpec(rate=0.0, duration=60.0).validate()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
