"""
Unit tests for the signature tree and its YAML document
"""

from dataclasses import replace

import numpy as np
import pytest
import yaml

from src.signatures.extractor import D_FORM, R_FORM, GaussianParam
from src.signatures.tree import build_tree, query_tree, verify_steady_state
from src.signatures.tree_io import deserialize_tree, load_tree, save_tree, serialize_tree
from src.utils.errors import ArgumentError, ParseError


@pytest.fixture
def tree(kettle, vacuum, heater):
    """Shared tree of three appliances"""
    tree = build_tree("kettle", [kettle])
    build_tree("vacuum", [vacuum], tree)
    return build_tree("heater", [heater], tree)


def _means(s):
    return (s.form, s.alpha.mean, s.gamma.mean, s.beta.mean, s.delta.mean)


def test_paths_in_preorder(tree):
    """Test paths are listed by appliance then form"""
    assert [path.label for path in tree.paths()] == ["heater:0->1", "kettle:0->1", "vacuum:0->1"]
    assert len(tree) == 3


def test_preorder_layers(kettle):
    """Test every layer appears once per chain, root first"""
    nodes = list(build_tree("kettle", [kettle]).preorder())

    assert nodes[0] == (0, "root", "root")
    assert [layer for _, layer, _ in nodes] == [
        "root", "appliance", "form", "dts", "trs", "dsp", "tdt", "label", "ssp", "std",
    ]
    assert nodes[2] == (2, "form", R_FORM)
    assert nodes[7] == (7, "label", "0->1")


def test_duplicate_labels(kettle):
    """Test the same label twice is ignored, a conflicting one rejected"""
    tree = build_tree("kettle", [kettle, kettle])
    assert len(tree) == 1

    with pytest.raises(ArgumentError):
        build_tree("kettle", [replace(kettle, alpha=GaussianParam(900.0, 5.0))], tree)


def test_query_filters_by_form(tree, vacuum):
    """Test a D-form observation only meets D-form branches"""
    matches = query_tree(tree, _means(vacuum))

    assert [m.label for m in matches] == ["vacuum:0->1"]
    assert matches[0].ssp == vacuum.mu


def test_query_exact_zero_std_layers(tree, kettle):
    """Test zero-std layers only accept their exact value"""
    matches = query_tree(tree, _means(kettle))

    assert [m.label for m in matches] == ["kettle:0->1"]


def test_self_retrieval(tree):
    """Test every path ranks first for its own mean signatures"""
    for path in tree.paths():
        matches = query_tree(tree, _means(path.signatures))
        assert matches[0].label == path.label


@pytest.mark.parametrize("shared_form", [False, True])
def test_self_retrieval_from_drawn_signatures(kettle, vacuum, shared_form):
    """Test draws from each appliance's Gaussians rank its own label first in at least 95% of 200 trials"""
    if shared_form:
        vacuum = replace(vacuum, form=R_FORM)
    tree = build_tree("kettle", [kettle])
    build_tree("vacuum", [vacuum], tree)
    appliances = [("kettle", kettle), ("vacuum", vacuum)]
    rng = np.random.default_rng(2024)

    hits = 0
    for trial in range(200):
        name, s = appliances[trial % 2]
        observed = (s.form, *(rng.normal(g.mean, g.std) for g in (s.alpha, s.gamma, s.beta, s.delta)))
        matches = query_tree(tree, observed)
        hits += bool(matches) and matches[0].appliance == name

    assert hits >= 190


def test_large_dts_ranks_vacuum_first(kettle, vacuum):
    """Test a DTS of 2300 W outweighs a DSP between kettle and vacuum"""
    tree = build_tree("kettle", [kettle])
    build_tree("vacuum", [replace(vacuum, form=R_FORM)], tree)

    matches = query_tree(tree, (R_FORM, 2300.0, 0.3, 1120.0, 0.8))

    assert [m.appliance for m in matches] == ["vacuum", "kettle"]
    assert query_tree(build_tree("vacuum", [vacuum], build_tree("kettle", [kettle])),
                      (D_FORM, 2300.0, 0.14, 1120.0, 1.1))[0].appliance == "vacuum"


def test_query_scores_best_first(kettle):
    """Test a closer observation outranks a distant one"""
    far = replace(kettle, alpha=GaussianParam(1300.0, 9.8), beta=GaussianParam(1300.0, 10.1))
    tree = build_tree("kettle", [kettle])
    build_tree("urn", [far], tree)
    matches = query_tree(tree, (R_FORM, 1150.0, 0.5, 1150.0, 0.5))

    assert [m.appliance for m in matches] == ["kettle", "urn"]
    assert matches[0].score > matches[1].score


def test_verify_steady_state(kettle):
    """Test the observed steady power separates otherwise equal chains"""
    twin = replace(kettle, mu=GaussianParam(2000.0, 5.0))
    tree = build_tree("kettle", [kettle])
    build_tree("boiler", [twin], tree)
    matches = query_tree(tree, _means(kettle))
    assert [m.appliance for m in matches] == ["boiler", "kettle"]

    verified = verify_steady_state(matches, 1027.0)

    assert [m.appliance for m in verified] == ["kettle", "boiler"]


def test_verify_drops_exact_mismatch(heater):
    """Test a zero-std SSP rejects any other steady power"""
    matches = query_tree(build_tree("heater", [heater]), _means(heater))

    assert verify_steady_state(matches, 480.0) == []
    assert len(verify_steady_state(matches, 500.0)) == 1


def test_yaml_round_trip(tree, tmp_path):
    """Test save then load gives an equal tree"""
    path = tmp_path / "tree.yaml"
    save_tree(tree, path)

    assert load_tree(path) == tree
    assert yaml.safe_load(path.read_text())["format"] == "load-signature-tree/1"


def test_document_layout(kettle):
    """Test each layer is one nesting level deeper"""
    document = yaml.safe_load(serialize_tree(build_tree("kettle", [kettle])))
    chain = document["appliances"]["kettle"][R_FORM][0]

    assert chain["dts"]["mean"] == 1139.0
    label = chain["dts"]["trs"]["dsp"]["tdt"]["label"]
    assert (label["from"], label["to"]) == (0, 1)
    assert label["ssp"]["mean"] == 1027.0
    assert document["appliances"]["kettle"][D_FORM] == []


def test_missing_layer(kettle):
    """Test a chain without its DSP layer names the layer"""
    document = yaml.safe_load(serialize_tree(build_tree("kettle", [kettle])))
    del document["appliances"]["kettle"][R_FORM][0]["dts"]["trs"]["dsp"]

    with pytest.raises(ParseError) as excinfo:
        deserialize_tree(yaml.safe_dump(document))
    assert excinfo.value.field == "dsp"


def test_wrong_format_tag():
    """Test documents of another format are refused"""
    with pytest.raises(ParseError):
        deserialize_tree("format: something-else\nappliances: {}\n")


def test_unknown_form():
    """Test only R and D branches are accepted"""
    with pytest.raises(ParseError):
        deserialize_tree("format: load-signature-tree/1\nappliances:\n  kettle:\n    X: []\n")


def test_invalid_yaml_reports_line():
    """Test syntax errors carry a line number"""
    with pytest.raises(ParseError) as excinfo:
        deserialize_tree("format: load-signature-tree/1\nappliances: [unclosed\n")
    assert excinfo.value.line is not None


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
