"""
Grid files and scenario spec files

Grid file: one parameter per line, `name min max increment`, `#` starts a comment.

Scenario file (YAML):

    rate: 50
    duration: 600
    noise_std: 1.0
    seed: 7
    tree: trees/house.yaml        # optional, relative to this file
    appliances:
      - name: kettle
        label: "0->1"             # path in the tree ...
        count: 3
      - name: heater
        signatures:               # ... or an inline set
          form: R
          from: 0
          to: 1
          dts: {mean: 1500, std: 10}
          trs: {mean: 0.3, std: 0.02}
          dsp: {mean: 1500, std: 10}
          tdt: {mean: 0.3, std: 0.02}
          ssp: {mean: 1500, std: 10}
          std: {mean: 60, std: 5}
        activations: [12.0, 300.0]
        noise_std: 40
        tdt_stretch: 1.0
"""

import os

import yaml

from src.evaluation.sweep import GridRow, ParameterGrid
from src.reconstruction.generator import AppliancePlan, ScenarioSpec
from src.signatures.extractor import GaussianParam, SignatureSet
from src.signatures.tree import FORMS
from src.signatures.tree_io import load_tree
from src.utils.errors import ArgumentError, ParseError
from src.utils.logging import get_logger

logger = get_logger("data.spec_files")


def read_grid_file(path) -> ParameterGrid:
    """
    Parse a sweep grid file

    Args:
        path: str, grid file

    Returns:
        ParameterGrid with rows in file order
    """
    rows = []
    with open(path, "r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            if len(parts) != 4:
                raise ParseError(f"{path}: expected 'name min max increment'", line=number)
            name = parts[0]
            try:
                minimum, maximum, increment = (float(p) for p in parts[1:])
            except ValueError as exc:
                raise ParseError(f"{path}: non-numeric bound", line=number, field=name) from exc
            row = GridRow(name, minimum, maximum, increment)
            try:
                row.values()
            except ArgumentError as exc:
                raise ParseError(f"{path}: {exc}", line=number, field=name) from exc
            rows.append(row)
    if not rows:
        raise ParseError(f"{path}: grid file has no parameters")
    return ParameterGrid(tuple(rows))


def _gaussian(node, field):
    if not isinstance(node, dict) or "mean" not in node:
        raise ParseError(f"signature '{field}' needs a mean", field=field)
    try:
        return GaussianParam(float(node["mean"]), float(node.get("std", 0.0)), int(node.get("n", 1)))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"signature '{field}' is not numeric ({exc})", field=field) from exc


def _inline_signatures(node, where):
    if node.get("form") not in FORMS:
        raise ParseError(f"{where}: form must be one of {FORMS}", field="form")
    try:
        label = (int(node["from"]), int(node["to"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{where}: integer 'from' and 'to' states required", field="from") from exc
    return SignatureSet(
        form=node["form"],
        alpha=_gaussian(node.get("dts"), "dts"),
        gamma=_gaussian(node.get("trs"), "trs"),
        beta=_gaussian(node.get("dsp"), "dsp"),
        delta=_gaussian(node.get("tdt"), "tdt"),
        transition_label=label,
        mu=_gaussian(node.get("ssp"), "ssp"),
        tau=_gaussian(node.get("std"), "std"),
    )


def _tree_signatures(tree, name, label, where):
    branch = tree.appliances.get(name)
    if branch is None:
        raise ParseError(f"{where}: appliance '{name}' not in tree", field="name")
    for form in FORMS:
        for signatures in branch[form]:
            if signatures.label == label:
                return signatures
    raise ParseError(f"{where}: label '{label}' not in tree", field="label")


def read_scenario_file(path) -> ScenarioSpec:
    """
    Parse a YAML scenario spec

    Args:
        path: str, scenario file

    Returns:
        ScenarioSpec
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = yaml.safe_load(handle)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(f"{path}: invalid YAML", line=mark.line + 1 if mark is not None else None) from exc
    if not isinstance(document, dict):
        raise ParseError(f"{path}: scenario must be a mapping")

    for key in ("rate", "duration", "appliances"):
        if key not in document:
            raise ParseError(f"{path}: missing '{key}'", field=key)

    tree = None
    if document.get("tree"):
        tree = load_tree(os.path.join(os.path.dirname(os.path.abspath(path)), str(document["tree"])))

    plans = []
    for k, entry in enumerate(document["appliances"] or []):
        where = f"{path}: appliances[{k}]"
        if not isinstance(entry, dict) or "name" not in entry:
            raise ParseError(f"{where}: entry needs a name", field="name")
        name = str(entry["name"])
        if "signatures" in entry:
            signatures = _inline_signatures(entry["signatures"] or {}, where)
        elif tree is not None and "label" in entry:
            signatures = _tree_signatures(tree, name, str(entry["label"]), where)
        else:
            raise ParseError(f"{where}: give inline signatures or a tree label", field="signatures")
        activations = entry.get("activations")
        try:
            plans.append(AppliancePlan(
                name=name,
                signatures=signatures,
                activations=tuple(float(t) for t in activations) if activations is not None else None,
                count=int(entry["count"]) if entry.get("count") is not None else None,
                noise_std=float(entry.get("noise_std", 0.0)),
                tdt_stretch=float(entry.get("tdt_stretch", 1.0)),
            ))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{where}: {exc}") from exc

    try:
        spec = ScenarioSpec(
            rate=float(document["rate"]),
            duration=float(document["duration"]),
            noise_std=float(document.get("noise_std", 0.0)),
            seed=int(document.get("seed", 0)),
            base_power=float(document.get("base_power", 0.0)),
            appliances=tuple(plans),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    spec.validate()
    logger.info(f"Loaded scenario with {len(plans)} appliance(s) from {path}")
    return spec
