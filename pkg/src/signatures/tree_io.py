"""
YAML persistence of signature trees

Document layout (one layer per nesting level):

    format: load-signature-tree/1
    appliances:
      kettle:
        R:
          - dts: {mean: 1139.0, std: 9.8, n: 50}
            trs:
              mean: 0.48
              ...
              dsp:
                ...
                tdt:
                  ...
                  label:
                    from: 0
                    to: 1
                    ssp: {mean: 1027.0, std: 5.2, n: 50}
                    std: {mean: 514.0, std: 43.2, n: 50}
        D: []
"""

import yaml

from src.signatures.extractor import GaussianParam, SignatureSet
from src.signatures.tree import FORMS, SignatureTree, build_tree
from src.utils.constants import TREE_FORMAT_TAG
from src.utils.errors import ParseError
from src.utils.logging import get_logger

logger = get_logger("signatures.tree_io")

_CHAIN = ("dts", "trs", "dsp", "tdt")


def _gaussian_doc(g):
    return {"mean": float(g.mean), "std": float(g.std), "n": int(g.n)}


def _chain_doc(s):
    leaf = {
        "from": int(s.transition_label[0]),
        "to": int(s.transition_label[1]),
        "ssp": _gaussian_doc(s.mu),
        "std": _gaussian_doc(s.tau),
    }
    node = {"label": leaf}
    for layer, gaussian in zip(reversed(_CHAIN), (s.delta, s.beta, s.gamma, s.alpha)):
        node = {layer: dict(_gaussian_doc(gaussian), **node)}
    return node


def serialize_tree(tree) -> str:
    """Render a SignatureTree as a versioned YAML document"""
    document = {"format": TREE_FORMAT_TAG, "appliances": {}}
    for appliance in sorted(tree.appliances):
        branch = tree.appliances[appliance]
        document["appliances"][appliance] = {form: [_chain_doc(s) for s in branch[form]] for form in FORMS}
    return yaml.safe_dump(document, sort_keys=False, default_flow_style=False)


def _gaussian(node, layer, where):
    if not isinstance(node, dict):
        raise ParseError(f"{where}: layer '{layer}' must be a mapping", field=layer)
    try:
        return GaussianParam(mean=float(node["mean"]), std=float(node["std"]), n=int(node.get("n", 1)))
    except KeyError as exc:
        raise ParseError(f"{where}: layer '{layer}' lacks {exc.args[0]}", field=layer) from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: layer '{layer}' is not numeric ({exc})", field=layer) from exc


def _parse_chain(node, form, where):
    gaussians = []
    for layer in _CHAIN:
        if not isinstance(node, dict) or layer not in node:
            raise ParseError(f"{where}: missing layer '{layer}'", field=layer)
        node = node[layer]
        gaussians.append(_gaussian(node, layer, where))
    if "label" not in node:
        raise ParseError(f"{where}: missing layer 'label'", field="label")
    leaf = node["label"]
    for layer in ("from", "to", "ssp", "std"):
        if not isinstance(leaf, dict) or layer not in leaf:
            raise ParseError(f"{where}: label lacks '{layer}'", field=layer)
    alpha, gamma, beta, delta = gaussians
    return SignatureSet(
        form=form,
        alpha=alpha,
        gamma=gamma,
        beta=beta,
        delta=delta,
        transition_label=(int(leaf["from"]), int(leaf["to"])),
        mu=_gaussian(leaf["ssp"], "ssp", where),
        tau=_gaussian(leaf["std"], "std", where),
    )


def deserialize_tree(text) -> SignatureTree:
    """
    Parse a tree document

    Args:
        text: str, YAML document

    Returns:
        SignatureTree

    Raises:
        ParseError: malformed YAML, wrong format tag or a missing layer
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(f"invalid YAML: {getattr(exc, 'problem', exc)}",
                         line=mark.line + 1 if mark is not None else None) from exc

    if not isinstance(document, dict):
        raise ParseError("tree document must be a mapping")
    if document.get("format") != TREE_FORMAT_TAG:
        raise ParseError(f"unsupported tree format {document.get('format')!r}", field="format")
    appliances = document.get("appliances") or {}
    if not isinstance(appliances, dict):
        raise ParseError("'appliances' must be a mapping", field="appliances")

    tree = SignatureTree()
    for appliance, forms in appliances.items():
        forms = forms or {}
        sets = []
        for form in forms:
            if form not in FORMS:
                raise ParseError(f"{appliance}: unknown form '{form}'", field="form")
            for k, chain in enumerate(forms[form] or []):
                sets.append(_parse_chain(chain, form, f"{appliance}/{form}[{k}]"))
        build_tree(str(appliance), sets, tree)
    return tree


def save_tree(tree, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_tree(tree))
    logger.info(f"Wrote signature tree with {len(tree)} path(s) to {path}")


def load_tree(path) -> SignatureTree:
    with open(path, "r", encoding="utf-8") as handle:
        return deserialize_tree(handle.read())
