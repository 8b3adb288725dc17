"""
Sequential load signature tree: root -> appliance -> form -> DTS -> TRS -> DSP -> TDT -> label -> (SSP, STD)
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.stats import norm

from src.signatures.extractor import D_FORM, R_FORM, GaussianParam, SignatureSet
from src.utils.constants import DENSITY_FLOOR, TREE_LAYERS
from src.utils.errors import ArgumentError
from src.utils.logging import get_logger

logger = get_logger("signatures.tree")

FORMS = (R_FORM, D_FORM)


@dataclass(frozen=True)
class TreePath:
    """One root-to-leaf chain"""

    appliance: str
    signatures: SignatureSet

    @property
    def label(self):
        return f"{self.appliance}:{self.signatures.label}"

    def layers(self):
        """(layer, value) pairs from the root down to the two leaves"""
        s = self.signatures
        values = ("root", s.form, s.alpha, s.gamma, s.beta, s.delta, s.label, s.mu, s.tau)
        return list(zip(TREE_LAYERS, values))


@dataclass(frozen=True)
class QueryMatch:
    appliance: str
    transition_label: Tuple[int, int]
    score: float
    ssp: GaussianParam
    std: GaussianParam

    @property
    def label(self):
        return f"{self.appliance}:{self.transition_label[0]}->{self.transition_label[1]}"


class SignatureTree:
    """Shared-root tree; each appliance node holds one R and one D branch"""

    def __init__(self):
        self.appliances: Dict[str, Dict[str, List[SignatureSet]]] = {}

    def add_appliance(self, appliance):
        self.appliances.setdefault(appliance, {form: [] for form in FORMS})

    def paths(self) -> List[TreePath]:
        """Root-to-leaf chains in preorder: appliance, then form, then label"""
        result = []
        for appliance in sorted(self.appliances):
            for form in FORMS:
                for signatures in self.appliances[appliance][form]:
                    result.append(TreePath(appliance, signatures))
        return result

    def preorder(self):
        """Yield (depth, layer, key) for every node, root first"""
        yield 0, "root", "root"
        for appliance in sorted(self.appliances):
            yield 1, "appliance", appliance
            for form in FORMS:
                chains = self.appliances[appliance][form]
                if not chains:
                    continue
                yield 2, "form", form
                for s in chains:
                    yield 3, "dts", s.alpha
                    yield 4, "trs", s.gamma
                    yield 5, "dsp", s.beta
                    yield 6, "tdt", s.delta
                    yield 7, "label", s.label
                    yield 8, "ssp", s.mu
                    yield 8, "std", s.tau

    def __eq__(self, other):
        return isinstance(other, SignatureTree) and self.appliances == other.appliances

    def __len__(self):
        return len(self.paths())


def _is_complete(signatures):
    return (signatures.form in FORMS and signatures.transition_label is not None and all(
        isinstance(g, GaussianParam)
        for g in (signatures.alpha, signatures.gamma, signatures.beta, signatures.delta, signatures.mu, signatures.tau)
    ))


def build_tree(appliance, sets, tree: Optional[SignatureTree] = None) -> SignatureTree:
    """
    Add one appliance's signature sets to a (possibly shared) tree

    Args:
        appliance: str, appliance name
        sets: list of SignatureSet
        tree: existing SignatureTree to extend, or None for a new one

    Returns:
        SignatureTree
    """
    tree = tree if tree is not None else SignatureTree()
    tree.add_appliance(appliance)
    branch = tree.appliances[appliance]
    existing = {s.transition_label: s for form in FORMS for s in branch[form]}
    for signatures in sets:
        if not _is_complete(signatures):
            raise ArgumentError(f"incomplete signature set for {appliance}")
        known = existing.get(signatures.transition_label)
        if known is not None:
            if known != signatures:
                raise ArgumentError(f"{appliance}: label {signatures.label} given twice with different signatures")
            continue
        existing[signatures.transition_label] = signatures
        branch[signatures.form].append(signatures)
    for form in FORMS:
        branch[form].sort(key=lambda s: s.transition_label)
    logger.debug(f"tree now holds {len(tree)} path(s)")
    return tree


def _log_density(value, gaussian):
    if gaussian.std < DENSITY_FLOOR:
        return 0.0 if np.isclose(value, gaussian.mean, rtol=0.0, atol=1e-9) else -np.inf
    return float(norm.logpdf(value, loc=gaussian.mean, scale=gaussian.std))


def query_tree(tree, observed) -> List[QueryMatch]:
    """
    Rank paths of the observed form by their joint Gaussian density

    Args:
        tree: SignatureTree
        observed: tuple (form, dts, trs, dsp, tdt)

    Returns:
        list of QueryMatch, best first; score is the log of the density product
    """
    form, dts, trs, dsp, tdt = observed
    matches = []
    for path in tree.paths():
        s = path.signatures
        if s.form != form:
            continue
        score = (_log_density(dts, s.alpha) + _log_density(trs, s.gamma)
                 + _log_density(dsp, s.beta) + _log_density(tdt, s.delta))
        if score == -np.inf:
            continue
        matches.append(QueryMatch(path.appliance, s.transition_label, score, s.mu, s.tau))
    matches.sort(key=lambda m: (-m.score, m.appliance, m.transition_label))
    return matches


def verify_steady_state(matches, observed_ssp) -> List[QueryMatch]:
    """Re-rank query matches by adding the density of the observed steady power"""
    verified = []
    for match in matches:
        bonus = _log_density(observed_ssp, match.ssp)
        if bonus == -np.inf:
            continue
        verified.append(QueryMatch(match.appliance, match.transition_label, match.score + bonus, match.ssp, match.std))
    verified.sort(key=lambda m: (-m.score, m.appliance, m.transition_label))
    return verified
