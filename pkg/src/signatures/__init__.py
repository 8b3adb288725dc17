"""
Signatures package initialization
"""

from src.core.keypoints import KeyPoints, locate_keypoints
from .extractor import (
    Period,
    Segmentation,
    GaussianParam,
    SignatureSet,
    TransitionSignature,
    SteadySignature,
    segment_series,
    extract_signatures,
    fit_gaussian,
    classify_waveshape,
    cluster_steady_states,
    learn_signatures,
)
from .tree import SignatureTree, TreePath, QueryMatch, build_tree, query_tree, verify_steady_state
from .tree_io import serialize_tree, deserialize_tree, save_tree, load_tree

__all__ = [
    "KeyPoints",
    "locate_keypoints",
    "Period",
    "Segmentation",
    "GaussianParam",
    "SignatureSet",
    "TransitionSignature",
    "SteadySignature",
    "segment_series",
    "extract_signatures",
    "fit_gaussian",
    "classify_waveshape",
    "cluster_steady_states",
    "learn_signatures",
    "SignatureTree",
    "TreePath",
    "QueryMatch",
    "build_tree",
    "query_tree",
    "verify_steady_state",
    "serialize_tree",
    "deserialize_tree",
    "save_tree",
    "load_tree",
]
