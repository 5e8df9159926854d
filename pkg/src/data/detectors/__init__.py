"""
Package containing the Sybil detectors. Every detector inherits from
detectors.base.Detector and emits a core.ScoreVector:
- SybilRank, trust propagation by early-terminated random walks;
- SybilBelief, loopy belief propagation;
- SybilSCAR-C and SybilSCAR-D, local rule residual propagation;
- SybilGAT, the graph attention network of the gat package.

Use detectors.make_detector() to build one from its config key.
"""

# Expose classes in modules for easy access
from detectors.base import Detector
from detectors.base import DetectorError
from detectors.sybilrank import SybilRank
from detectors.sybilrank import sybilrank
from detectors.sybilrank import iterate_trust
from detectors.sybilbelief import BeliefParams
from detectors.sybilbelief import SybilBelief
from detectors.sybilbelief import sybilbelief
from detectors.sybilbelief import loopy_belief_propagation
from detectors.sybilscar import ScarParams
from detectors.sybilscar import SybilScar
from detectors.sybilscar import sybilscar
from detectors.sybilgat import SybilGat
from detectors.registry import DETECTORS
from detectors.registry import make_detector
from detectors.registry import detector_label
