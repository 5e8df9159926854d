"""
Module containing the base class every detector inherits from. For info on
the detector lifecycle, check out the docs for the Detector class.
"""
from core import LabError


class Detector:
    """
    Useful docs to read for more information:
    - core.scores module
    - detectors.registry module

    A Detector turns a graph and its known nodes into a ScoreVector. Every
    detector goes through the same lifecycle, driven by the harness:
    - fit(graph, split): executed once before any detection, with the graph
      and known nodes the detector is allowed to learn from. Structure-only
      detectors have nothing to learn and keep the default no-op; SybilGAT
      trains its model here (on the pretraining sample or small network, or
      on the evaluation graph itself in transductive mode).
    - detect(graph, split): executed on the graph to score. It must not
      modify its arguments and must return a ScoreVector of length graph.n.

    A fitted detector can detect on any number of graphs. Detectors are not
    shared between processes: each work item of the harness builds its own.

    The base Detector class should not be used: every detector has to
    inherit from it and override detect().
    """

    # Key used by make_detector(), e.g. 'sybilscar-d'
    name = ''

    def __init__(self):
        """Base Detector constructor"""
        self.fitted = False

    @property
    def label(self):
        """Display name used in result records, e.g. 'SybilSCAR-D'"""
        return self.__class__.__name__

    def fit(self, graph, split):
        """
        Executed once before detect(). Learn whatever the detector needs
        from 'graph' and its known nodes 'split'.
        """
        self.fitted = True
        return self

    def detect(self, graph, split):
        """Return the ScoreVector of 'graph' given the known nodes 'split'"""
        raise NotImplementedError

    def params(self):
        """Parameters of the detector as a plain mapping, for records"""
        return {}

    def __str__(self):
        """Return a formatted string with the detector's defining info."""
        return f'Detector(label={self.label}, fitted={self.fitted})'


class DetectorError(LabError):
    """Error raised for invalid detector requests or parameters."""
