"""
Module containing the ScoreVector, the common output of every detector.
"""
import numpy as np

from core.errors import LabError


class ScoreVector:
    """
    A ScoreVector holds one Sybil score in [0, 1] per node (higher means more
    Sybil-like) and the tag of the detector that produced it.

    'diagnostics' is a free mapping where detectors leave information about
    the run (iterations, last change, threshold, epochs...). It is never used
    for scoring.
    """

    def __init__(self, values, detector, diagnostics=None):
        """
        Constructor for ScoreVector. Takes the per-node 'values', the
        'detector' tag and optionally a 'diagnostics' dict. Non-finite values
        or values outside [0, 1] raise ScoreError.
        """
        values = np.asarray(values, dtype=np.float64).copy()
        if values.ndim != 1:
            raise ScoreError('Scores must be a flat vector', values.shape)
        if not np.all(np.isfinite(values)):
            raise ScoreError('Scores must be finite', detector)
        if np.any((values < 0.0) | (values > 1.0)):
            raise ScoreError('Scores must lie in [0, 1]', detector)
        values.flags.writeable = False
        self.values = values
        self.detector = detector
        self.diagnostics = dict(diagnostics or {})

    def __len__(self):
        return len(self.values)

    def __getitem__(self, nodes):
        return self.values[nodes]

    def __str__(self):
        return f'ScoreVector(detector={self.detector}, n={len(self.values)})'


class ScoreError(LabError):
    """Error raised when a detector produces an invalid score vector."""
