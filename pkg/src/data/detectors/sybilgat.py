"""
Module containing the SybilGAT detector, the Detector face of the gat
package.

fit() trains a model on the graph it is given: the pretraining sample or
small network, or the evaluation graph itself in transductive mode.
detect() encodes 90% of the known nodes of the graph to score in the input
and estimates the decision threshold on the other 10%.
"""
from core import derive_rng
from detectors.base import Detector
from detectors.base import DetectorError
from gat import AttentionStructure
from gat import GatHyper
from gat import load_checkpoint
from gat import predict_with_threshold
from gat import train


class SybilGat(Detector):
    """
    SybilGAT detector configured by a GatHyper 'hyper'. After fit() the
    trained 'model' and its 'report' are available.
    """

    name = 'sybilgat'

    def __init__(self, hyper=None):
        super().__init__()
        self.hyper = hyper if hyper is not None else GatHyper()
        self.model = None
        self.report = None

    @property
    def label(self):
        return f'SybilGAT-L{self.hyper.layers}'

    @classmethod
    def from_checkpoint(cls, path):
        """Build an already fitted detector from a checkpoint file"""
        model, _ = load_checkpoint(path)
        detector = cls(model.hyper)
        detector.model = model
        detector.fitted = True
        return detector

    def fit(self, graph, split):
        self.model, self.report = train(graph, split, self.hyper)
        self.fitted = True
        return self

    def detect(self, graph, split):
        if self.model is None:
            raise DetectorError('SybilGAT must be fitted before detecting',
                                self.label)
        scores, _, _ = predict_with_threshold(
            self.model, graph, split,
            derive_rng(self.hyper.seed, 'gat', 'inference'),
            AttentionStructure(graph))
        if self.report is not None:
            scores.diagnostics['epochs'] = self.report.epochs
            scores.diagnostics['best_epoch'] = self.report.best_epoch
        return scores

    def params(self):
        return self.hyper.to_dict()
