"""
Module containing the ranking metrics detectors are compared with.

Sybil is the positive class. Every metric is computed on the test nodes of a
network only: known nodes are never part of an evaluation.
"""
from dataclasses import dataclass

import numpy as np
import scipy.stats

from core import LabError
from core import ScoreVector


def _arrays(scores, labels):
    if isinstance(scores, ScoreVector):
        scores = scores.values
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    if scores.shape != labels.shape:
        raise EvaluationError('Scores and labels differ in length',
                              (scores.shape, labels.shape))
    return scores, labels


def auc(scores, labels):
    """
    Area under the ROC curve as the Mann-Whitney statistic with midranks:
    the probability that a random Sybil outscores a random honest node, ties
    counting one half. Both classes must be present.
    """
    scores, labels = _arrays(scores, labels)
    positives = int(labels.sum())
    negatives = len(labels) - positives
    if positives == 0 or negatives == 0:
        raise EvaluationError('AUC needs both honest and Sybil nodes',
                              (negatives, positives))
    ranks = scipy.stats.rankdata(scores)
    u = ranks[labels].sum() - positives * (positives + 1) / 2.0
    return float(u / (positives * negatives))


def roc_points(scores, labels):
    """
    Return the ROC curve as (fpr, tpr) arrays, from (0, 0) to (1, 1). Tied
    scores form a single step, so the trapezoidal area equals auc().
    """
    scores, labels = _arrays(scores, labels)
    positives = int(labels.sum())
    negatives = len(labels) - positives
    if positives == 0 or negatives == 0:
        raise EvaluationError('ROC needs both honest and Sybil nodes',
                              (negatives, positives))
    order = np.argsort(-scores, kind='stable')
    ordered = scores[order]
    hits = labels[order]
    # Last position of every group of equal scores
    ends = np.flatnonzero(np.diff(ordered) != 0)
    ends = np.append(ends, len(ordered) - 1)
    tps = np.cumsum(hits)[ends]
    fps = (ends + 1) - tps
    fpr = np.concatenate(([0.0], fps / negatives))
    tpr = np.concatenate(([0.0], tps / positives))
    return fpr, tpr


def confusion_at(scores, labels, threshold):
    """
    Accuracy, precision and recall when every node scoring at least
    'threshold' is predicted Sybil. Precision is 0 when nothing is predicted
    Sybil and recall is 0 without Sybil nodes.
    """
    scores, labels = _arrays(scores, labels)
    predicted = scores >= threshold
    tp = int(np.sum(predicted & labels))
    fp = int(np.sum(predicted & ~labels))
    tn = int(np.sum(~predicted & ~labels))
    accuracy = (tp + tn) / len(labels) if len(labels) else 0.0
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / int(labels.sum()) if labels.any() else 0.0
    return accuracy, precision, recall


@dataclass
class EvalResult:
    """
    Evaluation of a score vector on a set of test nodes: 'auc', the ROC
    curve ('fpr', 'tpr') and 'accuracy', 'precision' and 'recall' at
    'threshold'.
    """

    auc: float
    fpr: np.ndarray
    tpr: np.ndarray
    accuracy: float
    precision: float
    recall: float
    threshold: float

    @property
    def roc(self):
        """ROC curve as a list of (fpr, tpr) points"""
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))


def evaluate(scores, split, threshold=0.5, nodes=None):
    """
    Evaluate 'scores' against the ground truth of 'split'. The evaluated
    nodes default to the test nodes of the split.
    """
    if isinstance(scores, ScoreVector):
        scores = scores.values
    nodes = split.test if nodes is None else np.asarray(nodes, dtype=np.int64)
    values = np.asarray(scores, dtype=np.float64)[nodes]
    labels = split.labels_of(nodes)
    fpr, tpr = roc_points(values, labels)
    accuracy, precision, recall = confusion_at(values, labels, threshold)
    return EvalResult(auc(values, labels), fpr, tpr, accuracy, precision,
                      recall, threshold)


class EvaluationError(LabError):
    """Error raised when a metric is undefined for the given nodes."""
