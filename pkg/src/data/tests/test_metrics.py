import numpy as np
import pytest

from core import TrainSplit
from evaluation import EvaluationError
from evaluation import auc
from evaluation import confusion_at
from evaluation import evaluate
from evaluation import roc_points
from tests import labels_from


def pairwise_auc(scores, labels):
    sybil = scores[labels == 1]
    honest = scores[labels == 0]
    wins = (sybil[:, np.newaxis] > honest[np.newaxis, :]).sum()
    ties = (sybil[:, np.newaxis] == honest[np.newaxis, :]).sum()
    return (wins + 0.5 * ties) / (len(sybil) * len(honest))


def random_instances(count, rng):
    for _ in range(count):
        size = int(rng.integers(2, 40))
        labels = rng.integers(0, 2, size)
        labels[:2] = [0, 1]
        # Few distinct values, so that ties happen
        scores = rng.integers(0, 5, size) / 4.0
        yield scores, labels


def test_auc_matches_pairwise_count(rng):
    for scores, labels in random_instances(200, rng):
        assert auc(scores, labels) == pytest.approx(
            pairwise_auc(scores, labels), abs=1e-12)


def test_roc_area_is_the_auc(rng):
    for scores, labels in random_instances(50, rng):
        fpr, tpr = roc_points(scores, labels)
        assert (fpr[0], tpr[0]) == (0.0, 0.0)
        assert fpr[-1] == pytest.approx(1.0)
        assert tpr[-1] == pytest.approx(1.0)
        area = np.sum(np.diff(fpr) * (tpr[1:] + tpr[:-1]) / 2.0)
        assert area == pytest.approx(auc(scores, labels), abs=1e-12)


def test_auc_extremes():
    assert auc([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1]) == 1.0
    assert auc([0.9, 0.8, 0.2, 0.1], [0, 0, 1, 1]) == 0.0
    assert auc([0.5, 0.5, 0.5, 0.5], [0, 0, 1, 1]) == 0.5
    with pytest.raises(EvaluationError):
        auc([0.1, 0.2], [1, 1])
    with pytest.raises(EvaluationError):
        auc([0.1, 0.2], [1])


def test_confusion_at_threshold():
    accuracy, precision, recall = confusion_at([0.1, 0.6, 0.7, 0.2],
                                               [0, 0, 1, 1], 0.5)
    assert (accuracy, precision, recall) == (0.5, 0.5, 0.5)
    assert confusion_at([0.1, 0.2], [0, 1], 0.9)[1] == 0.0


def test_evaluate_uses_test_nodes_only():
    split = TrainSplit(labels_from([0, 0, 0, 1, 1, 1]), [0], [5])
    # Known nodes carry inverted scores that would spoil the AUC
    scores = np.array([1.0, 0.1, 0.2, 0.8, 0.9, 0.0])
    result = evaluate(scores, split)
    assert result.auc == 1.0
    assert result.roc[0] == (0.0, 0.0)
    assert result.accuracy == 1.0
