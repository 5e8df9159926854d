"""
Useful docs to read for more information:
 - gat.model module
 - core.eventsys package (TrainEventListener)

Module containing the training loop of SybilGAT, the decision threshold
estimation and the two inference routines.

Training splits the known nodes of each class 0.8 / 0.2 into a fitting and
a validation subset. Only the fitting subset is encoded in the input, the
validation nodes are presented as unknown, and the loss is computed on the
fitting nodes alone. After every epoch the validation loss is measured and
training stops once it has not improved for 'patience' epochs; the
parameters of the best epoch are restored.

At inference on a new graph the known nodes are split 0.9 / 0.1: the larger
share is encoded in the input and the smaller one picks the threshold.

An EPOCH TrainEvent is launched after every epoch and a STOPPED one when
training ends.
"""
import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

import core.eventsys
from core import LabError
from core import ScoreVector
from core import derive_rng
from gat.model import GatModel
from gat.model import forward_pass
from gat.model import loss
from gat.model import loss_and_gradients
from gat.model import model_forward
from gat.model import node_features
from gat.model import sybil_probability
from gat.optim import Adam
from gat.structure import as_structure

logger = logging.getLogger(__name__)

INFERENCE_SHARE = 0.9


@dataclass
class TrainReport:
    """
    Summary of a training run: the per epoch 'train_losses' and
    'val_losses', the 'best_epoch' (1-indexed, lowest validation loss),
    whether training 'stopped_early', the decision 'threshold' estimated on
    the validation subset and the 'seed' of the run.
    """

    train_losses: list = field(default_factory=list)
    val_losses: list = field(default_factory=list)
    best_epoch: int = 0
    stopped_early: bool = False
    threshold: float = 0.5
    seed: int = 0

    @property
    def epochs(self):
        return len(self.val_losses)

    @property
    def best_loss(self):
        return self.val_losses[self.best_epoch - 1]

    def to_dict(self):
        return {'train_losses': list(self.train_losses),
                'val_losses': list(self.val_losses),
                'best_epoch': self.best_epoch,
                'stopped_early': self.stopped_early,
                'threshold': self.threshold,
                'seed': self.seed}


class EarlyStopping:
    """
    Tracks the validation loss of every epoch. An epoch improves when its
    loss is strictly lower than the best so far; after 'patience' epochs in
    a row without improvement should_stop becomes True.
    """

    def __init__(self, patience):
        self.patience = patience
        self.best_loss = np.inf
        self.best_epoch = 0
        self.best_state = None
        self.waited = 0

    def update(self, epoch, value, state=None):
        """
        Record the validation loss 'value' of 'epoch'. 'state' is called to
        snapshot the model when the epoch improves. Return True on
        improvement.
        """
        if value < self.best_loss:
            self.best_loss = value
            self.best_epoch = epoch
            self.best_state = state() if callable(state) else state
            self.waited = 0
            return True
        self.waited += 1
        return False

    @property
    def should_stop(self):
        return self.waited >= self.patience


def _round_half_up(x):
    return int(np.floor(x + 0.5))


def split_known(split, share, rng):
    """
    Split the known nodes of 'split' per class into a first subset with
    round(share * k) nodes and a second one with the rest. A class with at
    least two known nodes keeps one node on each side; a class with a single
    known node goes entirely to the first subset. Return both as TrainSplits.
    """
    first = []
    second = []
    for nodes in (split.train_honest, split.train_sybil):
        shuffled = rng.permutation(nodes)
        k = len(nodes)
        cut = k if k < 2 else min(max(_round_half_up(share * k), 1), k - 1)
        first.append(shuffled[:cut])
        second.append(shuffled[cut:])
    return (split.with_known(first[0], first[1]),
            split.with_known(second[0], second[1]))


def estimate_threshold(scores, labels):
    """
    Return the threshold maximizing Youden's J = TPR - FPR (a node is
    predicted Sybil when its score is >= the threshold). Candidates are 0, 1
    and the midpoints between consecutive sorted scores. Ties go to the
    candidate closest to 0.5, then to the lowest one. Without both classes
    the default 0.5 is returned with a warning.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    positives = int(labels.sum())
    negatives = len(labels) - positives
    if positives == 0 or negatives == 0:
        warnings.warn('Threshold validation set lacks a class, using 0.5')
        return 0.5
    ordered = np.sort(scores)
    candidates = np.concatenate(([0.0], (ordered[1:] + ordered[:-1]) / 2.0,
                                 [1.0]))
    predicted = scores[np.newaxis, :] >= candidates[:, np.newaxis]
    tpr = (predicted & labels).sum(axis=1) / positives
    fpr = (predicted & ~labels).sum(axis=1) / negatives
    youden = tpr - fpr
    best = np.flatnonzero(np.isclose(youden, youden.max(), rtol=0.0,
                                     atol=1e-12))
    distance = np.round(np.abs(candidates[best] - 0.5), 12)
    chosen = best[np.lexsort((candidates[best], distance))[0]]
    return float(candidates[chosen])


def train(g, split, hyper, structure=None):
    """
    Train a SybilGAT model with hyperparameters 'hyper' on the graph 'g'
    with known nodes 'split'. Return the model (parameters of the best
    epoch) and its TrainReport. Each class needs at least two known nodes.
    """
    if len(split.train_honest) < 2 or len(split.train_sybil) < 2:
        raise TrainingError('Training needs at least two known nodes per '
                            'class', (len(split.train_honest),
                                      len(split.train_sybil)))
    structure = as_structure(structure if structure is not None else g)
    fit_split, val_split = split_known(
        split, hyper.train_val_split, derive_rng(hyper.seed, 'gat', 'split'))
    x = node_features(g, fit_split, hyper.input_width)
    fit_nodes = fit_split.known
    fit_labels = split.labels_of(fit_nodes)
    val_nodes = val_split.known
    val_labels = split.labels_of(val_nodes)

    model = GatModel(hyper).initialize(derive_rng(hyper.seed, 'gat', 'init'))
    optimizer = Adam(model.parameters(), hyper.learning_rate)
    dropout = derive_rng(hyper.seed, 'gat', 'dropout')
    stopper = EarlyStopping(hyper.patience)
    report = TrainReport(seed=hyper.seed)

    for epoch in range(1, hyper.max_epochs + 1):
        train_loss, grads = loss_and_gradients(model, structure, x, fit_nodes,
                                               fit_labels, True, dropout)
        optimizer.step(grads)
        logits, _ = forward_pass(model, structure, x)
        val_loss, _ = loss(logits, val_nodes, val_labels)
        report.train_losses.append(train_loss)
        report.val_losses.append(val_loss)
        stopper.update(epoch, val_loss, model.state)
        core.eventsys.source.launch(
            core.eventsys.TrainEventListener.EPOCH,
            core.eventsys.TrainEventListener,
            core.eventsys.EventData(epoch=epoch, train_loss=train_loss,
                                    val_loss=val_loss,
                                    best_epoch=stopper.best_epoch))
        logger.debug('Epoch %d: train loss %.6f, validation loss %.6f',
                     epoch, train_loss, val_loss)
        if stopper.should_stop:
            report.stopped_early = True
            break

    model.load_state(stopper.best_state)
    report.best_epoch = stopper.best_epoch
    logits, _ = forward_pass(model, structure, x)
    report.threshold = estimate_threshold(
        sybil_probability(logits)[val_nodes], val_labels)
    logger.info('Trained %s: %d epochs, best epoch %d (validation loss '
                '%.4f)', model.label, report.epochs, report.best_epoch,
                report.best_loss)
    core.eventsys.source.launch(core.eventsys.TrainEventListener.STOPPED,
                                core.eventsys.TrainEventListener,
                                core.eventsys.EventData(report=report))
    return model, report


def predict(model, g, split, threshold=0.5, structure=None):
    """
    Score the graph 'g' whose known nodes 'split' are encoded in the input.
    Return the ScoreVector and the binary labels (1 = Sybil, score >=
    'threshold').
    """
    structure = as_structure(structure if structure is not None else g)
    x = node_features(g, split, model.hyper.input_width)
    scores = model_forward(model, structure, x)
    labels = (scores.values >= threshold).astype(np.int64)
    return scores, labels


def predict_with_threshold(model, g, split, rng, structure=None):
    """
    Inference on a graph with known nodes 'split': 90% of the known nodes of
    each class are encoded in the input and the threshold is estimated on
    the scores of the other 10%. Return the ScoreVector (threshold in its
    diagnostics), the binary labels and the threshold.
    """
    input_split, threshold_split = split_known(split, INFERENCE_SHARE, rng)
    scores, _ = predict(model, g, input_split, 0.5, structure)
    nodes = threshold_split.known
    threshold = estimate_threshold(scores.values[nodes],
                                   split.labels_of(nodes))
    labels = (scores.values >= threshold).astype(np.int64)
    scores = ScoreVector(scores.values, scores.detector,
                         {'threshold': threshold})
    return scores, labels, threshold


class TrainingError(LabError):
    """Error raised when a model cannot be trained."""
