"""
Module containing SybilBelief: sum-product loopy belief propagation on a
pairwise Markov random field over the social graph.

Every node is a binary variable (state 0 honest, state 1 Sybil) with a prior
from the known nodes; every edge carries the homophily potential
psi(same) = w and psi(different) = 1 - w. Messages live on directed edges in
CSR order: message e goes from sources()[e] to indices[e]. All messages are
updated at once from the previous pass (flooding schedule) and normalized
after every pass.
"""
import collections
import logging
from dataclasses import dataclass

import numpy as np

from core import ScoreVector
from detectors.base import Detector
from detectors.base import DetectorError

logger = logging.getLogger(__name__)

# Result of loopy_belief_propagation(): 'marginals' (n, 2), 'messages'
# (2m, 2), number of passes run and last max message change
LbpResult = collections.namedtuple(
    'LbpResult', ['marginals', 'messages', 'iterations', 'max_delta'])


@dataclass(frozen=True)
class BeliefParams:
    """
    Parameters of SybilBelief: 'edge_homophily' w, 'known_prior' (the prior
    Sybil probability of a known Sybil; known honest nodes get its
    complement), 'max_iterations' and the convergence 'tolerance' on the max
    message change.
    """

    edge_homophily: float = 0.9
    known_prior: float = 0.9
    max_iterations: int = 10
    tolerance: float = 1e-6

    def __post_init__(self):
        if not 0.5 <= self.edge_homophily < 1.0:
            raise DetectorError('Edge homophily must lie in [0.5, 1)',
                                self.edge_homophily)
        if not 0.5 < self.known_prior < 1.0:
            raise DetectorError('Known prior must lie in (0.5, 1)',
                                self.known_prior)
        if self.max_iterations < 1:
            raise DetectorError('At least one iteration is needed',
                                self.max_iterations)


def reverse_edges(g):
    """Index of the opposite directed edge (v, u) of every CSR entry (u, v)"""
    codes = g.sources() * g.n + g.indices
    return np.searchsorted(codes, g.indices * g.n + g.sources())


def node_priors(split, known_prior):
    """P(Sybil) prior of every node: known Sybil, known honest or 0.5"""
    priors = np.full(split.regions.n, 0.5)
    priors[split.train_sybil] = known_prior
    priors[split.train_honest] = 1.0 - known_prior
    return priors


def _beliefs(log_prior, log_messages, targets):
    """Unnormalized log beliefs: log prior plus every incoming message"""
    n = len(log_prior)
    incoming = np.column_stack(
        [np.bincount(targets, weights=log_messages[:, k], minlength=n)
         for k in (0, 1)])
    return log_prior + incoming


def _normalize(log_values):
    total = np.logaddexp(log_values[:, 0], log_values[:, 1])
    return np.exp(log_values - total[:, np.newaxis])


def loopy_belief_propagation(g, priors, edge_homophily, max_iterations,
                             tolerance):
    """
    Run sum-product LBP on 'g' with per-node Sybil 'priors' in (0, 1) and
    homophily 'edge_homophily'. Stop after 'max_iterations' passes or when
    the max message change drops below 'tolerance'. Return an LbpResult.
    """
    priors = np.asarray(priors, dtype=np.float64)
    log_prior = np.log(np.column_stack((1.0 - priors, priors)))
    w = edge_homophily
    log_psi = np.log(np.array([[w, 1.0 - w], [1.0 - w, w]]))

    sources = g.sources()
    targets = g.indices
    reverse = reverse_edges(g)
    messages = np.full((len(targets), 2), 0.5)

    iterations = 0
    delta = 0.0
    while len(targets) and iterations < max_iterations:
        log_messages = np.log(messages)
        beliefs = _beliefs(log_prior, log_messages, targets)
        # Leave out the message coming back from the receiver
        cavity = beliefs[sources] - log_messages[reverse]
        updated = np.column_stack(
            [np.logaddexp(cavity[:, 0] + log_psi[0, y],
                          cavity[:, 1] + log_psi[1, y]) for y in (0, 1)])
        updated = _normalize(updated)
        delta = float(np.max(np.abs(updated - messages)))
        messages = updated
        iterations += 1
        logger.debug('LBP pass %d: max message change %.3g',
                     iterations, delta)
        if delta < tolerance:
            break

    marginals = _normalize(_beliefs(log_prior, np.log(messages), targets))
    return LbpResult(marginals, messages, iterations, delta)


def sybilbelief(g, split, params=None):
    """
    Run SybilBelief on 'g' with the known nodes 'split' and BeliefParams
    'params'. The score of a node is its marginal Sybil probability.
    """
    if params is None:
        params = BeliefParams()
    if len(split.train_honest) + len(split.train_sybil) == 0:
        raise DetectorError('SybilBelief needs at least one known node')
    result = loopy_belief_propagation(
        g, node_priors(split, params.known_prior), params.edge_homophily,
        params.max_iterations, params.tolerance)
    return ScoreVector(np.clip(result.marginals[:, 1], 0.0, 1.0),
                       'SybilBelief',
                       {'iterations': result.iterations,
                        'max_delta': result.max_delta})


class SybilBelief(Detector):
    """Detector wrapper around sybilbelief(), configured by BeliefParams."""

    name = 'sybilbelief'

    def __init__(self, params=None):
        super().__init__()
        self.belief_params = params if params is not None else BeliefParams()

    @property
    def label(self):
        return 'SybilBelief'

    def detect(self, graph, split):
        return sybilbelief(graph, split, self.belief_params)

    def params(self):
        return dict(self.belief_params.__dict__)
