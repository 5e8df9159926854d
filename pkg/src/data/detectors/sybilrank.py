"""
Module containing SybilRank: early-terminated power iteration of trust from
the known honest nodes.

The total trust n is split equally over the seeds, then every iteration each
node pushes its trust to its neighbors in equal shares:

    T_i(v) = sum over u in N(v) of T_{i-1}(u) / d(u)

Isolated nodes keep their trust, so the total stays n at every iteration.
After ceil(log2 n) iterations the nodes are ranked by degree normalized
trust T(v) / d(v). The node with the lowest key scores 1 and the one with the
highest 0; isolated nodes score 1.
"""
import logging
import math

import numpy as np

from core import ScoreVector
from detectors.base import Detector
from detectors.base import DetectorError

logger = logging.getLogger(__name__)


def auto_iterations(n):
    """Early termination point: ceil(log2 n), at least one iteration"""
    return max(1, int(math.ceil(math.log2(n)))) if n > 1 else 1


def iterate_trust(g, honest_seeds, iterations):
    """
    Generator yielding the trust vector of every iteration, starting with the
    initial one (so it yields iterations + 1 vectors).
    """
    seeds = np.unique(np.asarray(honest_seeds, dtype=np.int64))
    if len(seeds) == 0:
        raise DetectorError('SybilRank needs at least one honest seed')
    degrees = g.degrees.astype(np.float64)
    isolated = degrees == 0
    inverse = np.divide(1.0, degrees, out=np.zeros(g.n), where=~isolated)
    adjacency = g.adjacency()

    trust = np.zeros(g.n)
    trust[seeds] = g.n / len(seeds)
    yield trust
    for _ in range(iterations):
        pushed = adjacency @ (trust * inverse)
        pushed[isolated] += trust[isolated]
        trust = pushed
        yield trust


def rank_scores(key, isolated):
    """
    Turn the trust keys into scores: rank ascending by 'key' with ties broken
    by node id, score = 1 - rank / (count - 1). Nodes flagged 'isolated' get
    score 1.
    """
    scores = np.ones(len(key))
    ranked = np.flatnonzero(~isolated)
    count = len(ranked)
    if count == 1:
        scores[ranked] = 0.0
    elif count > 1:
        order = ranked[np.lexsort((ranked, key[ranked]))]
        scores[order] = 1.0 - np.arange(count) / (count - 1)
    return scores


def sybilrank(g, honest_seeds, iterations=None):
    """
    Run SybilRank on 'g' from 'honest_seeds' for 'iterations' power
    iterations (None for ceil(log2 n)) and return the ScoreVector.
    """
    if iterations is None:
        iterations = auto_iterations(g.n)
    if iterations < 0:
        raise DetectorError('Iteration count must be non-negative', iterations)
    for trust in iterate_trust(g, honest_seeds, iterations):
        pass
    degrees = g.degrees
    isolated = degrees == 0
    key = np.divide(trust, degrees, out=np.zeros(g.n), where=~isolated)
    logger.debug('SybilRank ran %d iterations, total trust %.6g',
                 iterations, trust.sum())
    return ScoreVector(rank_scores(key, isolated), 'SybilRank',
                       {'iterations': iterations,
                        'total_trust': float(trust.sum())})


class SybilRank(Detector):
    """
    Detector wrapper around sybilrank(). 'iterations' is the number of power
    iterations, None for the automatic ceil(log2 n).
    """

    name = 'sybilrank'

    def __init__(self, iterations=None):
        super().__init__()
        self.iterations = iterations

    @property
    def label(self):
        return 'SybilRank'

    def detect(self, graph, split):
        return sybilrank(graph, split.train_honest, self.iterations)

    def params(self):
        return {'iterations': self.iterations}
