"""
Module containing the forest fire sampler used by the pretraining protocol,
and the residual graph that is left once a sample has been taken out.

The fire starts at a uniformly random node. Every burning node burns a
geometrically distributed number of its not yet burned neighbors (mean
p / (1 - p) for a burning probability p); burned nodes join the sample and
burn in turn, in the order they caught fire. When the fire dies out before
the sample is complete it is restarted from a random node outside the
sample.
"""
import collections
import logging
import math

import numpy as np

from core import LabError
import core.vars as lvars

logger = logging.getLogger(__name__)


class SampleResult:
    """
    Result of a sampling run: the induced 'subgraph', the 'node_map' (sorted
    original ids, subgraph node i is original node node_map[i]) and the
    'sampled' nodes in the order they were burned.
    """

    def __init__(self, subgraph, node_map, sampled):
        self.subgraph = subgraph
        self.node_map = node_map
        self.sampled = sampled

    def __len__(self):
        return len(self.node_map)

    def __str__(self):
        return f'SampleResult(n={self.subgraph.n}, m={self.subgraph.m})'


def sample_size(n, fraction):
    """Number of nodes a sample of 'fraction' of 'n' nodes contains"""
    return min(n, int(math.ceil(fraction * n - 1e-9)))


def forest_fire_sample(g, fraction, burn_probability=None, rng=None):
    """
    Take a forest fire sample of ceil(fraction * n) nodes from 'g' and return
    the SampleResult. 'burn_probability' defaults to
    core.vars.BURN_PROBABILITY and 'rng' is a numpy Generator.
    """
    if burn_probability is None:
        burn_probability = lvars.BURN_PROBABILITY
    if not 0.0 < fraction <= 1.0:
        raise SamplingError('Sample fraction must lie in (0, 1]', fraction)
    if not 0.0 < burn_probability < 1.0:
        raise SamplingError('Burning probability must lie in (0, 1)',
                            burn_probability)
    if rng is None:
        rng = np.random.default_rng()

    target = sample_size(g.n, fraction)
    burned = np.zeros(g.n, dtype=bool)
    order = []
    fire = collections.deque()
    restarts = 0
    while len(order) < target:
        if not fire:
            outside = np.flatnonzero(~burned)
            seed = int(outside[rng.integers(len(outside))])
            burned[seed] = True
            order.append(seed)
            fire.append(seed)
            restarts += 1
            continue
        node = fire.popleft()
        nbrs = g.neighbors(node)
        unburned = nbrs[~burned[nbrs]]
        count = min(int(rng.geometric(1.0 - burn_probability)) - 1,
                    len(unburned), target - len(order))
        if count <= 0:
            continue
        for w in rng.choice(unburned, size=count, replace=False).tolist():
            burned[w] = True
            order.append(w)
            fire.append(w)

    subgraph, node_map = g.subgraph(order)
    logger.debug('Forest fire burned %d nodes with %d ignitions',
                 len(order), restarts)
    return SampleResult(subgraph, node_map, np.asarray(order, dtype=np.int64))


def residual_graph(g, regions, sampled):
    """
    Return the graph induced by the nodes of 'g' outside 'sampled', its
    RegionLabels and the node map (sorted original ids). At least one node
    must remain.
    """
    sampled = np.unique(np.asarray(sampled, dtype=np.int64))
    if len(sampled) >= g.n:
        raise SamplingError('The sample covers the whole graph, nothing is '
                            'left to evaluate on', len(sampled))
    keep = np.ones(g.n, dtype=bool)
    keep[sampled] = False
    residual, node_map = g.subgraph(np.flatnonzero(keep))
    return residual, regions.restrict(node_map), node_map


class SamplingError(LabError):
    """Error raised for invalid sampling requests."""
