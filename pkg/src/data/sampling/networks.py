"""
Useful docs to read for more information:
 - sampling.forestfire module
 - synthesis.network module (LabeledNetwork)

Module containing the split of a LabeledNetwork into the sampled network
used for pretraining and the residual network used for evaluation.
"""
import numpy as np

from synthesis import LabeledNetwork
from synthesis import sample_train_split
from sampling.forestfire import residual_graph


def restrict_network(network, node_map, split=None):
    """
    Return the LabeledNetwork induced by the original nodes 'node_map'
    (sorted). Attack edges with both ends kept survive. 'split' replaces
    the restricted known nodes of 'network' when given.
    """
    node_map = np.asarray(node_map, dtype=np.int64)
    graph, _ = network.graph.subgraph(node_map)
    region_graph, _ = network.region_graph.subgraph(node_map)
    relabel = np.full(network.n, -1, dtype=np.int64)
    relabel[node_map] = np.arange(len(node_map))
    attack = relabel[network.attack_edges]
    attack = attack[np.all(attack >= 0, axis=1)]
    if split is None:
        split = network.split.restrict(node_map)
    return LabeledNetwork(graph, split.regions, split, attack, region_graph)


def split_network(network, sample, train_fraction, rng):
    """
    Cut 'network' along the SampleResult 'sample'. Return the sampled
    network, whose known nodes are drawn anew at 'train_fraction' from its
    own labels with 'rng', and the residual network, which keeps the known
    nodes of 'network' that lie outside the sample.
    """
    regions = network.regions.restrict(sample.node_map)
    split = sample_train_split(regions, train_fraction, rng)
    sampled = restrict_network(network, sample.node_map, split)
    _, _, node_map = residual_graph(network.graph, network.regions,
                                    sample.node_map)
    return sampled, restrict_network(network, node_map)
