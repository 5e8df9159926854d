"""
Useful docs to read for more information:
 - synthesis.network module (LabeledNetwork)

Module containing network directories, the on-disk form of a
LabeledNetwork:
- graph.txt: the attacked graph as an edge list with a '# nodes N' header;
- labels.txt: the ground truth, one "node label" line per node;
- split.txt: the known nodes with their labels;
- attack_edges.txt: one "sybil honest" pair per line, no header;
- network.json: summary counts and, when known, the SynthSpec it was
  built from.
Node ids are the dense ids 0..n-1 in every file.
"""
import json
import logging
import pathlib

import numpy as np

from core import build_graph
from dataio.edgelist import DataFormatError
from dataio.edgelist import load_edge_list
from dataio.edgelist import write_edge_list
from dataio.labels import load_labels
from dataio.labels import load_split
from dataio.labels import write_labels
from dataio.labels import write_split
from synthesis.network import LabeledNetwork

logger = logging.getLogger(__name__)

GRAPH_FILE = 'graph.txt'
LABELS_FILE = 'labels.txt'
SPLIT_FILE = 'split.txt'
ATTACK_FILE = 'attack_edges.txt'
META_FILE = 'network.json'


def save_network(directory, network, spec=None):
    """
    Write 'network' into 'directory' (created if needed). 'spec' is the
    SynthSpec the network was built from, stored in network.json.
    """
    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_edge_list(directory.joinpath(GRAPH_FILE), network.graph)
    write_labels(directory.joinpath(LABELS_FILE), network.regions)
    write_split(directory.joinpath(SPLIT_FILE), network.split)
    with directory.joinpath(ATTACK_FILE).open('w') as f:
        np.savetxt(f, network.attack_edges, fmt='%d')
    meta = {'n': network.graph.n,
            'm': network.graph.m,
            'n_honest': network.regions.n_honest,
            'n_sybil': network.regions.n_sybil,
            'attack_edges': len(network.attack_edges),
            'known_honest': len(network.split.train_honest),
            'known_sybil': len(network.split.train_sybil)}
    if spec is not None:
        meta['spec'] = spec.to_dict()
    with directory.joinpath(META_FILE).open('w') as f:
        json.dump(meta, f, indent=1)
        f.write('\n')
    logger.info('Saved %s to %s', network, directory)


def _attack_edges(path):
    if not path.exists():
        return np.empty((0, 2), dtype=np.int64)
    pairs = []
    with path.open() as f:
        for number, line in enumerate(f, start=1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 2:
                raise DataFormatError(f'Malformed attack edge at line '
                                      f'{number}', f'{path}:{number}')
            pairs.append((int(fields[0]), int(fields[1])))
    return np.asarray(pairs, dtype=np.int64).reshape(-1, 2)


def load_network(directory):
    """Read a network directory written by save_network()"""
    directory = pathlib.Path(directory)
    graph, _ = load_edge_list(directory.joinpath(GRAPH_FILE),
                              id_policy='integer')
    regions = load_labels(directory.joinpath(LABELS_FILE), graph.n)
    split = load_split(directory.joinpath(SPLIT_FILE), regions)
    attack = _attack_edges(directory.joinpath(ATTACK_FILE))
    codes = set((np.minimum(attack[:, 0], attack[:, 1]) * graph.n +
                 np.maximum(attack[:, 0], attack[:, 1])).tolist())
    edges = graph.edge_array()
    keep = [code not in codes
            for code in (edges[:, 0] * graph.n + edges[:, 1]).tolist()]
    region_graph = build_graph(graph.n, edges[np.asarray(keep, dtype=bool)])
    return LabeledNetwork(graph, regions, split, attack, region_graph)


def load_meta(directory):
    """Return the network.json mapping of a network directory"""
    with pathlib.Path(directory).joinpath(META_FILE).open() as f:
        return json.load(f)
