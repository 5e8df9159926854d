"""
Module containing the label and known node text formats.

A label file has one "node label" line per node, where label is 0 / 1 or
honest / sybil (any case) and node is an external id of the graph's IdMap.
'#' lines are comments. The same format stores the known nodes of a
TrainSplit, listing known nodes only.
"""
import logging
import pathlib

import numpy as np

from core import RegionLabels
from core import TrainSplit
from dataio.edgelist import DataFormatError
from dataio.edgelist import IdMap

logger = logging.getLogger(__name__)

_VALUES = {'0': 0, '1': 1, 'honest': 0, 'sybil': 1}
UNLABELED_POLICIES = ('reject', 'honest', 'sybil')


def _read_labels(path, id_map):
    """Return the dense node ids and 0/1 labels listed in the file"""
    path = pathlib.Path(path)
    found = {}
    with path.open() as f:
        for number, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith('#'):
                continue
            fields = stripped.split()
            if len(fields) < 2 or fields[1].lower() not in _VALUES:
                raise DataFormatError(f'Malformed label at line {number}',
                                      f'{path}:{number}')
            node = id_map.dense(fields[0])
            value = _VALUES[fields[1].lower()]
            if found.setdefault(node, value) != value:
                raise DataFormatError('Conflicting labels for a node',
                                      fields[0])
    nodes = np.fromiter(found.keys(), dtype=np.int64, count=len(found))
    values = np.fromiter(found.values(), dtype=np.int64, count=len(found))
    return nodes, values


def load_labels(path, id_map, unlabeled='reject'):
    """
    Read the ground truth at 'path' for the nodes of 'id_map' (an IdMap, or
    a node count for files using dense ids). Nodes without a label are
    rejected, or marked honest or Sybil according to 'unlabeled'.
    """
    if unlabeled not in UNLABELED_POLICIES:
        raise DataFormatError('Unknown unlabeled node policy', unlabeled)
    if not isinstance(id_map, IdMap):
        id_map = IdMap.identity(int(id_map))
    nodes, values = _read_labels(path, id_map)
    is_sybil = np.full(len(id_map), unlabeled == 'sybil')
    missing = len(id_map) - len(nodes)
    if missing:
        if unlabeled == 'reject':
            seen = np.zeros(len(id_map), dtype=bool)
            seen[nodes] = True
            first = id_map.external(int(np.flatnonzero(~seen)[0]))
            raise DataFormatError(f'{missing} nodes have no label', first)
        logger.warning('%d unlabeled nodes marked %s', missing, unlabeled)
    is_sybil[nodes] = values.astype(bool)
    return RegionLabels(is_sybil)


def write_labels(path, regions, id_map=None):
    """Write one "node label" line (0 honest, 1 Sybil) per node"""
    _write_pairs(path, np.arange(regions.n),
                 regions.is_sybil.astype(np.int64), id_map)


def load_split(path, regions, id_map=None):
    """Read the known nodes at 'path' into a TrainSplit over 'regions'"""
    if id_map is None:
        id_map = IdMap.identity(regions.n)
    nodes, values = _read_labels(path, id_map)
    return TrainSplit(regions, nodes[values == 0], nodes[values == 1])


def write_split(path, split, id_map=None):
    """Write the known nodes of 'split' with their labels"""
    nodes = split.known
    _write_pairs(path, nodes, split.labels_of(nodes), id_map)


def _write_pairs(path, nodes, values, id_map):
    path = pathlib.Path(path)
    with path.open('w') as f:
        for node, value in zip(nodes.tolist(), values.tolist()):
            name = id_map.external(node) if id_map is not None else node
            f.write(f'{name} {value}\n')
