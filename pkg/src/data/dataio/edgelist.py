"""
Module containing the edge list text format and the id map of ingested
datasets.

An edge list has one whitespace separated "u v" pair per line (extra tokens,
such as weights or timestamps, are ignored). Lines starting with '#' are
comments, except for an optional '# nodes N' header that fixes the node
count so that isolated nodes survive a write/read round trip. This is the
SNAP convention, so public datasets load unmodified.

Two id policies are supported:
- 'dense': ids are arbitrary tokens, mapped to 0..n-1 in order of first
  appearance;
- 'integer': ids already are integers in [0, n) and are kept as they are.

A directed file becomes undirected through a direction policy: 'union'
keeps every pair, 'mutual' only the pairs present in both directions.
"""
import logging
import pathlib
import re

import numpy as np

from core import LabError
from core import build_graph

logger = logging.getLogger(__name__)

POLICIES = ('union', 'mutual')
ID_POLICIES = ('dense', 'integer')

_HEADER = re.compile(r'#\s*nodes\s+(\d+)\s*$')


class IdMap:
    """
    Two way mapping between the external ids of a dataset ('externals', in
    dense id order) and the dense ids 0..n-1.
    """

    def __init__(self, externals):
        self.externals = [str(x) for x in externals]
        self.index = {name: i for i, name in enumerate(self.externals)}
        if len(self.index) != len(self.externals):
            raise DataFormatError('Id map contains duplicated ids')

    @classmethod
    def identity(cls, n):
        """Id map of a file whose ids already are 0..n-1"""
        return cls([str(i) for i in range(n)])

    def __len__(self):
        return len(self.externals)

    def dense(self, name):
        try:
            return self.index[str(name)]
        except KeyError:
            raise DataFormatError('Unknown node id', name) from None

    def external(self, node):
        return self.externals[node]


def _read_pairs(path):
    """Return the token pairs of the file and the '# nodes' header or None"""
    path = pathlib.Path(path)
    tokens = []
    declared = None
    with path.open() as f:
        for number, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith('#'):
                match = _HEADER.match(stripped)
                if match and declared is None:
                    declared = int(match.group(1))
                continue
            fields = stripped.split()
            if len(fields) < 2:
                raise DataFormatError(f'Malformed edge at line {number}',
                                      f'{path}:{number}')
            tokens.append(fields[0])
            tokens.append(fields[1])
    return np.asarray(tokens, dtype=object), declared


def _densify(tokens):
    """Map tokens to dense ids in first appearance order"""
    if len(tokens) == 0:
        return np.empty(0, dtype=np.int64), IdMap([])
    names = tokens.astype(str)
    unique, first, inverse = np.unique(names, return_index=True,
                                       return_inverse=True)
    order = np.argsort(first, kind='stable')
    rank = np.empty(len(unique), dtype=np.int64)
    rank[order] = np.arange(len(unique))
    return rank[inverse.ravel()], IdMap(unique[order])


def _integers(tokens, path):
    try:
        return np.asarray([int(t) for t in tokens], dtype=np.int64)
    except ValueError as e:
        raise DataFormatError('Integer id policy needs integer ids',
                              str(path)) from e


def mutual_pairs(pairs, n):
    """Keep the directed pairs whose reverse pair is also present"""
    codes = pairs[:, 0] * n + pairs[:, 1]
    reverse = pairs[:, 1] * n + pairs[:, 0]
    return pairs[np.isin(reverse, codes)]


def load_edge_list(path, direction='union', id_policy='dense'):
    """
    Read the edge list at 'path' with the 'direction' policy ('union' or
    'mutual') and 'id_policy' ('dense' or 'integer'). Return the Graph and
    its IdMap.
    """
    if direction not in POLICIES:
        raise DataFormatError('Unknown direction policy', direction)
    if id_policy not in ID_POLICIES:
        raise DataFormatError('Unknown id policy', id_policy)
    tokens, declared = _read_pairs(path)
    if id_policy == 'dense':
        ids, id_map = _densify(tokens)
        n = len(id_map)
    else:
        ids = _integers(tokens, path)
        n = int(ids.max()) + 1 if len(ids) else 0
        if declared is not None:
            if declared < n:
                raise DataFormatError('Node id beyond the declared node count',
                                      (declared, n))
            n = declared
        id_map = IdMap.identity(n)
    pairs = ids.reshape(-1, 2)
    if direction == 'mutual':
        pairs = mutual_pairs(pairs, n)
    graph = build_graph(n, pairs)
    logger.info('Loaded %s: %s', path, graph)
    return graph, id_map


def write_edge_list(path, graph, id_map=None):
    """
    Write 'graph' as an edge list, one canonical pair per line, with a
    '# nodes N' header. Nodes are written with their external names when an
    'id_map' is given.
    """
    path = pathlib.Path(path)
    edges = graph.edge_array()
    with path.open('w') as f:
        f.write(f'# nodes {graph.n}\n')
        if id_map is None:
            np.savetxt(f, edges, fmt='%d')
        else:
            for u, v in edges.tolist():
                f.write(f'{id_map.external(u)} {id_map.external(v)}\n')


class DataFormatError(LabError):
    """Error raised for malformed or inconsistent data files."""
