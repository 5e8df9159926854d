"""
Useful docs to read for more information:
 - core.regions module

Module containing the Graph class and the functions that build and combine
graphs. For info on the representation, check the docs for the
core.graph.Graph class.

Node ids are always dense integers in [0, n). Files with arbitrary ids are
densified at ingestion by the dataio package.
"""
import numpy as np
import scipy.sparse as sp

from core.errors import LabError
from core.regions import RegionLabels


class Graph:
    """
    A Graph is an immutable undirected simple graph stored in compressed
    adjacency form: 'indptr' (n + 1 offsets) and 'indices' (2m neighbor ids).
    The neighbors of node v are indices[indptr[v]:indptr[v + 1]], sorted in
    ascending order.

    Both arrays are made read-only at construction. A Graph never changes
    after it has been built, so it can be handed to any number of readers
    (threads, detectors, cached experiments) without copying.

    Graphs should be created through build_graph(), which sanitizes raw edge
    lists. The constructor trusts its arguments.
    """

    def __init__(self, indptr, indices):
        """
        Constructor for Graph. Takes the CSR offsets 'indptr' and the
        neighbor array 'indices'; both are expected to already describe a
        symmetric simple graph with sorted neighbor lists.
        """
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False
        self._adjacency = None

    @property
    def n(self):
        """Number of nodes"""
        return len(self.indptr) - 1

    @property
    def m(self):
        """Number of undirected edges"""
        return len(self.indices) // 2

    @property
    def degrees(self):
        """Degree of every node as an int64 array"""
        return np.diff(self.indptr)

    @property
    def average_degree(self):
        if self.n == 0:
            return 0.0
        return 2.0 * self.m / self.n

    def degree(self, v):
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v):
        """Return the sorted neighbor array of node 'v' (a read-only view)"""
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u, v):
        nbrs = self.neighbors(u)
        pos = np.searchsorted(nbrs, v)
        return bool(pos < len(nbrs) and nbrs[pos] == v)

    def sources(self):
        """Row index of every entry of 'indices' (the 'u' of each (u, v))"""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)

    def edge_array(self):
        """Return the (m, 2) array of edges as canonical (u, v) with u < v"""
        rows = self.sources()
        keep = rows < self.indices
        return np.column_stack((rows[keep], self.indices[keep]))

    def adjacency(self):
        """
        Return the adjacency matrix as a scipy CSR matrix of float64 ones.
        The matrix is built once and cached; callers must not modify it.
        """
        if self._adjacency is None:
            data = np.ones(len(self.indices), dtype=np.float64)
            self._adjacency = sp.csr_matrix(
                (data, self.indices, self.indptr), shape=(self.n, self.n))
        return self._adjacency

    def subgraph(self, nodes):
        """
        Return the subgraph induced by 'nodes' and the node map. The node map
        is the sorted array of original ids: subgraph id i corresponds to
        original id node_map[i].
        """
        node_map = np.unique(np.asarray(nodes, dtype=np.int64))
        if len(node_map) and (node_map[0] < 0 or node_map[-1] >= self.n):
            raise GraphError('Subgraph nodes out of range',
                             (int(node_map[0]), int(node_map[-1])))
        relabel = np.full(self.n, -1, dtype=np.int64)
        relabel[node_map] = np.arange(len(node_map))
        edges = self.edge_array()
        keep = (relabel[edges[:, 0]] >= 0) & (relabel[edges[:, 1]] >= 0)
        sub_edges = relabel[edges[keep]]
        return build_graph(len(node_map), sub_edges), node_map

    def check(self):
        """
        Full scan of the structural invariants: no self-loops, no duplicates,
        sorted neighbor lists and symmetry. Raise GraphError on violation.
        """
        rows = self.sources()
        if np.any(rows == self.indices):
            raise GraphError('Graph contains a self-loop')
        if len(self.indices):
            same_row = rows[1:] == rows[:-1]
            if np.any(same_row & (self.indices[1:] <= self.indices[:-1])):
                raise GraphError('Neighbor lists are not strictly sorted')
        forward = np.sort(rows * self.n + self.indices)
        backward = np.sort(self.indices * self.n + rows)
        if not np.array_equal(forward, backward):
            raise GraphError('Adjacency is not symmetric')
        if int(self.degrees.sum()) != 2 * self.m:
            raise GraphError('Degree sum does not match edge count')

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.indptr, other.indptr) and \
            np.array_equal(self.indices, other.indices)

    def __hash__(self):
        return hash((self.n, self.m, self.indices[:64].tobytes()))

    def __str__(self):
        """Return a string with the size of the Graph."""
        return f'Graph(n={self.n}, m={self.m})'


def build_graph(n, edges):
    """
    Build a Graph with 'n' nodes from 'edges', any iterable or array of node
    pairs. Duplicated pairs (in either orientation) are merged and self-loops
    are dropped. A pair with an id outside [0, n) raises GraphError carrying
    the offending pair.
    """
    n = int(n)
    if n < 0:
        raise GraphError('Node count must be non-negative', n)
    pairs = np.asarray(edges, dtype=np.int64)
    if pairs.size == 0:
        pairs = np.empty((0, 2), dtype=np.int64)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise GraphError('Edges must be a list of node pairs', pairs.shape)
    bad = (pairs < 0) | (pairs >= n)
    if np.any(bad):
        row = int(np.flatnonzero(bad.any(axis=1))[0])
        raise GraphError(f'Node id out of range [0, {n})',
                         tuple(int(x) for x in pairs[row]))

    low = np.minimum(pairs[:, 0], pairs[:, 1])
    high = np.maximum(pairs[:, 0], pairs[:, 1])
    keep = low != high
    codes = np.unique(low[keep] * n + high[keep])
    low, high = np.divmod(codes, n) if n else (codes, codes)

    rows = np.concatenate((low, high))
    cols = np.concatenate((high, low))
    order = np.lexsort((cols, rows))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
    return Graph(indptr, cols[order])


def bfs_distance_sets(g, sources, K):
    """
    Partition the nodes of 'g' by their shortest-path distance from the set
    'sources'. Return the list [D_0, ..., D_K] of sorted node arrays, where
    D_k holds the nodes at distance exactly k (D_0 = sources), and the
    remainder array of nodes farther than K or unreachable.
    """
    sources = np.unique(np.asarray(sources, dtype=np.int64))
    if len(sources) == 0:
        raise GraphError('Distance sets need at least one source node')
    if K < 0:
        raise GraphError('Maximum distance K must be non-negative', K)
    if sources[0] < 0 or sources[-1] >= g.n:
        raise GraphError('Source node out of range',
                         (int(sources[0]), int(sources[-1])))

    dist = np.full(g.n, -1, dtype=np.int64)
    dist[sources] = 0
    layers = [sources]
    frontier = sources
    adjacency = g.adjacency()
    for k in range(1, K + 1):
        if len(frontier):
            reached = np.unique(adjacency[frontier].indices)
            frontier = reached[dist[reached] < 0]
            dist[frontier] = k
        layers.append(frontier)
    remainder = np.flatnonzero(dist < 0)
    return layers, remainder


def compose_regions(honest, sybil):
    """
    Return the disjoint union of the 'honest' and 'sybil' graphs and the
    RegionLabels describing it. Honest nodes keep their ids; Sybil ids are
    shifted by honest.n. No edge crosses the two regions.
    """
    edges = np.concatenate((honest.edge_array(),
                            sybil.edge_array() + honest.n))
    graph = build_graph(honest.n + sybil.n, edges)
    is_sybil = np.zeros(graph.n, dtype=bool)
    is_sybil[honest.n:] = True
    return graph, RegionLabels(is_sybil)


class GraphError(LabError):
    """Error raised while building or querying a Graph."""
