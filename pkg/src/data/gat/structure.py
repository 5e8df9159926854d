"""
Module containing the AttentionStructure, the edge layout attention layers
run on.

Every node attends over its neighbors and itself, so a self-loop is added to
each node. Directed entries (target i, source j) are sorted by target, then
by source: the entries of node i form one contiguous segment and segment
sums are a single np.add.reduceat. A second permutation sorts the entries by
source for the sums the backward pass needs per source node. Each node owns
at least its self-loop, so no segment is ever empty.
"""
import numpy as np


class AttentionStructure:
    """
    Edge layout of a Graph with self-loops added: 'targets' and 'sources'
    (one entry per directed edge plus n self-loops, sorted by target),
    'starts' (first entry of every target segment), 'by_source' (permutation
    sorting the entries by source) and 'source_starts'.
    """

    def __init__(self, g):
        self.n = g.n
        loops = np.arange(g.n, dtype=np.int64)
        targets = np.concatenate((g.sources(), loops))
        sources = np.concatenate((g.indices, loops))
        order = np.lexsort((sources, targets))
        self.targets = targets[order]
        self.sources = sources[order]
        counts = g.degrees + 1
        self.starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        self.by_source = np.lexsort((self.targets, self.sources))
        self.source_starts = self.starts

    def __len__(self):
        return len(self.targets)

    def sum_by_target(self, values):
        """Sum the per-entry 'values' over the segment of every target"""
        return np.add.reduceat(values, self.starts, axis=0)

    def max_by_target(self, values):
        return np.maximum.reduceat(values, self.starts, axis=0)

    def sum_by_source(self, values):
        """Sum the per-entry 'values' over the entries of every source"""
        return np.add.reduceat(values[self.by_source], self.source_starts,
                               axis=0)


def as_structure(g):
    """Return 'g' itself if it is an AttentionStructure, else build one"""
    if isinstance(g, AttentionStructure):
        return g
    return AttentionStructure(g)
