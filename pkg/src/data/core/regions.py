"""
Module containing the ground truth of a network: the RegionLabels (which node
is honest and which is Sybil) and the TrainSplit (which of those labels are
known to a detector).

Honest is the negative class, Sybil the positive one. Every array of node ids
handed out by these classes is sorted and of dtype int64.
"""
import numpy as np

from core.errors import LabError


class RegionLabels:
    """
    The RegionLabels partition the nodes of a graph into the honest region H
    and the Sybil region S. Internally it is a single boolean array
    'is_sybil' of length n, so H and S are disjoint and cover V by
    construction.
    """

    def __init__(self, is_sybil):
        """
        Constructor for RegionLabels. Takes 'is_sybil', a boolean array with
        one entry per node.
        """
        self.is_sybil = np.asarray(is_sybil, dtype=bool).copy()
        self.is_sybil.flags.writeable = False

    @classmethod
    def from_sets(cls, n, honest, sybil):
        """
        Build labels from explicit 'honest' and 'sybil' node sets over 'n'
        nodes. The sets must be disjoint and cover every node.
        """
        honest = np.asarray(list(honest), dtype=np.int64)
        sybil = np.asarray(list(sybil), dtype=np.int64)
        seen = np.zeros(n, dtype=np.int64)
        np.add.at(seen, honest, 1)
        np.add.at(seen, sybil, 1)
        if np.any(seen != 1):
            raise LabelError('Honest and Sybil sets must partition the nodes',
                             int(np.flatnonzero(seen != 1)[0]))
        is_sybil = np.zeros(n, dtype=bool)
        is_sybil[sybil] = True
        return cls(is_sybil)

    @property
    def n(self):
        return len(self.is_sybil)

    @property
    def honest(self):
        return np.flatnonzero(~self.is_sybil)

    @property
    def sybil(self):
        return np.flatnonzero(self.is_sybil)

    @property
    def n_honest(self):
        return int(self.n - self.is_sybil.sum())

    @property
    def n_sybil(self):
        return int(self.is_sybil.sum())

    def restrict(self, node_map):
        """Labels of the subgraph whose node i is the original node_map[i]"""
        node_map = np.asarray(node_map, dtype=np.int64)
        return RegionLabels(self.is_sybil[node_map])

    def __eq__(self, other):
        if not isinstance(other, RegionLabels):
            return NotImplemented
        return np.array_equal(self.is_sybil, other.is_sybil)

    def __hash__(self):
        return hash(self.is_sybil.tobytes())

    def __str__(self):
        return f'RegionLabels(n_H={self.n_honest}, n_S={self.n_sybil})'


class TrainSplit:
    """
    The TrainSplit holds the known nodes of a network: 'train_honest'
    (H_train) and 'train_sybil' (S_train). The test sets are everything else
    in the respective region, so H_test = H minus H_train and
    S_test = S minus S_train always hold.

    Known sets are checked against the RegionLabels at construction: a known
    honest node that is actually a Sybil is rejected.
    """

    def __init__(self, regions, train_honest, train_sybil):
        """
        Constructor for TrainSplit. Takes the 'regions' the split refers to
        and the two known node sets 'train_honest' and 'train_sybil'.
        """
        self.regions = regions
        self.train_honest = np.unique(np.asarray(train_honest, dtype=np.int64))
        self.train_sybil = np.unique(np.asarray(train_sybil, dtype=np.int64))
        for name, nodes, want_sybil in (('honest', self.train_honest, False),
                                        ('sybil', self.train_sybil, True)):
            if len(nodes) == 0:
                continue
            if nodes[0] < 0 or nodes[-1] >= regions.n:
                raise LabelError(f'Known {name} node out of range',
                                 (int(nodes[0]), int(nodes[-1])))
            wrong = regions.is_sybil[nodes] != want_sybil
            if np.any(wrong):
                raise LabelError(f'Known {name} node lies in the other region',
                                 int(nodes[wrong][0]))

    @property
    def test_honest(self):
        return np.setdiff1d(self.regions.honest, self.train_honest,
                            assume_unique=True)

    @property
    def test_sybil(self):
        return np.setdiff1d(self.regions.sybil, self.train_sybil,
                            assume_unique=True)

    @property
    def known(self):
        """All known nodes, sorted"""
        return np.union1d(self.train_honest, self.train_sybil)

    @property
    def test(self):
        """All unknown (test) nodes, sorted"""
        return np.setdiff1d(np.arange(self.regions.n), self.known,
                            assume_unique=True)

    def known_mask(self):
        mask = np.zeros(self.regions.n, dtype=bool)
        mask[self.train_honest] = True
        mask[self.train_sybil] = True
        return mask

    def labels_of(self, nodes):
        """Ground truth of 'nodes' as an int array (1 = Sybil, 0 = honest)"""
        return self.regions.is_sybil[np.asarray(nodes, dtype=np.int64)] \
            .astype(np.int64)

    def restrict(self, node_map):
        """
        Return the TrainSplit of the subgraph whose node i is the original
        node node_map[i]: known nodes outside the subgraph are dropped.
        """
        node_map = np.asarray(node_map, dtype=np.int64)
        relabel = np.full(self.regions.n, -1, dtype=np.int64)
        relabel[node_map] = np.arange(len(node_map))
        honest = relabel[self.train_honest]
        sybil = relabel[self.train_sybil]
        return TrainSplit(self.regions.restrict(node_map),
                          honest[honest >= 0], sybil[sybil >= 0])

    def with_known(self, train_honest, train_sybil):
        """Return a TrainSplit over the same regions with other known sets"""
        return TrainSplit(self.regions, train_honest, train_sybil)

    def __eq__(self, other):
        if not isinstance(other, TrainSplit):
            return NotImplemented
        return self.regions == other.regions and \
            np.array_equal(self.train_honest, other.train_honest) and \
            np.array_equal(self.train_sybil, other.train_sybil)

    def __hash__(self):
        return hash((self.train_honest.tobytes(), self.train_sybil.tobytes()))

    def __str__(self):
        return f'TrainSplit(|H_train|={len(self.train_honest)}, ' \
            f'|S_train|={len(self.train_sybil)})'


class LabelError(LabError):
    """Error raised for inconsistent region labels or known sets."""
