"""
Module containing the DatasetDescriptor, the reference to a real dataset on
disk: an edge list and optionally a ground truth file.
"""
import pathlib
from dataclasses import dataclass

import core.vars as lvars
from dataio.edgelist import DataFormatError
from dataio.edgelist import ID_POLICIES
from dataio.edgelist import POLICIES
from dataio.edgelist import load_edge_list
from dataio.labels import UNLABELED_POLICIES
from dataio.labels import load_labels


def resolve_data_path(path):
    """Resolve a relative dataset path against core.vars.DATA_DIR"""
    path = pathlib.Path(path)
    if not path.is_absolute() and lvars.DATA_DIR is not None:
        return pathlib.Path(lvars.DATA_DIR).joinpath(path)
    return path


@dataclass(frozen=True)
class DatasetDescriptor:
    """
    A dataset: the 'edges' file read with the 'direction' and 'id_policy'
    policies, and the optional 'labels' file whose unlabeled nodes are
    handled according to 'unlabeled'.
    """

    edges: str
    labels: str = ''
    direction: str = 'union'
    id_policy: str = 'dense'
    unlabeled: str = 'reject'

    def __post_init__(self):
        if self.direction not in POLICIES:
            raise DataFormatError('Unknown direction policy', self.direction)
        if self.id_policy not in ID_POLICIES:
            raise DataFormatError('Unknown id policy', self.id_policy)
        if self.unlabeled not in UNLABELED_POLICIES:
            raise DataFormatError('Unknown unlabeled node policy',
                                  self.unlabeled)

    @property
    def name(self):
        return pathlib.Path(self.edges).stem

    @classmethod
    def from_dict(cls, data):
        known = {'edges', 'labels', 'direction', 'id_policy', 'unlabeled'}
        unknown = set(data) - known
        if unknown:
            raise DataFormatError('Invalid key in dataset description',
                                  sorted(unknown)[0])
        if 'edges' not in data:
            raise DataFormatError('Dataset description misses "edges"')
        return cls(**{k: str(v) for k, v in data.items()})

    def load(self, loader=None):
        """
        Read the dataset. Return the Graph, its RegionLabels (None without
        a label file) and the IdMap. 'loader(path, direction, id_policy)'
        replaces the edge list reader when given.
        """
        path = resolve_data_path(self.edges)
        if loader is not None:
            graph, id_map = loader(path, self.direction, self.id_policy)
        else:
            graph, id_map = load_edge_list(path, self.direction,
                                           self.id_policy)
        regions = None
        if self.labels:
            regions = load_labels(resolve_data_path(self.labels), id_map,
                                  self.unlabeled)
        return graph, regions, id_map
