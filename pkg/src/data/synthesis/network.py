"""
Useful docs to read for more information:
 - synthesis.generators module
 - synthesis.attack module

Module containing the complete synthetic networks: the RegionModel and
SynthSpec descriptors, the LabeledNetwork bundle and the functions that build
a bundle from a descriptor.

A SynthSpec has the following mapping form (JSON or YAML):

    honest: {model: pl, n: 1000, m: 6, p: 0.8}
    sybil: {model: ba, n: 1000, m: 6}
    attack: {edges_per_sybil: 8, p_targeted: 0.1, pdf: [0.25, 0.25, 0.5],
             targets: {honest: train, sybil: all}}
    train_fraction: 0.05
    seed: 42

A region can also be a real graph: {model: dataset, edges: facebook.txt,
direction: union}. Relative dataset paths are resolved against
core.vars.DATA_DIR when it is set. 'train_fraction' is either a number or a
mapping {honest: .., sybil: ..} with one fraction per class.

Randomness: every stage draws from its own named stream of 'seed'
('honest-region', 'sybil-region', 'split' and 'attack'), so the same seed
always gives the same regions whatever the attack looks like.
"""
import logging
import pathlib
from dataclasses import dataclass, field

import numpy as np
import ruamel.yaml

import core.vars as lvars
from core import build_graph
from core import compose_regions
from core import derive_rng
from core import TrainSplit
from core import LabelError
from synthesis.attack import AttackConfig
from synthesis.attack import place_attack_edges
from synthesis.attack import round_half_up
from synthesis.generators import generate_ba
from synthesis.generators import generate_pl
from synthesis.generators import SynthesisError

logger = logging.getLogger(__name__)

_MODELS = ('ba', 'pl', 'dataset')


@dataclass(frozen=True)
class RegionModel:
    """
    Descriptor of a region: 'model' is one of 'ba' (parameters 'n' and 'm'),
    'pl' ('n', 'm' and the triad probability 'p') or 'dataset' (an edge list
    file 'edges' read with the 'direction' policy).
    """

    model: str
    n: int = 0
    m: int = 0
    p: float = 0.0
    edges: str = ''
    direction: str = 'union'

    def __post_init__(self):
        if self.model not in _MODELS:
            raise SynthesisError('Unknown region model', self.model)
        if self.model == 'dataset' and not self.edges:
            raise SynthesisError('Dataset regions need an edge file')
        if self.model != 'dataset' and not 1 <= self.m < self.n:
            raise SynthesisError('Growth models need 1 <= m < n',
                                 (self.n, self.m))

    @property
    def label(self):
        """Short name used in records: 'BA', 'PL' or the dataset file stem"""
        if self.model == 'dataset':
            return pathlib.Path(self.edges).stem
        return self.model.upper()

    def path(self):
        """Path of the edge file, resolved against the data directory"""
        path = pathlib.Path(self.edges)
        if not path.is_absolute() and lvars.DATA_DIR is not None:
            path = pathlib.Path(lvars.DATA_DIR).joinpath(path)
        return path

    def build(self, rng, loader=None):
        """
        Return the region graph. Generative models draw from 'rng'; dataset
        regions are read with 'loader(path, direction)', which defaults to
        dataio.load_edge_list without id map.
        """
        if self.model == 'ba':
            return generate_ba(self.n, self.m, rng)
        if self.model == 'pl':
            return generate_pl(self.n, self.m, self.p, rng)
        if loader is None:
            from dataio.edgelist import load_edge_list
            return load_edge_list(self.path(), self.direction)[0]
        return loader(self.path(), self.direction)

    def to_dict(self):
        if self.model == 'dataset':
            return {'model': 'dataset', 'edges': self.edges,
                    'direction': self.direction}
        data = {'model': self.model, 'n': self.n, 'm': self.m}
        if self.model == 'pl':
            data['p'] = self.p
        return data

    @classmethod
    def from_dict(cls, data):
        known = {'model', 'n', 'm', 'p', 'edges', 'direction'}
        unknown = set(data) - known
        if unknown:
            raise SynthesisError('Invalid key in region description',
                                 sorted(unknown)[0])
        if 'model' not in data:
            raise SynthesisError('Region description misses "model"')
        return cls(model=str(data['model']).lower(),
                   n=int(data.get('n', 0)),
                   m=int(data.get('m', 0)),
                   p=float(data.get('p', 0.0)),
                   edges=str(data.get('edges', '')),
                   direction=str(data.get('direction', 'union')))


def _fractions(train_fraction):
    """Return the (honest, sybil) pair of a scalar or per-class fraction"""
    if isinstance(train_fraction, dict):
        return (float(train_fraction['honest']),
                float(train_fraction['sybil']))
    if isinstance(train_fraction, (tuple, list)):
        return float(train_fraction[0]), float(train_fraction[1])
    return float(train_fraction), float(train_fraction)


@dataclass(frozen=True)
class SynthSpec:
    """
    Complete description of a synthetic network: the 'honest' and 'sybil'
    RegionModels, the 'attack' AttackConfig, the 'train_fraction' (a float
    or a per-class (honest, sybil) pair) and the master 'seed'.
    """

    honest: RegionModel
    sybil: RegionModel
    attack: AttackConfig = field(default_factory=AttackConfig)
    train_fraction: object = 0.05
    seed: int = 0

    def __post_init__(self):
        for fraction in _fractions(self.train_fraction):
            if not 0.0 < fraction < 1.0:
                raise SynthesisError('Train fraction must lie in (0, 1)',
                                     fraction)

    @property
    def label(self):
        """Name of the region pair, e.g. 'PL-PL' or 'facebook-facebook'"""
        return f'{self.honest.label}-{self.sybil.label}'

    def replace(self, **changes):
        """Return a copy of this spec with the given fields changed"""
        data = {'honest': self.honest, 'sybil': self.sybil,
                'attack': self.attack, 'train_fraction': self.train_fraction,
                'seed': self.seed}
        data.update(changes)
        return SynthSpec(**data)

    def to_dict(self):
        fraction = self.train_fraction
        if not isinstance(fraction, (int, float)):
            honest, sybil = _fractions(fraction)
            fraction = {'honest': honest, 'sybil': sybil}
        return {'honest': self.honest.to_dict(),
                'sybil': self.sybil.to_dict(),
                'attack': self.attack.to_dict(),
                'train_fraction': fraction,
                'seed': self.seed}

    @classmethod
    def from_dict(cls, data):
        known = {'honest', 'sybil', 'attack', 'train_fraction', 'seed'}
        unknown = set(data) - known
        if unknown:
            raise SynthesisError('Invalid key in network description',
                                 sorted(unknown)[0])
        for key in ('honest', 'sybil'):
            if key not in data:
                raise SynthesisError(f'Network description misses "{key}"')
        fraction = data.get('train_fraction', lvars.TRAIN_FRACTION)
        if isinstance(fraction, (dict, list)):
            fraction = _fractions(fraction)
        return cls(honest=RegionModel.from_dict(dict(data['honest'])),
                   sybil=RegionModel.from_dict(dict(data['sybil'])),
                   attack=AttackConfig.from_dict(dict(data.get('attack', {}))),
                   train_fraction=fraction,
                   seed=int(data.get('seed', 0)))

    @classmethod
    def load(cls, path):
        """Load a SynthSpec from a JSON or YAML file"""
        try:
            data = ruamel.yaml.YAML(typ='safe').load(pathlib.Path(path))
        except ruamel.yaml.YAMLError as e:
            raise SynthesisError('Malformed network description', path) from e
        if not isinstance(data, dict):
            raise SynthesisError('Network description must be a mapping',
                                 path)
        return cls.from_dict(data)


class LabeledNetwork:
    """
    A LabeledNetwork is the full bundle a detector is run on: the attacked
    'graph', its ground truth 'regions', the known nodes 'split', the
    (sybil, honest) array 'attack_edges' and the pre-attack 'region_graph'.

    Every attack edge crosses the two regions and is an edge of 'graph';
    'region_graph' plus the attack edges gives back 'graph'.
    """

    def __init__(self, graph, regions, split, attack_edges, region_graph=None):
        self.graph = graph
        self.regions = regions
        self.split = split
        self.attack_edges = np.asarray(attack_edges, dtype=np.int64) \
            .reshape(-1, 2)
        self.region_graph = region_graph if region_graph is not None \
            else graph

    @property
    def n(self):
        return self.graph.n

    def check(self):
        """Verify the bundle invariants, raising SynthesisError if broken"""
        if (self.regions.n != self.graph.n
                or self.split.regions != self.regions):
            raise SynthesisError('Labels do not match the graph',
                                 (self.regions.n, self.graph.n))
        ends = self.regions.is_sybil[self.attack_edges]
        if len(ends) and np.any(ends[:, 0] == ends[:, 1]):
            raise SynthesisError('An attack edge does not cross the regions')
        for u, v in self.attack_edges.tolist():
            if not self.graph.has_edge(u, v):
                raise SynthesisError('Attack edge missing from the graph',
                                     (u, v))
        expected = self.region_graph.m + len(self.attack_edges)
        if self.graph.m != expected:
            raise SynthesisError('Graph and region graph disagree',
                                 (self.graph.m, expected))

    def __str__(self):
        return f'LabeledNetwork(n={self.n}, m={self.graph.m}, ' \
            f'|E_T|={len(self.attack_edges)}, {self.split})'


def sample_train_split(regions, fraction, rng):
    """
    Draw the known nodes of 'regions': round(fraction * n_H) honest and
    round(fraction * n_S) Sybil nodes, uniformly without replacement, halves
    rounding up. 'fraction' is a float in (0, 1) or a per-class pair.

    Each test class keeps at least one node, so a count is clamped to the
    class size minus one. A class that would end up with no known node
    raises LabelError.
    """
    known = []
    for name, nodes, f in zip(('honest', 'sybil'),
                              (regions.honest, regions.sybil),
                              _fractions(fraction)):
        if not 0.0 < f < 1.0:
            raise LabelError('Train fraction must lie in (0, 1)', f)
        count = min(round_half_up(f * len(nodes)), len(nodes) - 1)
        if count < 1:
            raise LabelError(f'No {name} node would be known', (f, len(nodes)))
        known.append(rng.choice(nodes, size=count, replace=False))
    return TrainSplit(regions, known[0], known[1])


def attack_network(region_graph, regions, split, cfg, rng):
    """
    Place the attack 'cfg' on the pre-attack 'region_graph' and return the
    LabeledNetwork. Attacking the same regions and split twice (e.g. once
    randomly and once in a targeted way) only changes the attack edges.
    """
    attack_edges = place_attack_edges(region_graph, regions, split, cfg, rng)
    edges = np.concatenate((region_graph.edge_array(), attack_edges))
    graph = build_graph(region_graph.n, edges)
    return LabeledNetwork(graph, regions, split, attack_edges, region_graph)


def build_regions(spec, loader=None):
    """
    Generate or load both regions of 'spec' and return the pre-attack graph
    and its RegionLabels.
    """
    honest = spec.honest.build(derive_rng(spec.seed, 'honest-region'), loader)
    sybil = spec.sybil.build(derive_rng(spec.seed, 'sybil-region'), loader)
    return compose_regions(honest, sybil)


def synthesize_network(spec, loader=None):
    """
    Build the LabeledNetwork described by the SynthSpec 'spec': generate or
    ingest both regions, compose them, sample the known nodes and place the
    attack edges. 'loader' is handed to RegionModel.build() for dataset
    regions.
    """
    region_graph, regions = build_regions(spec, loader)
    split = sample_train_split(regions, spec.train_fraction,
                               derive_rng(spec.seed, 'split'))
    network = attack_network(region_graph, regions, split, spec.attack,
                             derive_rng(spec.seed, 'attack'))
    logger.info('Synthesized %s network: %s', spec.label, network)
    return network


def labeled_network_from_dataset(graph, regions, fraction, rng):
    """
    Wrap a real dataset that comes with its own ground truth (e.g. a crawled
    graph with honest and Sybil accounts) into a LabeledNetwork. No edge is
    placed: the attack edges are the edges that already cross the regions.
    """
    if regions.n != graph.n:
        raise LabelError('Labels do not match the graph',
                         (regions.n, graph.n))
    split = sample_train_split(regions, fraction, rng)
    edges = graph.edge_array()
    ends = regions.is_sybil[edges]
    crossing = ends[:, 0] != ends[:, 1]
    attack = edges[crossing]
    # Orient as (sybil, honest)
    flip = ~ends[crossing, 0]
    attack[flip] = attack[flip][:, ::-1]
    region_graph = build_graph(graph.n, edges[~crossing])
    return LabeledNetwork(graph, regions, split, attack, region_graph)


