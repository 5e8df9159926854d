"""
Useful docs to read for more information:
 - core.graph module (bfs_distance_sets)

This module contains the attack edge placement: the AttackConfig describing
an attack and place_attack_edges(), which draws the attack edges E_T.

An attack edge always "originates" at a Sybil node u and lands on an honest
node v. Each of the m_T edges independently is:
- random, with probability 1 - p_T: u uniform in S, v uniform in H;
- targeted, with probability p_T: u uniform in T_S, a hit distance k drawn
  from the PDF p, and v uniform in D_k(T_H), the honest nodes at distance
  exactly k from the honest target set.
The expected number of random edges is therefore (1 - p_T) m_T and the
expected number of k-hop targeted edges p_T p_k m_T.
"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from core import bfs_distance_sets
from core import LabError

logger = logging.getLogger(__name__)

# Target set policies
TARGET_ALL = 'all'
TARGET_TRAIN = 'train'


def round_half_up(x):
    """Round a non-negative real to the nearest integer, halves going up"""
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class AttackConfig:
    """
    Parameters of an attack.

    'edges_per_sybil' is the number of attack edges per Sybil node (so
    m_T = round(edges_per_sybil * n_S)), 'p_targeted' the probability that
    an edge is targeted and 'pdf' the hit distance distribution [p_0..p_K].

    The target sets are given either as a policy string or as explicit node
    arrays: 'honest_targets' defaults to 'train' (T_H = H_train, every Sybil
    targets the known honest nodes) and 'sybil_targets' to 'all' (T_S = S).
    """

    edges_per_sybil: float = 0.0
    p_targeted: float = 0.0
    pdf: tuple = (1.0,)
    honest_targets: object = TARGET_TRAIN
    sybil_targets: object = TARGET_ALL
    name: str = field(default='', compare=False)

    def __post_init__(self):
        pdf = tuple(float(x) for x in self.pdf)
        object.__setattr__(self, 'pdf', pdf)
        if self.edges_per_sybil < 0:
            raise AttackError('Attack edges per Sybil must be non-negative',
                              self.edges_per_sybil)
        if not 0.0 <= self.p_targeted <= 1.0:
            raise AttackError('Targeted probability must lie in [0, 1]',
                              self.p_targeted)
        if not pdf or any(x < 0 for x in pdf):
            raise AttackError('Hit distance PDF must be a non-empty vector '
                              'of non-negative reals', pdf)
        if abs(sum(pdf) - 1.0) > 1e-12:
            raise AttackError('Hit distance PDF must sum to 1', pdf)

    @property
    def max_distance(self):
        """K, the largest hit distance of the PDF"""
        return len(self.pdf) - 1

    @property
    def is_random(self):
        return self.p_targeted == 0.0

    @property
    def label(self):
        """The attack name, or a description of its setting when unnamed"""
        if self.name:
            return self.name
        if self.is_random:
            return 'random'
        pdf = ','.join(f'{p:g}' for p in self.pdf)
        return f'targeted(p_T={self.p_targeted:g}, pdf=[{pdf}])'

    def attack_edge_count(self, n_sybil):
        return round_half_up(self.edges_per_sybil * n_sybil)

    def resolve_targets(self, regions, split):
        """
        Return the concrete (T_H, T_S) node arrays of this attack for the
        given 'regions' and 'split'.
        """
        honest = _resolve(self.honest_targets, regions.honest,
                          split.train_honest, 'honest')
        sybil = _resolve(self.sybil_targets, regions.sybil,
                         split.train_sybil, 'sybil')
        if np.any(regions.is_sybil[honest]):
            raise AttackError('Honest target set must lie in H')
        if not np.all(regions.is_sybil[sybil]):
            raise AttackError('Sybil target set must lie in S')
        if self.p_targeted > 0 and (len(honest) == 0 or len(sybil) == 0):
            raise AttackError('Targeted attacks need nonempty target sets',
                              (len(honest), len(sybil)))
        return honest, sybil

    def to_dict(self):
        """Serializable form, keys as in the SynthSpec 'attack' mapping"""
        return {'edges_per_sybil': self.edges_per_sybil,
                'p_targeted': self.p_targeted,
                'pdf': list(self.pdf),
                'targets': {'honest': _target_key(self.honest_targets),
                            'sybil': _target_key(self.sybil_targets)}}

    @classmethod
    def from_dict(cls, data, name=''):
        """
        Build an AttackConfig from its mapping form: keys 'edges_per_sybil',
        'p_targeted' (optional), 'pdf' (optional) and 'targets' (optional
        mapping with 'honest' and 'sybil' policies or node lists).
        """
        known = {'edges_per_sybil', 'p_targeted', 'pdf', 'targets', 'name'}
        unknown = set(data) - known
        if unknown:
            raise AttackError('Invalid key in attack description',
                              sorted(unknown)[0])
        targets = dict(data.get('targets') or {})
        return cls(edges_per_sybil=float(data.get('edges_per_sybil', 0.0)),
                   p_targeted=float(data.get('p_targeted', 0.0)),
                   pdf=tuple(data.get('pdf', (1.0,))),
                   honest_targets=_target_value(
                       targets.get('honest', TARGET_TRAIN)),
                   sybil_targets=_target_value(
                       targets.get('sybil', TARGET_ALL)),
                   name=str(data.get('name', name)))


def _target_value(value):
    if isinstance(value, str):
        if value not in (TARGET_ALL, TARGET_TRAIN):
            raise AttackError('Unknown target policy', value)
        return value
    return tuple(int(v) for v in value)


def _target_key(value):
    return value if isinstance(value, str) else list(value)


def _resolve(policy, everyone, known, name):
    if isinstance(policy, str):
        if policy == TARGET_ALL:
            return everyone
        if policy == TARGET_TRAIN:
            return known
        raise AttackError(f'Unknown {name} target policy', policy)
    return np.unique(np.asarray(policy, dtype=np.int64))


def hit_distance_pdf(cfg, layers):
    """
    Return the effective hit distance PDF: the mass of every distance k whose
    set D_k is empty is redistributed proportionally over the nonempty ones.
    A warning is logged when positive mass is moved.
    """
    pdf = np.asarray(cfg.pdf, dtype=np.float64)
    reachable = np.array([len(layer) > 0 for layer in layers])
    dropped = pdf[~reachable].sum()
    if dropped <= 0.0:
        return pdf
    kept = np.where(reachable, pdf, 0.0)
    if kept.sum() <= 0.0:
        raise AttackError('No hit distance with positive probability is '
                          'reachable from the honest targets', list(cfg.pdf))
    logger.warning('Distance sets %s are empty, renormalizing the hit PDF '
                   '(%.3g of the mass moved)',
                   [k for k, ok in enumerate(reachable)
                    if not ok and pdf[k] > 0], dropped)
    return kept / kept.sum()


def draw_edge_kinds(m_t, p_targeted, pdf, rng):
    """
    Decide once the kind of each of the 'm_t' attack edges: -1 for a random
    edge (probability 1 - 'p_targeted') or the hit distance k drawn from
    'pdf' for a targeted one. Resampling a colliding edge keeps its kind.
    """
    kinds = np.full(m_t, -1, dtype=np.int64)
    targeted = rng.random(m_t) < p_targeted
    kinds[targeted] = rng.choice(len(pdf), size=int(targeted.sum()), p=pdf)
    return kinds


def _targeted_capacity(edges, target_sybil, layer, n):
    """Number of (T_S, layer) pairs that are not already edges"""
    in_sybil = np.zeros(n, dtype=bool)
    in_sybil[target_sybil] = True
    in_layer = np.zeros(n, dtype=bool)
    in_layer[layer] = True
    a, b = edges[:, 0], edges[:, 1]
    used = np.sum((in_sybil[a] & in_layer[b]) | (in_sybil[b] & in_layer[a]))
    return len(target_sybil) * len(layer) - int(used)


def place_attack_edges(g, regions, split, cfg, rng):
    """
    Draw the attack edges of 'cfg' on the pre-attack graph 'g' with region
    labels 'regions' and known nodes 'split'. Return an (m_T, 2) array of
    (sybil, honest) pairs, all distinct and none duplicating an edge of 'g'.

    The kind of every edge (random or targeted at distance k) is drawn
    first; a candidate colliding with an existing or already placed edge is
    resampled with the same kind until m_T distinct edges exist. If the
    regions, or the targeted pairs of some distance, cannot host the edges
    an AttackError is raised.
    """
    honest = regions.honest
    sybil = regions.sybil
    m_t = cfg.attack_edge_count(len(sybil))
    if m_t == 0:
        return np.empty((0, 2), dtype=np.int64)
    if len(honest) == 0 or len(sybil) == 0:
        raise AttackError('Attack edges need both regions to be nonempty')

    n = g.n
    edges = g.edge_array()
    existing = set((edges[:, 0] * n + edges[:, 1]).tolist())
    crossing = int(np.sum(regions.is_sybil[edges[:, 0]] !=
                          regions.is_sybil[edges[:, 1]]))
    capacity = len(honest) * len(sybil) - crossing
    if capacity < m_t:
        raise AttackError(f'Only {capacity} honest-Sybil pairs are free but '
                          f'{m_t} attack edges were requested',
                          (len(honest), len(sybil)))

    kinds = np.full(m_t, -1, dtype=np.int64)
    if cfg.p_targeted > 0.0:
        target_honest, target_sybil = cfg.resolve_targets(regions, split)
        layers, _ = bfs_distance_sets(g, target_honest, cfg.max_distance)
        # Existing crossing edges may bring Sybils into the distance sets
        layers = [layer[~regions.is_sybil[layer]] for layer in layers]
        pdf = hit_distance_pdf(cfg, layers)
        kinds = draw_edge_kinds(m_t, cfg.p_targeted, pdf, rng)
        for k, layer in enumerate(layers):
            needed = int(np.sum(kinds == k))
            free = _targeted_capacity(edges, target_sybil, layer, n)
            if needed > free:
                raise AttackError(f'{needed} targeted attack edges at '
                                  f'distance {k} were drawn but only {free} '
                                  'target pairs are free', (k, needed, free))

    placed = np.empty((m_t, 2), dtype=np.int64)
    open_slots = np.arange(m_t)
    taken = set()
    misses = 0
    while len(open_slots):
        need = len(open_slots)
        us = sybil[rng.integers(len(sybil), size=need)]
        vs = honest[rng.integers(len(honest), size=need)]
        slot_kinds = kinds[open_slots]
        for k in np.unique(slot_kinds[slot_kinds >= 0]).tolist():
            chosen = slot_kinds == k
            count = int(chosen.sum())
            us[chosen] = target_sybil[rng.integers(len(target_sybil),
                                                   size=count)]
            vs[chosen] = layers[k][rng.integers(len(layers[k]), size=count)]
        low = np.minimum(us, vs)
        high = np.maximum(us, vs)
        still_open = []
        for slot, u, v, code in zip(open_slots.tolist(), us.tolist(),
                                    vs.tolist(), (low * n + high).tolist()):
            if code in existing or code in taken:
                still_open.append(slot)
                continue
            taken.add(code)
            placed[slot] = (u, v)
        if len(still_open) == need:
            misses += 1
            if misses > 1000:
                raise AttackError('Could not find free pairs for the '
                                  'remaining attack edges; the target sets '
                                  'are exhausted', need)
        else:
            misses = 0
        open_slots = np.asarray(still_open, dtype=np.int64)

    logger.debug('Placed %d attack edges: %d random, targeted per distance '
                 '%s', m_t, int(np.sum(kinds < 0)),
                 np.bincount(kinds[kinds >= 0],
                             minlength=cfg.max_distance + 1).tolist())
    return placed


class AttackError(LabError):
    """Error raised when attack edges cannot be placed."""
