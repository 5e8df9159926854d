"""
Module containing the detector factory. Detectors are named in configs and
on the command line by a key:
- 'sybilrank' (params: iterations);
- 'sybilbelief' (params: any BeliefParams field);
- 'sybilscar-c' and 'sybilscar-d' (params: any ScarParams field except
  'variant');
- 'sybilgat' (params: any GatHyper field, e.g. {"layers": 4}).
"""
from detectors.base import DetectorError
from detectors.sybilbelief import BeliefParams
from detectors.sybilbelief import SybilBelief
from detectors.sybilgat import SybilGat
from detectors.sybilrank import SybilRank
from detectors.sybilscar import ScarParams
from detectors.sybilscar import SybilScar
from gat import GatHyper
from gat import ModelError

DETECTORS = ('sybilrank', 'sybilbelief', 'sybilscar-c', 'sybilscar-d',
             'sybilgat')


def make_detector(name, params=None, seed=None):
    """
    Return a new detector for the key 'name' configured with the mapping
    'params'. 'seed', when given, is the seed of learned detectors unless
    'params' sets one.
    """
    key = str(name).lower()
    params = dict(params or {})
    try:
        if key == 'sybilrank':
            return SybilRank(**params)
        if key == 'sybilbelief':
            return SybilBelief(BeliefParams(**params))
        if key in ('sybilscar-c', 'sybilscar-d'):
            return SybilScar(ScarParams(variant=key[-1], **params))
        if key == 'sybilgat':
            if seed is not None:
                params.setdefault('seed', seed)
            return SybilGat(GatHyper.from_dict(params))
    except (TypeError, ModelError) as e:
        raise DetectorError(f'Invalid parameters for {key}', str(e)) from e
    raise DetectorError('Unknown detector', name)


def detector_label(name, params=None):
    """Display label of a detector key and its params, e.g. 'SybilGAT-L4'"""
    return make_detector(name, params).label
