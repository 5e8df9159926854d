"""
Module containing the RunRecord, one row of a result file: the AUC of one
algorithm on one cell of an experiment for one seed.
"""
import math
from dataclasses import dataclass, asdict

from core import LabError

# Sort order of the records of a result file
CANONICAL_KEY = ('experiment', 'dataset', 'model', 'attack', 'p_targeted',
                 'attack_edges_per_sybil', 'algorithm', 'seed')


@dataclass(frozen=True)
class RunRecord:
    """
    One run: the 'experiment', the 'dataset' and 'model' (network label)
    names, the 'algorithm' label, the run 'seed', the attack setting, the
    'auc' on the test nodes and, when available, the wall time in
    milliseconds, the decision 'threshold' and the training 'epochs' of
    SybilGAT, and the 'attack' label of the cell.
    """

    experiment: int
    dataset: str
    model: str
    algorithm: str
    seed: int
    attack_edges_per_sybil: float
    p_targeted: float
    auc: float
    wall_ms: float = None
    threshold: float = None
    epochs: int = None
    attack: str = ''

    def __post_init__(self):
        if not (math.isfinite(self.auc) and 0.0 <= self.auc <= 1.0):
            raise RecordError('AUC must lie in [0, 1]', self.auc)

    def to_dict(self):
        return asdict(self)


def canonical_order(records):
    """
    Sort records (RunRecords or mappings) by CANONICAL_KEY. Two runs of the
    same config with any number of workers give the same sorted list.
    """
    def key(record):
        data = record.to_dict() if hasattr(record, 'to_dict') else record
        return tuple((data.get(k) or '') if k == 'attack' else data[k]
                     for k in CANONICAL_KEY)
    return sorted(records, key=key)


class RecordError(LabError):
    """Error raised for an impossible run record."""
