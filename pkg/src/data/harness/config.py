"""
Useful docs to read for more information:
 - synthesis.network module (SynthSpec)
 - harness.experiments module

Module containing the experiment configuration files and their validation.

An experiment config is a JSON (or YAML) mapping. Keys:
- experiment: 1, 2, 3 or 4;
- dataset: name written in the 'dataset' column of the records (defaults to
  the label of the network);
- network: the SynthSpec of the evaluation network, its 'seed' is ignored
  (every run seed replaces it);
- labeled_dataset: instead of 'network', a real dataset with its own ground
  truth: {edges, labels, direction, id_policy, unlabeled, train_fraction}.
  Only experiment 1 accepts it;
- pretrain: how SybilGAT is pretrained. Experiment 1 takes
  {sample_fraction, burn_probability}, experiment 2 {network: SynthSpec}
  and experiment 3 {attack: attack mapping}. Experiment 4 is transductive
  and must not set it;
- attacks: list of attack mappings (with an optional 'name'), every one is
  a cell of the experiment. Defaults to the attack of 'network';
- sweep_edges_per_sybil: experiment 4 only, the attack edges per Sybil every
  attack is repeated with;
- algorithms: list of detector keys or {name, params} mappings;
- seeds: list of master seeds, every cell is run once per seed;
- output: path of the result file (.csv or .json);
- large_scale: the run needs --allow-large (e.g. Twitter sized networks);
- record_wall_time: fill the 'wall_ms' column. Off by default so that two
  runs of the same config give identical files.
"""
import pathlib
from dataclasses import dataclass, field, replace

import ruamel.yaml

import core.vars as lvars
from core import LabError
from dataio.dataset import DatasetDescriptor
from dataio.edgelist import DataFormatError
from detectors import DETECTORS
from detectors import DetectorError
from detectors import make_detector
from synthesis import AttackConfig
from synthesis import AttackError
from synthesis import SynthesisError
from synthesis import SynthSpec

EXPERIMENTS = (1, 2, 3, 4)

_KEYS = {'experiment', 'dataset', 'network', 'labeled_dataset', 'pretrain',
         'attacks', 'sweep_edges_per_sybil', 'algorithms', 'seeds', 'output',
         'large_scale', 'record_wall_time'}
_PRETRAIN_KEYS = {1: {'sample_fraction', 'burn_probability'},
                  2: {'network'},
                  3: {'attack'}}


@dataclass(frozen=True)
class AlgorithmSpec:
    """A detector key 'name' with its 'params' mapping"""

    name: str
    params: dict = field(default_factory=dict)

    def build(self, seed=None):
        return make_detector(self.name, self.params, seed)

    @property
    def label(self):
        return self.build().label

    @classmethod
    def from_value(cls, value):
        if isinstance(value, str):
            return cls(value.lower())
        if not isinstance(value, dict) or 'name' not in value:
            raise ConfigError('An algorithm is a key or a {name, params} '
                              'mapping', value)
        unknown = set(value) - {'name', 'params'}
        if unknown:
            raise ConfigError('Invalid key in algorithm',
                              sorted(unknown)[0])
        return cls(str(value['name']).lower(),
                   dict(value.get('params') or {}))


@dataclass(frozen=True)
class LabeledDataset:
    """A real dataset with ground truth and the known share of each class"""

    descriptor: DatasetDescriptor
    train_fraction: object = 0.05

    @property
    def label(self):
        return self.descriptor.name

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        fraction = data.pop('train_fraction', lvars.TRAIN_FRACTION)
        if isinstance(fraction, dict):
            fraction = (float(fraction['honest']), float(fraction['sybil']))
        descriptor = DatasetDescriptor.from_dict(data)
        if not descriptor.labels:
            raise ConfigError('A labeled dataset needs a "labels" file')
        return cls(descriptor, fraction)


@dataclass(frozen=True)
class Pretrain:
    """
    Pretraining setup of SybilGAT. Only the fields of the experiment are
    set: 'sample_fraction' and 'burn_probability' (1), the small 'network'
    (2) or the random 'attack' of the pretraining network (3).
    """

    sample_fraction: float = 0.1
    burn_probability: float = None
    network: SynthSpec = None
    attack: AttackConfig = None


@dataclass(frozen=True)
class ExperimentConfig:
    """
    A validated experiment configuration. See the module docs for the
    meaning of every field. 'source' is the file the config was read from.
    """

    experiment: int
    algorithms: tuple
    seeds: tuple
    output: str
    dataset: str = ''
    network: SynthSpec = None
    labeled_dataset: LabeledDataset = None
    pretrain: Pretrain = None
    attacks: tuple = ()
    sweep_edges_per_sybil: tuple = ()
    large_scale: bool = False
    record_wall_time: bool = False
    source: str = ''

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError('Experiment must be one of 1, 2, 3, 4',
                              self.experiment)
        if not self.seeds:
            raise ConfigError('At least one seed is needed')
        if not self.algorithms:
            raise ConfigError('At least one algorithm is needed')
        for algorithm in self.algorithms:
            if algorithm.name not in DETECTORS:
                raise ConfigError('Unknown algorithm', algorithm.name)
        if (self.network is None) == (self.labeled_dataset is None):
            raise ConfigError('Exactly one of "network" and '
                              '"labeled_dataset" must be given')
        if self.labeled_dataset is not None and self.experiment != 1:
            raise ConfigError('Only experiment 1 runs on a labeled dataset',
                              self.experiment)
        if self.experiment == 4:
            if self.pretrain is not None:
                raise ConfigError('Experiment 4 is transductive, it takes no '
                                  '"pretrain"')
            if not self.sweep_edges_per_sybil:
                raise ConfigError('Experiment 4 needs '
                                  '"sweep_edges_per_sybil"')
        else:
            if self.sweep_edges_per_sybil:
                raise ConfigError('Only experiment 4 sweeps the attack edges')
            if self.pretrain is None:
                raise ConfigError('Experiments 1 to 3 need "pretrain"',
                                  self.experiment)
        if self.experiment == 1 and \
                not 0.0 < self.pretrain.sample_fraction < 1.0:
            raise ConfigError('Sample fraction must lie in (0, 1)',
                              self.pretrain.sample_fraction)
        if self.experiment == 2 and self.pretrain.network is None:
            raise ConfigError('Experiment 2 needs a pretraining "network"')
        if self.experiment == 3 and self.pretrain.attack is None:
            raise ConfigError('Experiment 3 needs a pretraining "attack"')

    @property
    def model(self):
        """Label of the evaluation network, e.g. 'PL-PL'"""
        if self.network is not None:
            return self.network.label
        return self.labeled_dataset.label

    @property
    def name(self):
        return self.dataset or self.model

    def cells(self):
        """
        The attack settings of the experiment in order: the 'attacks' (the
        network attack when none is given), every one repeated for each
        value of 'sweep_edges_per_sybil' in experiment 4.
        """
        if self.labeled_dataset is not None:
            return [AttackConfig(name='dataset')]
        attacks = list(self.attacks) or [self.network.attack]
        if not self.sweep_edges_per_sybil:
            return attacks
        return [replace(attack, edges_per_sybil=float(x))
                for attack in attacks for x in self.sweep_edges_per_sybil]

    def with_seeds(self, seeds):
        return replace(self, seeds=tuple(int(s) for s in seeds))

    def labels(self):
        """Display labels of the algorithms, in config order"""
        return [algorithm.label for algorithm in self.algorithms]

    @classmethod
    def from_dict(cls, data, source=''):
        if not isinstance(data, dict):
            raise ConfigError('An experiment config must be a mapping',
                              source)
        unknown = set(data) - _KEYS
        if unknown:
            raise ConfigError('Invalid key in experiment config',
                              sorted(unknown)[0])
        for key in ('experiment', 'algorithms', 'seeds', 'output'):
            if key not in data:
                raise ConfigError(f'Experiment config misses "{key}"', source)
        experiment = int(data['experiment'])
        try:
            network = None
            if data.get('network') is not None:
                network = SynthSpec.from_dict(dict(data['network']))
            labeled = None
            if data.get('labeled_dataset') is not None:
                labeled = LabeledDataset.from_dict(data['labeled_dataset'])
            pretrain = _pretrain(experiment, data.get('pretrain'))
            attacks = tuple(AttackConfig.from_dict(dict(a))
                            for a in data.get('attacks') or ())
            algorithms = tuple(AlgorithmSpec.from_value(a)
                               for a in data['algorithms'])
            for algorithm in algorithms:
                algorithm.build()
        except (SynthesisError, AttackError, DataFormatError,
                DetectorError) as e:
            raise ConfigError('Invalid experiment config', str(e)) from e
        return cls(experiment=experiment,
                   algorithms=algorithms,
                   seeds=tuple(int(s) for s in data['seeds']),
                   output=str(data['output']),
                   dataset=str(data.get('dataset', '')),
                   network=network,
                   labeled_dataset=labeled,
                   pretrain=pretrain,
                   attacks=attacks,
                   sweep_edges_per_sybil=tuple(
                       float(x) for x in data.get('sweep_edges_per_sybil')
                       or ()),
                   large_scale=bool(data.get('large_scale', False)),
                   record_wall_time=bool(data.get('record_wall_time', False)),
                   source=str(source))

    @classmethod
    def load(cls, path):
        """Load and validate the experiment config at 'path'"""
        try:
            data = ruamel.yaml.YAML(typ='safe').load(pathlib.Path(path))
        except ruamel.yaml.YAMLError as e:
            raise ConfigError('Malformed experiment config', path) from e
        return cls.from_dict(data, path)


def _pretrain(experiment, data):
    if data is None:
        return None
    if not isinstance(data, dict):
        raise ConfigError('"pretrain" must be a mapping', data)
    allowed = _PRETRAIN_KEYS.get(experiment, set())
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f'Invalid pretrain key for experiment {experiment}',
                          sorted(unknown)[0])
    if experiment == 1:
        burn = data.get('burn_probability')
        return Pretrain(sample_fraction=float(data.get('sample_fraction',
                                                       0.1)),
                        burn_probability=None if burn is None
                        else float(burn))
    if experiment == 2:
        if 'network' not in data:
            return Pretrain()
        return Pretrain(network=SynthSpec.from_dict(dict(data['network'])))
    if 'attack' not in data:
        return Pretrain()
    return Pretrain(attack=AttackConfig.from_dict(dict(data['attack']),
                                                  name='pretrain'))


class ConfigError(LabError):
    """Error raised for invalid configuration files or values."""
