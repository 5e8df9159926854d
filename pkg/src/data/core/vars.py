"""
Module containing shared lab variables. Don't import using 'from ... import'
because that will create a local copy of the value, so any change will not be
seen by other modules.

All the values can be overridden by main.load_config() at startup, which
reads them from 'config.yaml'.

- LOG_LEVEL: name of the logging level used by the command line tool;
- WORKERS: default number of worker processes used by the experiment harness;
- TRAIN_FRACTION: fraction of each region that is known (labeled) when a
  split is sampled and the caller does not say otherwise;
- BURN_PROBABILITY: default burning probability of the forest fire sampler;
- CACHE_SIZE: number of datasets/networks kept in memory by the harness;
- CONFIG_DIR: Path object of the directory holding 'config.yaml' and the
  experiment configs. Overridden by the SYBILLAB_CONFIG_DIR env variable;
- CONFIG_PATH: Path object of the 'config.yaml' file inside CONFIG_DIR;
- DATA_DIR: Path object of the directory that dataset paths found in configs
  are resolved against. Overridden by the SYBILLAB_DATA_DIR env variable.
"""
LOG_LEVEL = 'INFO'
WORKERS = 1

TRAIN_FRACTION = 0.05
BURN_PROBABILITY = 0.4

CACHE_SIZE = 10

CONFIG_DIR = None
CONFIG_PATH = None
DATA_DIR = None
