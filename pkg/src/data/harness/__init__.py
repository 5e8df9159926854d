"""
Package containing the experiment harness: configs, work items, parallel
execution, records and their aggregation.
This includes:
- experiment config files and their validation (harness.config);
- the artifact cache (harness.cache);
- run records (harness.records);
- the four experiments (harness.experiments);
- aggregation over seeds (harness.aggregate).

For in depth documentation, read the docs of each module.
"""
# Expose classes in modules for easy access
from harness.config import ExperimentConfig
from harness.config import AlgorithmSpec
from harness.config import LabeledDataset
from harness.config import Pretrain
from harness.config import ConfigError
from harness.cache import ArtifactCache
from harness.cache import cached_edge_list
from harness.records import RunRecord
from harness.records import RecordError
from harness.records import canonical_order
from harness.experiments import WorkItem
from harness.experiments import work_items
from harness.experiments import run_item
from harness.experiments import run_experiment
from harness.experiments import run_experiment1
from harness.experiments import run_experiment2
from harness.experiments import run_experiment3
from harness.experiments import run_experiment4
from harness.aggregate import aggregate
from harness.aggregate import format_cells
