"""
Useful docs to read for more information:
 - harness.config module
 - detectors.base module (detector lifecycle)
 - core.eventsys package (RunEventListener)

Module containing the four experiments and the machinery running them.

An experiment is cut into WorkItems, one per (attack setting, seed). A work
item builds its networks once and runs every algorithm of the config on
them, returning one RunRecord per algorithm. Items only depend on their own
seed, so they can run in any order and in any process: results are
collected in item order, which makes the record list independent of the
number of workers.

The four experiments differ in where SybilGAT is fitted and what it detects
on:
1. pretraining on a forest fire sample of the network, detection on the
   residual graph;
2. pretraining on a small network, detection on an independent large one
   attacked in the same way;
3. the same regions and known nodes attacked twice: randomly for
   pretraining and with the evaluated attack for detection;
4. transductive: fitting and detection on the same network, sweeping the
   number of attack edges per Sybil.
Baselines have nothing to fit and always run on the detection graph alone.

An ITEM_DONE RunEvent is launched after every item and an EXPERIMENT_DONE
one at the end.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from tqdm import tqdm

import core.eventsys
import core.vars as lvars
from core import derive_rng
from core import derive_seed
from dataio.results import plot_series
from evaluation import evaluate
from harness.cache import cached_edge_list
from harness.cache import cached_region_loader
from harness.config import ConfigError
from harness.records import RunRecord
from sampling import forest_fire_sample
from sampling import split_network
from synthesis import attack_network
from synthesis import build_regions
from synthesis import labeled_network_from_dataset
from synthesis import sample_train_split
from synthesis import synthesize_network

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WorkItem:
    """
    The unit of work of an experiment: the 'index' of the item in the
    experiment, its 'config', the 'attack' setting of its cell and the
    master 'seed' of the run.
    """

    index: int
    config: object
    attack: object
    seed: int

    def __str__(self):
        return f'WorkItem(#{self.index}, {self.config.name}, ' \
            f'{self.attack.edges_per_sybil:g} edges/Sybil, ' \
            f'p_T={self.attack.p_targeted:g}, seed={self.seed})'


def work_items(cfg):
    """Cut the experiment 'cfg' into WorkItems, cell by cell then by seed"""
    items = []
    for attack in cfg.cells():
        for seed in cfg.seeds:
            items.append(WorkItem(len(items), cfg, attack, seed))
    return items


def _run_algorithms(item, model, fit_on, detect_on, attack_edges_per_sybil):
    """
    Fit every algorithm on 'fit_on' and detect on 'detect_on', both
    (graph, split) pairs, then evaluate on the test nodes of the detection
    split. Return the RunRecords in config order.
    """
    cfg = item.config
    graph, split = detect_on
    records = []
    for algorithm in cfg.algorithms:
        detector = algorithm.build(item.seed)
        start = time.perf_counter()
        detector.fit(*fit_on)
        scores = detector.detect(graph, split)
        wall_ms = (time.perf_counter() - start) * 1000.0
        result = evaluate(scores, split)
        logger.info('%s on %s (seed %d): AUC %.4f', detector.label, model,
                    item.seed, result.auc)
        records.append(RunRecord(
            experiment=cfg.experiment,
            dataset=cfg.name,
            model=model,
            algorithm=detector.label,
            seed=item.seed,
            attack_edges_per_sybil=attack_edges_per_sybil,
            p_targeted=item.attack.p_targeted,
            auc=result.auc,
            wall_ms=round(wall_ms, 3) if cfg.record_wall_time else None,
            threshold=scores.diagnostics.get('threshold'),
            epochs=scores.diagnostics.get('epochs'),
            attack=item.attack.label))
    return records


def _evaluation_network(item):
    """The network experiment 1 samples from, synthetic or real"""
    cfg = item.config
    if cfg.labeled_dataset is not None:
        labeled = cfg.labeled_dataset
        graph, regions, _ = labeled.descriptor.load(cached_edge_list)
        network = labeled_network_from_dataset(
            graph, regions, labeled.train_fraction,
            derive_rng(item.seed, 'split'))
        per_sybil = len(network.attack_edges) / max(regions.n_sybil, 1)
        return network, labeled.train_fraction, round(per_sybil, 6)
    spec = cfg.network.replace(seed=item.seed, attack=item.attack)
    network = synthesize_network(spec, cached_region_loader)
    return network, spec.train_fraction, item.attack.edges_per_sybil


def experiment1_item(item):
    """
    Pretraining on a sample: burn a forest fire sample of the network, fit
    on the sample (its own known nodes drawn at the network train fraction)
    and detect on the residual graph with the known nodes that lie in it.
    """
    pretrain = item.config.pretrain
    network, fraction, per_sybil = _evaluation_network(item)
    sample = forest_fire_sample(network.graph, pretrain.sample_fraction,
                                pretrain.burn_probability,
                                derive_rng(item.seed, 'sample'))
    sampled, residual = split_network(network, sample, fraction,
                                      derive_rng(item.seed, 'pretrain-split'))
    logger.info('Sampled %s from %s, residual %s', sampled, network, residual)
    return _run_algorithms(item, item.config.model,
                           (sampled.graph, sampled.split),
                           (residual.graph, residual.split), per_sybil)


def experiment2_item(item):
    """
    Pretraining on a small network: the small and the large network are
    synthesized independently with the attack of the cell.
    """
    cfg = item.config
    small = synthesize_network(
        cfg.pretrain.network.replace(
            seed=derive_seed(item.seed, 'pretrain-network'),
            attack=item.attack),
        cached_region_loader)
    large = synthesize_network(
        cfg.network.replace(seed=derive_seed(item.seed, 'evaluation-network'),
                            attack=item.attack),
        cached_region_loader)
    return _run_algorithms(item, cfg.model, (small.graph, small.split),
                           (large.graph, large.split),
                           item.attack.edges_per_sybil)


def experiment3_item(item):
    """
    Pretraining on a differently attacked network: the regions and known
    nodes are built once, attacked by the pretraining attack for fitting and
    by the attack of the cell for detection.
    """
    cfg = item.config
    spec = cfg.network.replace(seed=item.seed)
    region_graph, regions = build_regions(spec, cached_region_loader)
    split = sample_train_split(regions, spec.train_fraction,
                               derive_rng(item.seed, 'split'))
    pretrain = attack_network(region_graph, regions, split,
                              cfg.pretrain.attack,
                              derive_rng(item.seed, 'pretrain-attack'))
    evaluation = attack_network(region_graph, regions, split, item.attack,
                                derive_rng(item.seed, 'attack'))
    return _run_algorithms(item, cfg.model, (pretrain.graph, split),
                           (evaluation.graph, split),
                           item.attack.edges_per_sybil)


def experiment4_item(item):
    """Transductive: fit and detect on the same network"""
    cfg = item.config
    network = synthesize_network(
        cfg.network.replace(seed=item.seed, attack=item.attack),
        cached_region_loader)
    fit_on = (network.graph, network.split)
    return _run_algorithms(item, cfg.model, fit_on, fit_on,
                           item.attack.edges_per_sybil)


_ITEM_RUNNERS = {1: experiment1_item,
                 2: experiment2_item,
                 3: experiment3_item,
                 4: experiment4_item}


def run_item(item):
    """Run one WorkItem and return its RunRecords"""
    return _ITEM_RUNNERS[item.config.experiment](item)


def _shared_vars():
    return {'DATA_DIR': lvars.DATA_DIR, 'CACHE_SIZE': lvars.CACHE_SIZE,
            'BURN_PROBABILITY': lvars.BURN_PROBABILITY,
            'TRAIN_FRACTION': lvars.TRAIN_FRACTION}


def _init_worker(shared):
    """Copy the variables of the parent process into a worker"""
    for name, value in shared.items():
        setattr(lvars, name, value)


def run_experiment(cfg, workers=None, allow_large=False, progress=False):
    """
    Run every WorkItem of 'cfg' on 'workers' processes (core.vars.WORKERS by
    default; 1 runs in this process) and return the RunRecords in item
    order. A 'large_scale' config needs 'allow_large'. 'progress' shows a
    progress bar over the items.
    """
    if cfg.large_scale and not allow_large:
        raise ConfigError('Large scale experiment, pass --allow-large to run '
                          'it', cfg.source)
    workers = lvars.WORKERS if workers is None else workers
    if workers < 1:
        raise ConfigError('Workers must be at least 1', workers)
    items = work_items(cfg)
    logger.info('Experiment %d on %s: %d work items, %d workers',
                cfg.experiment, cfg.name, len(items), workers)

    executor = None
    if workers == 1 or len(items) == 1:
        results = map(run_item, items)
    else:
        executor = ProcessPoolExecutor(min(workers, len(items)),
                                       initializer=_init_worker,
                                       initargs=(_shared_vars(),))
        results = executor.map(run_item, items)
    records = []
    try:
        for item, item_records in tqdm(zip(items, results), total=len(items),
                                       desc=f'Experiment {cfg.experiment}',
                                       unit='item', disable=not progress):
            records.extend(item_records)
            core.eventsys.source.launch(
                core.eventsys.RunEventListener.ITEM_DONE,
                core.eventsys.RunEventListener,
                core.eventsys.EventData(item=item, records=item_records))
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)

    core.eventsys.source.launch(
        core.eventsys.RunEventListener.EXPERIMENT_DONE,
        core.eventsys.RunEventListener,
        core.eventsys.EventData(experiment=cfg.experiment, records=records))
    return records


def _check(cfg, experiment):
    if cfg.experiment != experiment:
        raise ConfigError(f'Not a config of experiment {experiment}',
                          cfg.experiment)


def run_experiment1(cfg, workers=None, allow_large=False, progress=False):
    """Experiment 1: SybilGAT pretrained on a forest fire sample"""
    _check(cfg, 1)
    return run_experiment(cfg, workers, allow_large, progress)


def run_experiment2(cfg, workers=None, allow_large=False, progress=False):
    """Experiment 2: SybilGAT pretrained on a small synthetic network"""
    _check(cfg, 2)
    return run_experiment(cfg, workers, allow_large, progress)


def run_experiment3(cfg, workers=None, allow_large=False, progress=False):
    """
    Experiment 3: SybilGAT pretrained on randomly attacked regions and
    evaluated on the same regions under another attack
    """
    _check(cfg, 3)
    return run_experiment(cfg, workers, allow_large, progress)


def run_experiment4(cfg, workers=None, allow_large=False, progress=False):
    """
    Experiment 4: transductive sweep over the attack edges per Sybil. Return
    the records and their plot series.
    """
    _check(cfg, 4)
    records = run_experiment(cfg, workers, allow_large, progress)
    return records, plot_series(records)
