"""
Main module of the lab, the command line tool. If the file is executed
directly the main function is called, else it has to be called manually
with the argument list.

Subcommands:
- synth: build a LabeledNetwork from a SynthSpec file into a directory;
- sample: forest fire sample of a network directory, writing the sampled
  and the residual networks;
- detect: run a baseline detector and write its scores;
- train: train SybilGAT, writing a checkpoint and the training report;
- predict: score a network with a SybilGAT checkpoint;
- eval: print the AUC of a score file;
- experiment: run an experiment config and write its result file;
- plot-data: turn a result file into plot series.

Exit codes: 0 on success, 1 for usage errors, 2 for runtime failures and
130 when interrupted.
"""
import argparse
import json
import logging
import os
import pathlib
import sys
import traceback

import numpy as np
from ruamel.yaml import YAML

import core
import core.vars as lvars
import dataio
import detectors
import evaluation
import gat
import harness
import sampling
import synthesis

logger = logging.getLogger('sybillab')

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2
EXIT_INTERRUPTED = 130

BASELINES = ('sybilrank', 'sybilbelief', 'sybilscar-c', 'sybilscar-d')


class UsageError(Exception):
    """Raised for a malformed command line."""


class ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{self.prog}: error: {message}\n')


def init(main_path):
    """Init the shared paths from the location of this file and the env"""
    main_dir = pathlib.Path(main_path).resolve().parent
    config_dir = os.environ.get('SYBILLAB_CONFIG_DIR')
    lvars.CONFIG_DIR = pathlib.Path(config_dir) if config_dir else main_dir
    lvars.CONFIG_PATH = lvars.CONFIG_DIR.joinpath('config.yaml')
    data_dir = os.environ.get('SYBILLAB_DATA_DIR')
    if data_dir:
        lvars.DATA_DIR = pathlib.Path(data_dir)


def load_config(path=None):
    """
    Load core.vars values from 'config.yaml'. If a value is not defined the
    default is kept. A missing file is not an error.

    For info about the variables that can be modified see the docs inside
    the config.yaml file.
    """
    path = pathlib.Path(path or lvars.CONFIG_PATH)
    if not path.exists():
        return
    try:
        data = YAML(typ='safe').load(path)
    except Exception as e:
        raise harness.ConfigError('Malformed config file', str(path)) from e
    if data is None:
        return
    for key in data.keys():
        if key == 'log_level':
            lvars.LOG_LEVEL = str(data[key]).upper()
        elif key == 'workers':
            lvars.WORKERS = int(data[key])
        elif key == 'train_fraction':
            lvars.TRAIN_FRACTION = float(data[key])
        elif key == 'burn_probability':
            lvars.BURN_PROBABILITY = float(data[key])
        elif key == 'cache_size':
            lvars.CACHE_SIZE = int(data[key])
        elif key == 'data_dir':
            # The env variable wins over the config file
            if not os.environ.get('SYBILLAB_DATA_DIR'):
                lvars.DATA_DIR = path.parent.joinpath(data[key])
        else:
            raise harness.ConfigError('Invalid key in config file', key)


def _log_epoch(data):
    logger.debug('Epoch %d: train loss %.6f, validation loss %.6f',
                 data.epoch, data.train_loss, data.val_loss)


def _log_stopped(data):
    report = data.report
    logger.info('Training stopped after %d epochs (best %d), threshold %.4f',
                report.epochs, report.best_epoch, report.threshold)


def _log_item(data):
    logger.debug('Done %s', data.item)


def subscribe_listeners():
    """Log the progress events of training and experiments"""
    listeners = (
        (core.eventsys.TrainEventListener, _log_epoch,
         core.eventsys.TrainEventListener.EPOCH),
        (core.eventsys.TrainEventListener, _log_stopped,
         core.eventsys.TrainEventListener.STOPPED),
        (core.eventsys.RunEventListener, _log_item,
         core.eventsys.RunEventListener.ITEM_DONE))
    for listener, callback, type_id in listeners:
        listener(core.eventsys.EventHandler(callback), type_id).listen()


def _add_network_args(parser):
    group = parser.add_argument_group('network')
    group.add_argument('--network', metavar='DIR',
                       help='network directory written by synth')
    group.add_argument('--graph', metavar='FILE', help='edge list file')
    group.add_argument('--labels', metavar='FILE', help='ground truth file')
    group.add_argument('--split', metavar='FILE', help='known nodes file')


def _load_network(args):
    """
    Return the LabeledNetwork given by '--network' or by '--graph' with
    '--labels' and '--split'. '--split' also overrides the known nodes of a
    network directory.
    """
    if args.network:
        network = dataio.load_network(args.network)
        if args.split:
            split = dataio.load_split(args.split, network.regions)
            network = synthesis.LabeledNetwork(network.graph, network.regions,
                                               split, network.attack_edges,
                                               network.region_graph)
        return network
    if not (args.graph and args.labels and args.split):
        raise UsageError('Give --network, or --graph with --labels and '
                         '--split')
    graph, id_map = dataio.load_edge_list(args.graph)
    regions = dataio.load_labels(args.labels, id_map)
    split = dataio.load_split(args.split, regions, id_map)
    return synthesis.LabeledNetwork(graph, regions, split, [])


def cmd_synth(args):
    spec = synthesis.SynthSpec.load(args.spec)
    if args.seed is not None:
        spec = spec.replace(seed=args.seed)
    network = synthesis.synthesize_network(spec)
    dataio.save_network(args.out, network, spec)
    print(network)


def cmd_sample(args):
    network = _load_network(args)
    seed = 0 if args.seed is None else args.seed
    fraction = lvars.TRAIN_FRACTION if args.train_fraction is None \
        else args.train_fraction
    sample = sampling.forest_fire_sample(network.graph, args.fraction,
                                         args.burn_p,
                                         core.derive_rng(seed, 'sample'))
    sampled, residual = sampling.split_network(
        network, sample, fraction, core.derive_rng(seed, 'pretrain-split'))
    out = pathlib.Path(args.out)
    dataio.save_network(out.joinpath('sample'), sampled)
    dataio.save_network(out.joinpath('residual'), residual)
    with out.joinpath('node_map.txt').open('w') as f:
        np.savetxt(f, sample.node_map, fmt='%d')
    print(f'sample: {sampled}')
    print(f'residual: {residual}')


def _params(text):
    if not text:
        return {}
    try:
        params = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f'--params is not valid JSON: {e}') from e
    if not isinstance(params, dict):
        raise UsageError('--params must be a JSON object')
    return params


def cmd_detect(args):
    network = _load_network(args)
    detector = detectors.make_detector(args.algo, _params(args.params))
    scores = detector.fit(network.graph, network.split) \
        .detect(network.graph, network.split)
    dataio.write_scores(args.out, scores)
    logger.info('%s diagnostics: %s', detector.label, scores.diagnostics)
    print(f'{detector.label}: {len(scores)} scores written to {args.out}')


def cmd_train(args):
    network = _load_network(args)
    hyper = gat.GatHyper.load(args.hyper) if args.hyper else gat.GatHyper()
    if args.seed is not None:
        hyper = hyper.replace(seed=args.seed)
    model, report = gat.train(network.graph, network.split, hyper)
    gat.save_checkpoint(args.out, model, report.threshold)
    if args.report:
        with pathlib.Path(args.report).open('w') as f:
            json.dump(report.to_dict(), f, indent=1)
            f.write('\n')
    print(f'{model.label}: {report.epochs} epochs, best epoch '
          f'{report.best_epoch}, threshold {report.threshold:.6f}')


def cmd_predict(args):
    network = _load_network(args)
    model, threshold = gat.load_checkpoint(args.model)
    if args.estimate_threshold:
        seed = model.hyper.seed if args.seed is None else args.seed
        scores, labels, threshold = gat.predict_with_threshold(
            model, network.graph, network.split,
            core.derive_rng(seed, 'gat', 'inference'))
    else:
        scores, labels = gat.predict(model, network.graph, network.split,
                                     threshold)
    dataio.write_scores(args.out, scores, labels)
    print(f'{model.label}: threshold {threshold:.6f}, '
          f'{int(labels.sum())} nodes predicted Sybil')


def cmd_eval(args):
    nodes, values, _ = dataio.read_scores(args.scores)
    if not np.array_equal(nodes, np.arange(len(nodes))):
        raise dataio.DataFormatError('Score file must list every node in '
                                     'order', args.scores)
    regions = dataio.load_labels(args.labels, len(nodes))
    if args.split:
        split = dataio.load_split(args.split, regions)
    else:
        split = core.TrainSplit(regions, [], [])
    result = evaluation.evaluate(values, split, args.threshold)
    print(f'auc={result.auc:.6f}')
    logger.info('accuracy=%.6f precision=%.6f recall=%.6f at %.4f',
                result.accuracy, result.precision, result.recall,
                result.threshold)


def _experiment_path(name):
    """Config path as given, or relative to the config directory"""
    path = pathlib.Path(name)
    if path.exists() or path.is_absolute() or lvars.CONFIG_DIR is None:
        return path
    return lvars.CONFIG_DIR.joinpath(path)


def cmd_experiment(args):
    cfg = harness.ExperimentConfig.load(_experiment_path(args.config))
    if args.seed is not None:
        cfg = cfg.with_seeds([args.seed])
    records = harness.run_experiment(cfg, args.workers, args.allow_large,
                                     progress=not args.quiet)
    output = pathlib.Path(args.output or cfg.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    dataio.write_results(records, output)
    for line in harness.format_cells(harness.aggregate(records)):
        logger.info(line)
    if args.plot:
        dataio.write_plot_data(dataio.plot_series(records), args.plot)
    print(f'{len(records)} records written to {output}')


def cmd_plot_data(args):
    records = dataio.read_results(args.results)
    series = dataio.plot_series(records, args.x)
    dataio.write_plot_data(series, args.out)
    print(f'{len(series)} series written to {args.out}')


def build_parser():
    parser = ArgumentParser(prog='sybillab',
                            description='Sybil detection laboratory')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='log debug messages')
    commands = parser.add_subparsers(dest='command', metavar='command',
                                     parser_class=ArgumentParser)
    commands.required = True

    synth = commands.add_parser('synth', help='synthesize a network')
    synth.add_argument('--spec', required=True, help='SynthSpec file')
    synth.add_argument('--out', required=True, help='output directory')
    synth.add_argument('--seed', type=int, help='override the spec seed')
    synth.set_defaults(func=cmd_synth)

    sample = commands.add_parser('sample', help='forest fire sample')
    _add_network_args(sample)
    sample.add_argument('--fraction', type=float, default=0.1,
                        help='share of the nodes to sample (default 0.1)')
    sample.add_argument('--burn-p', type=float, default=None,
                        help='burning probability (default from config)')
    sample.add_argument('--train-fraction', type=float, default=None,
                        help='known share of the sample (default from '
                        'config)')
    sample.add_argument('--out', required=True, help='output directory')
    sample.add_argument('--seed', type=int, help='random seed (default 0)')
    sample.set_defaults(func=cmd_sample)

    detect = commands.add_parser('detect', help='run a baseline detector')
    _add_network_args(detect)
    detect.add_argument('--algo', required=True, choices=BASELINES)
    detect.add_argument('--params', help='detector parameters as JSON')
    detect.add_argument('--out', required=True, help='score file')
    detect.set_defaults(func=cmd_detect)

    train = commands.add_parser('train', help='train SybilGAT')
    _add_network_args(train)
    train.add_argument('--hyper', help='hyperparameter file')
    train.add_argument('--out', required=True, help='checkpoint file')
    train.add_argument('--report', help='training report file (JSON)')
    train.add_argument('--seed', type=int, help='override the model seed')
    train.set_defaults(func=cmd_train)

    predict = commands.add_parser('predict', help='score with SybilGAT')
    _add_network_args(predict)
    predict.add_argument('--model', required=True, help='checkpoint file')
    predict.add_argument('--known', dest='split', metavar='FILE',
                         help='known nodes file (same as --split)')
    predict.add_argument('--estimate-threshold', action='store_true',
                         help='estimate the threshold on 10%% of the known '
                         'nodes instead of using the checkpoint one')
    predict.add_argument('--out', required=True, help='score file')
    predict.add_argument('--seed', type=int, help='inference seed')
    predict.set_defaults(func=cmd_predict)

    evaluate = commands.add_parser('eval', help='AUC of a score file')
    evaluate.add_argument('--scores', required=True, help='score file')
    evaluate.add_argument('--labels', required=True, help='ground truth')
    evaluate.add_argument('--split', help='known nodes, left out')
    evaluate.add_argument('--threshold', type=float, default=0.5)
    evaluate.set_defaults(func=cmd_eval)

    experiment = commands.add_parser('experiment', help='run an experiment')
    experiment.add_argument('--config', required=True,
                            help='experiment config file')
    experiment.add_argument('--workers', type=int, default=None,
                            help='worker processes (default from config)')
    experiment.add_argument('--seed', type=int,
                            help='run this seed only')
    experiment.add_argument('--output', help='override the result file')
    experiment.add_argument('--plot', help='also write plot series here')
    experiment.add_argument('--allow-large', action='store_true',
                            help='allow large scale configs')
    experiment.add_argument('-q', '--quiet', action='store_true',
                            help='no progress bar')
    experiment.set_defaults(func=cmd_experiment)

    plot = commands.add_parser('plot-data', help='plot series of results')
    plot.add_argument('--results', required=True, help='result file')
    plot.add_argument('--out', required=True, help='plot series file')
    plot.add_argument('--x', default='attack_edges_per_sybil',
                      help='field on the x axis')
    plot.set_defaults(func=cmd_plot_data)
    return parser


def main(argv=None):
    """
    Main function. Init the shared variables, load 'config.yaml', parse
    'argv' and run the subcommand. Return the exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        init(__file__)
        load_config()
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else lvars.LOG_LEVEL,
            format='%(levelname)s %(name)s: %(message)s')
        subscribe_listeners()
        args.func(args)
    except KeyboardInterrupt:
        return EXIT_INTERRUPTED
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f'sybillab: error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except (core.LabError, OSError) as e:
        print(str(e), file=sys.stderr)
        return EXIT_FAILURE
    except Exception:
        print('An internal error has occurred! Here is the stacktrace for '
              f'the error. Use this to get help:\n\n {traceback.format_exc()}',
              file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


# If executed directly, call the main function
if __name__ == '__main__':
    sys.exit(main())
