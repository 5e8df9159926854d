import os
import pathlib

import numpy as np
import pytest

import core.vars as lvars
from core import TrainSplit
from dataio import DataFormatError
from dataio import DatasetDescriptor
from dataio import load_edge_list
from dataio import load_labels
from dataio import load_meta
from dataio import load_network
from dataio import load_split
from dataio import mean_std
from dataio import plot_series
from dataio import read_results
from dataio import read_scores
from dataio import resolve_data_path
from dataio import save_network
from dataio import write_edge_list
from dataio import write_results
from dataio import write_scores
from dataio import write_split
from harness import ArtifactCache
from harness import cached_edge_list
from synthesis import synthesize_network
from tests import labels_from
from tests import make_spec
from tests import write_text

FACEBOOK = pathlib.Path(os.environ.get('SYBILLAB_DATA_DIR', 'data')) \
    .joinpath('facebook_combined.txt')


def test_direction_policies(tmp_path):
    path = write_text(tmp_path / 'g.txt', '0 1\n1 0\n1 2\n')
    union, _ = load_edge_list(path, 'union', 'integer')
    mutual, _ = load_edge_list(path, 'mutual', 'integer')
    assert union.m == 2
    assert mutual.m == 1
    assert mutual.n == 3
    with pytest.raises(DataFormatError):
        load_edge_list(path, 'both')


def test_dense_ids_follow_first_appearance(tmp_path):
    path = write_text(tmp_path / 'g.txt',
                      '# a comment\nalice bob 3.5\nbob carol\n\ncarol alice\n')
    g, id_map = load_edge_list(path)
    assert id_map.externals == ['alice', 'bob', 'carol']
    assert id_map.dense('carol') == 2
    assert g.m == 3
    with pytest.raises(DataFormatError):
        id_map.dense('dave')


def test_malformed_edge_reports_the_line(tmp_path):
    path = write_text(tmp_path / 'g.txt', '0 1\n2\n')
    with pytest.raises(DataFormatError) as info:
        load_edge_list(path)
    assert info.value.context.endswith(':2')


def test_node_header_keeps_isolated_nodes(tmp_path):
    g, _ = load_edge_list(write_text(tmp_path / 'g.txt',
                                     '# nodes 5\n0 1\n1 2\n'),
                          id_policy='integer')
    write_edge_list(tmp_path / 'out.txt', g)
    again, _ = load_edge_list(tmp_path / 'out.txt', id_policy='integer')
    assert again == g
    assert again.n == 5
    with pytest.raises(DataFormatError):
        load_edge_list(write_text(tmp_path / 'bad.txt', '# nodes 2\n0 4\n'),
                       id_policy='integer')


def test_label_policies(tmp_path):
    _, id_map = load_edge_list(write_text(tmp_path / 'g.txt',
                                          'a b\nb c\nc d\n'))
    labels = write_text(tmp_path / 'labels.txt', 'a honest\nb SYBIL\nc 0\n')
    with pytest.raises(DataFormatError):
        load_labels(labels, id_map)
    assert load_labels(labels, id_map, 'honest').is_sybil.tolist() == \
        [False, True, False, False]
    assert load_labels(labels, id_map, 'sybil').is_sybil.tolist() == \
        [False, True, False, True]
    conflict = write_text(tmp_path / 'conflict.txt', 'a 0\na 1\n')
    with pytest.raises(DataFormatError):
        load_labels(conflict, id_map, 'honest')


def test_split_file(tmp_path):
    regions = labels_from([0, 0, 1, 1])
    split = TrainSplit(regions, [1], [2, 3])
    write_split(tmp_path / 'split.txt', split)
    assert load_split(tmp_path / 'split.txt', regions) == split


def test_score_file(tmp_path):
    write_scores(tmp_path / 's.csv', np.array([0.25, 1.0, 1 / 3]),
                 labels=[0, 1, 0])
    nodes, values, labels = read_scores(tmp_path / 's.csv')
    assert nodes.tolist() == [0, 1, 2]
    assert values.tolist() == [0.25, 1.0, 0.333333]
    assert labels.tolist() == [0, 1, 0]
    write_scores(tmp_path / 't.csv', np.array([0.5, 0.5]), nodes=[1])
    assert read_scores(tmp_path / 't.csv')[2] is None
    with pytest.raises(DataFormatError):
        read_scores(write_text(tmp_path / 'u.csv', 'id,value\n0,1\n'))


def test_network_directory(tmp_path):
    spec = make_spec(n=60, m=2, edges_per_sybil=1, train_fraction=0.1)
    network = synthesize_network(spec)
    save_network(tmp_path / 'net', network, spec)
    loaded = load_network(tmp_path / 'net')
    loaded.check()
    assert loaded.graph == network.graph
    assert loaded.region_graph == network.region_graph
    assert loaded.split == network.split
    assert sorted(loaded.attack_edges.tolist()) == \
        sorted(network.attack_edges.tolist())
    meta = load_meta(tmp_path / 'net')
    assert meta['attack_edges'] == 60
    assert meta['spec']['seed'] == 42


def record(algorithm, x, auc, seed=1):
    return {'experiment': 4, 'dataset': 'BA-BA', 'model': 'BA-BA',
            'algorithm': algorithm, 'seed': seed,
            'attack_edges_per_sybil': x, 'p_targeted': 0.0, 'auc': auc,
            'wall_ms': None, 'threshold': None, 'epochs': None}


@pytest.mark.parametrize('suffix', ['csv', 'json'])
def test_result_files(tmp_path, suffix):
    records = [record('SybilRank', 1.0, 0.75), record('SybilRank', 2.0, 0.5)]
    path = tmp_path / f'results.{suffix}'
    write_results(records, path)
    rows = read_results(path)
    assert [r['auc'] for r in rows] == [0.75, 0.5]
    assert rows[0]['seed'] == 1
    assert rows[0]['wall_ms'] is None


def test_result_header_is_checked(tmp_path):
    with pytest.raises(DataFormatError):
        read_results(write_text(tmp_path / 'r.csv', 'a,b\n1,2\n'))


def test_plot_series_statistics():
    records = [record('SybilRank', 1.0, 0.9, 1), record('SybilRank', 1.0,
                                                        0.7, 2),
               record('SybilRank', 2.0, 0.6, 1), record('SybilRank', 3.0,
                                                        0.5, 1),
               record('SybilBelief', 1.0, 0.8, 1)]
    series = plot_series(records)
    assert [s['algorithm'] for s in series] == ['SybilBelief', 'SybilRank']
    rank = series[1]
    assert rank['x'] == [1.0, 2.0, 3.0]
    assert rank['mean'] == pytest.approx([0.8, 0.6, 0.5])
    assert rank['count'] == [2, 1, 1]
    assert rank['spearman'] == pytest.approx(-1.0)
    assert series[0]['spearman'] is None
    assert mean_std([0.6, 0.8]) == pytest.approx((0.7, 0.1414213562))


def test_dataset_descriptor(tmp_path):
    write_text(tmp_path / 'toy.txt', 'a b\nb c\n')
    write_text(tmp_path / 'toy-labels.txt', 'a 0\nb 0\nc 1\n')
    lvars.DATA_DIR = tmp_path
    descriptor = DatasetDescriptor.from_dict({'edges': 'toy.txt',
                                              'labels': 'toy-labels.txt'})
    assert descriptor.name == 'toy'
    assert resolve_data_path('toy.txt') == tmp_path / 'toy.txt'
    graph, regions, id_map = descriptor.load(cached_edge_list)
    assert graph.m == 2
    assert regions.sybil.tolist() == [2]
    assert len(ArtifactCache.cache) == 1
    descriptor.load(cached_edge_list)
    assert len(ArtifactCache.cache) == 1
    with pytest.raises(DataFormatError):
        DatasetDescriptor.from_dict({'edges': 'toy.txt', 'weights': 'w'})
    with pytest.raises(DataFormatError):
        DatasetDescriptor(edges='toy.txt', id_policy='hashed')


def test_cache_drops_oldest_artifacts():
    lvars.CACHE_SIZE = 2
    for key in ('a', 'b', 'c'):
        ArtifactCache.get(key, lambda: key.upper())
    assert list(ArtifactCache.cache) == ['b', 'c']
    assert ArtifactCache.get('b', lambda: 'rebuilt') == 'B'
    assert list(ArtifactCache.cache) == ['c', 'b']


@pytest.mark.skipif(not FACEBOOK.exists(),
                    reason='facebook_combined.txt is not available')
def test_facebook_dataset():
    g, _ = load_edge_list(FACEBOOK)
    assert (g.n, g.m) == (4039, 88234)
