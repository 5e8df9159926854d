import networkx as nx
import numpy as np
import pytest

from core import LabelError
from core import TrainSplit
from core import bfs_distance_sets
from core import build_graph
from core import compose_regions
from synthesis import AttackConfig
from synthesis import AttackError
from synthesis import RegionModel
from synthesis import SynthesisError
from synthesis import SynthSpec
from synthesis import attack_network
from synthesis import draw_edge_kinds
from synthesis import generate_ba
from synthesis import generate_pl
from synthesis import labeled_network_from_dataset
from synthesis import place_attack_edges
from synthesis import sample_train_split
from tests import complete_graph
from tests import labels_from
from tests import make_network
from tests import make_spec
from tests import two_triangles
from tests.test_graph import to_networkx


def test_ba_edge_count_and_connectivity():
    g = generate_ba(2000, 6, np.random.default_rng(1))
    assert g.m == 6 * 1994
    assert nx.is_connected(to_networkx(g))
    g.check()


def test_ba_degenerate_star():
    g = generate_ba(7, 6, np.random.default_rng(1))
    assert g.m == 6
    assert g.degree(0) == 6


def test_ba_is_heavy_tailed():
    for seed in range(5):
        degrees = generate_ba(2000, 6, np.random.default_rng(seed)).degrees
        assert degrees.max() > 5 * np.median(degrees)


def test_pl_edge_count():
    g = generate_pl(10000, 5, 0.8, np.random.default_rng(2))
    assert g.m == 5 * 9995


def test_pl_without_triads_is_ba():
    ba = generate_ba(300, 4, np.random.default_rng(9))
    pl = generate_pl(300, 4, 0.0, np.random.default_rng(9))
    assert ba == pl


def test_pl_is_more_clustered_than_ba():
    for seed in range(2):
        ba = generate_ba(2000, 6, np.random.default_rng(seed))
        pl = generate_pl(2000, 6, 0.8, np.random.default_rng(seed))
        assert nx.average_clustering(to_networkx(pl)) > \
            nx.average_clustering(to_networkx(ba))


def test_growth_parameters_are_checked():
    with pytest.raises(SynthesisError):
        generate_ba(5, 5, np.random.default_rng(0))
    with pytest.raises(SynthesisError):
        generate_pl(10, 2, 1.5, np.random.default_rng(0))


def test_attack_config_validation():
    with pytest.raises(AttackError):
        AttackConfig(pdf=(0.5, 0.4))
    with pytest.raises(AttackError):
        AttackConfig(p_targeted=1.5)
    cfg = AttackConfig(edges_per_sybil=2.5, pdf=[0.5, 0.5])
    assert cfg.max_distance == 1
    assert cfg.attack_edge_count(3) == 8


def test_synthesized_network_counts():
    network = make_network(model='pl', n=1000, m=6, edges_per_sybil=8)
    assert network.n == 2000
    assert len(network.attack_edges) == 8000
    assert len(network.split.train_honest) == 50
    assert len(network.split.train_sybil) == 50
    network.check()


def test_attack_edges_cross_and_are_new():
    network = make_network(n=200, m=3, edges_per_sybil=4)
    edges = network.attack_edges
    assert np.all(network.regions.is_sybil[edges[:, 0]])
    assert not np.any(network.regions.is_sybil[edges[:, 1]])
    codes = np.minimum(edges[:, 0], edges[:, 1]) * network.n + \
        np.maximum(edges[:, 0], edges[:, 1])
    assert len(np.unique(codes)) == len(edges)
    for u, v in edges.tolist():
        assert not network.region_graph.has_edge(u, v)
    assert network.graph.m == network.region_graph.m + len(edges)


def test_same_seed_same_network():
    first = make_network(n=150, m=3, edges_per_sybil=2, seed=5)
    second = make_network(n=150, m=3, edges_per_sybil=2, seed=5)
    assert first.graph == second.graph
    assert first.split == second.split
    assert np.array_equal(first.attack_edges, second.attack_edges)


def test_attack_does_not_perturb_regions():
    calm = make_network(n=150, m=3, edges_per_sybil=0, seed=5)
    attacked = make_network(n=150, m=3, edges_per_sybil=3, seed=5)
    assert calm.region_graph == attacked.region_graph
    assert calm.split == attacked.split


def test_fully_targeted_attack_hits_known_nodes():
    network = make_network(n=300, m=3, edges_per_sybil=2, p_targeted=1.0)
    known = set(network.split.train_honest.tolist())
    assert set(network.attack_edges[:, 1].tolist()) <= known


def test_targeted_attack_respects_hit_distance():
    network = make_network(n=300, m=3, edges_per_sybil=1, p_targeted=1.0,
                           pdf=(0.0, 1.0))
    layers, _ = bfs_distance_sets(network.region_graph,
                                  network.split.train_honest, 1)
    assert set(network.attack_edges[:, 1].tolist()) <= \
        set(layers[1].tolist())


def test_empty_distance_sets_are_renormalized(caplog):
    g, regions = two_triangles()
    split = TrainSplit(regions, [0], [])
    cfg = AttackConfig(edges_per_sybil=1, p_targeted=1.0,
                       pdf=(0.5, 0.0, 0.5))
    edges = place_attack_edges(g, regions, split, cfg,
                               np.random.default_rng(0))
    assert sorted(edges.tolist()) == [[3, 0], [4, 0], [5, 0]]
    assert 'renormalizing' in caplog.text


def test_unreachable_hit_distance_fails():
    g, regions = two_triangles()
    split = TrainSplit(regions, [0], [])
    cfg = AttackConfig(edges_per_sybil=1, p_targeted=1.0,
                       pdf=(0.0, 0.0, 1.0))
    with pytest.raises(AttackError):
        place_attack_edges(g, regions, split, cfg, np.random.default_rng(0))


def test_attack_capacity_is_checked():
    g, regions = two_triangles()
    split = TrainSplit(regions, [0], [3])
    with pytest.raises(AttackError):
        place_attack_edges(g, regions, split, AttackConfig(edges_per_sybil=4),
                           np.random.default_rng(0))


def test_zero_mass_distances_are_not_renormalized(caplog):
    g, regions = two_triangles()
    split = TrainSplit(regions, [0], [])
    cfg = AttackConfig(edges_per_sybil=1, p_targeted=1.0,
                       pdf=(1.0, 0.0, 0.0))
    edges = place_attack_edges(g, regions, split, cfg,
                               np.random.default_rng(0))
    assert edges[:, 1].tolist() == [0, 0, 0]
    assert 'renormalizing' not in caplog.text


def test_edge_kinds_follow_the_targeted_mix():
    rng = np.random.default_rng(5)
    kinds = np.concatenate([draw_edge_kinds(100, 0.2, np.array([0.5, 0.5]),
                                            rng) for _ in range(1000)])
    total = len(kinds)
    counts = {-1: np.sum(kinds == -1), 0: np.sum(kinds == 0),
              1: np.sum(kinds == 1)}
    for kind, p in [(-1, 0.8), (0, 0.1), (1, 0.1)]:
        sigma = np.sqrt(total * p * (1 - p))
        assert abs(counts[kind] - total * p) <= 3 * sigma


def test_exhausted_targets_are_not_replaced_by_random_edges():
    g, regions = compose_regions(complete_graph(6), complete_graph(6))
    split = TrainSplit(regions, [0], [6])
    cfg = AttackConfig(edges_per_sybil=2, p_targeted=0.9, pdf=(1.0,),
                       sybil_targets=(6,))
    with pytest.raises(AttackError, match='targeted'):
        place_attack_edges(g, regions, split, cfg, np.random.default_rng(0))


def test_targeted_edges_land_on_honest_nodes():
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                        (0, 3)])
    regions = labels_from([0, 0, 0, 1, 1, 1])
    cfg = AttackConfig(edges_per_sybil=1, p_targeted=1.0, pdf=(0.0, 1.0))
    edges = place_attack_edges(g, regions, TrainSplit(regions, [0], []), cfg,
                               np.random.default_rng(0))
    assert set(edges[:, 0].tolist()) <= {3, 4, 5}
    assert set(edges[:, 1].tolist()) <= {1, 2}


def test_attack_labels():
    assert AttackConfig(name='burst').label == 'burst'
    assert AttackConfig(edges_per_sybil=2).label == 'random'
    assert AttackConfig(p_targeted=0.2, pdf=(0.5, 0.5)).label == \
        'targeted(p_T=0.2, pdf=[0.5,0.5])'


def test_train_split_rounds_and_clamps():
    regions = labels_from([0] * 30 + [1] * 10)
    split = sample_train_split(regions, 0.05, np.random.default_rng(0))
    # 1.5 rounds up to 2, 0.5 rounds up to 1
    assert len(split.train_honest) == 2
    assert len(split.train_sybil) == 1
    with pytest.raises(LabelError):
        sample_train_split(labels_from([0] * 30 + [1] * 5), 0.05,
                           np.random.default_rng(0))


def test_per_class_train_fraction():
    regions = labels_from([0] * 100 + [1] * 100)
    split = sample_train_split(regions, (0.1, 0.2), np.random.default_rng(0))
    assert (len(split.train_honest), len(split.train_sybil)) == (10, 20)


def test_same_regions_attacked_twice():
    region_graph, regions = compose_regions(
        generate_ba(100, 3, np.random.default_rng(0)),
        generate_ba(100, 3, np.random.default_rng(1)))
    split = sample_train_split(regions, 0.1, np.random.default_rng(2))
    random = attack_network(region_graph, regions, split,
                            AttackConfig(edges_per_sybil=2),
                            np.random.default_rng(3))
    targeted = attack_network(region_graph, regions, split,
                              AttackConfig(edges_per_sybil=2, p_targeted=0.5,
                                           pdf=(0.5, 0.5)),
                              np.random.default_rng(4))
    assert random.region_graph is targeted.region_graph
    assert len(random.attack_edges) == len(targeted.attack_edges) == 200
    random.check()
    targeted.check()


def test_spec_round_trip_and_validation():
    spec = make_spec(model='pl', n=50, m=2, edges_per_sybil=3,
                     train_fraction=0.1, seed=7)
    assert spec.label == 'PL-PL'
    assert SynthSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(SynthesisError):
        SynthSpec.from_dict({'honest': {'model': 'ba', 'n': 10, 'm': 2},
                             'sybil': {'model': 'ba', 'n': 10, 'm': 2},
                             'colour': 'red'})
    with pytest.raises(SynthesisError):
        RegionModel.from_dict({'model': 'er', 'n': 10, 'm': 2})


def test_spec_loads_yaml(tmp_path):
    path = tmp_path / 'spec.yaml'
    path.write_text('honest: {model: ba, n: 30, m: 2}\n'
                    'sybil: {model: pl, n: 20, m: 2, p: 0.5}\n'
                    'attack: {edges_per_sybil: 1}\n'
                    'train_fraction: {honest: 0.1, sybil: 0.2}\n'
                    'seed: 3\n')
    spec = SynthSpec.load(path)
    assert spec.label == 'BA-PL'
    assert spec.train_fraction == (0.1, 0.2)
    assert spec.seed == 3


def test_labeled_dataset_keeps_crossing_edges_as_attack():
    g = complete_graph(4)
    regions = labels_from([0, 0, 1, 1])
    network = labeled_network_from_dataset(g, regions, 0.4,
                                           np.random.default_rng(0))
    assert len(network.attack_edges) == 4
    assert np.all(regions.is_sybil[network.attack_edges[:, 0]])
    assert network.region_graph.m == 2
    network.check()
