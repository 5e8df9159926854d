import numpy as np
import pytest

import core.eventsys
from core import TrainSplit
from core import build_graph
from gat import AttentionStructure
from gat import CheckpointError
from gat import EarlyStopping
from gat import GatHyper
from gat import GatLayer
from gat import GatModel
from gat import TrainingError
from gat import estimate_threshold
from gat import gat_layer_forward
from gat import load_checkpoint
from gat import loss_and_gradients
from gat import model_forward
from gat import node_features
from gat import predict
from gat import predict_with_threshold
from gat import save_checkpoint
from gat import train
from gat.layers import attention_coefficients
from gat.model import ModelError
from gat.training import split_known
from tests import labels_from
from tests import make_network
from tests import write_text


def small_graph():
    g = build_graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5),
                        (4, 5), (1, 4)])
    split = TrainSplit(labels_from([0, 0, 0, 1, 1, 1]), [0, 1], [4, 5])
    return g, split


def numeric_gradient(model, structure, x, nodes, labels, param, eps=1e-6):
    grad = np.zeros_like(param)
    for index in np.ndindex(param.shape):
        saved = param[index]
        param[index] = saved + eps
        up, _ = loss_and_gradients(model, structure, x, nodes, labels)
        param[index] = saved - eps
        down, _ = loss_and_gradients(model, structure, x, nodes, labels)
        param[index] = saved
        grad[index] = (up - down) / (2 * eps)
    return grad


@pytest.mark.parametrize('output_width', [1, 2])
def test_gradients_match_finite_differences(output_width):
    g, split = small_graph()
    hyper = GatHyper(hidden_width=4, heads=4, layers=2,
                     output_width=output_width)
    model = GatModel(hyper).initialize(np.random.default_rng(3))
    structure = AttentionStructure(g)
    x = node_features(g, split)
    nodes = split.known
    labels = split.labels_of(nodes)
    _, grads = loss_and_gradients(model, structure, x, nodes, labels)
    for param, grad in zip(model.parameters(), grads):
        expected = numeric_gradient(model, structure, x, nodes, labels, param)
        assert np.allclose(grad, expected, rtol=1e-4, atol=1e-7)


def test_attention_is_a_distribution_over_neighbors():
    g, split = small_graph()
    structure = AttentionStructure(g)
    assert len(structure) == 2 * g.m + g.n
    layer = GatLayer(1, 3, 2)
    layer.initialize(np.random.default_rng(0))
    alpha = attention_coefficients(layer, structure, node_features(g, split))
    assert alpha.shape == (len(structure), 2)
    assert np.allclose(structure.sum_by_target(alpha), 1.0)
    assert np.all(alpha > 0)


def test_input_encoding():
    g, split = small_graph()
    assert node_features(g, split)[:, 0].tolist() == \
        [0.0, 0.0, 0.5, 0.5, 1.0, 1.0]
    one_hot = node_features(g, split, 2)
    assert one_hot[0].tolist() == [1.0, 0.0]
    assert one_hot[2].tolist() == [0.5, 0.5]


def test_hyperparameters_are_checked():
    with pytest.raises(ModelError):
        GatHyper(output_width=3)
    with pytest.raises(ModelError):
        GatHyper(dropout_rate=1.0)
    with pytest.raises(ModelError):
        GatHyper.from_dict({'depth': 3})
    assert GatHyper.from_dict({'layers': 8}).layers == 8


def test_model_shapes():
    model = GatModel(GatHyper(hidden_width=4, heads=4, layers=3))
    widths = [(layer.in_dim, layer.out_dim, layer.heads)
              for layer in model.layers]
    assert widths == [(1, 4, 4), (16, 4, 4), (16, 1, 1)]
    assert GatModel(GatHyper(layers=1)).layers[0].width == 1
    model.check()


def test_model_forward_chains_its_layers():
    g, split = small_graph()
    model = GatModel(GatHyper(layers=2)).initialize(
        np.random.default_rng(3))
    x = node_features(g, split, 1)

    h = gat_layer_forward(model.layers[0], g, x)
    h = gat_layer_forward(model.layers[1], g, h, final=True)
    scores = model_forward(model, g, x)
    np.testing.assert_allclose(scores.values, 1.0 / (1.0 + np.exp(-h[:, 0])),
                               rtol=1e-12)
    assert scores.detector == 'SybilGAT-L2'
    assert np.all((scores.values >= 0.0) & (scores.values <= 1.0))

    dropped = model_forward(model, g, x, True, np.random.default_rng(0))
    assert not np.allclose(dropped.values, scores.values)


def test_early_stopping_keeps_the_best_epoch():
    stopper = EarlyStopping(patience=2)
    stopped = []
    for epoch, value in enumerate([3.0, 2.0, 2.5, 2.4], start=1):
        stopper.update(epoch, value)
        stopped.append(stopper.should_stop)
    assert stopped == [False, False, False, True]
    assert stopper.best_epoch == 2
    assert stopper.best_loss == 2.0


def test_threshold_maximizes_youden():
    assert estimate_threshold([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1]) == 0.5
    assert estimate_threshold([0.1, 0.6, 0.7, 0.9], [0, 0, 1, 1]) == \
        pytest.approx(0.65)
    with pytest.warns(UserWarning):
        assert estimate_threshold([0.2, 0.4], [1, 1]) == 0.5


def test_known_nodes_split_per_class():
    regions = labels_from([0] * 10 + [1] * 10)
    split = TrainSplit(regions, np.arange(10), np.arange(10, 20))
    first, second = split_known(split, 0.8, np.random.default_rng(0))
    assert (len(first.train_honest), len(second.train_honest)) == (8, 2)
    assert (len(first.train_sybil), len(second.train_sybil)) == (8, 2)
    assert not set(first.known.tolist()) & set(second.known.tolist())

    lone = TrainSplit(regions, [0], [10, 11])
    first, second = split_known(lone, 0.9, np.random.default_rng(0))
    assert first.train_honest.tolist() == [0]
    assert len(second.train_honest) == 0
    assert (len(first.train_sybil), len(second.train_sybil)) == (1, 1)


def test_training_is_deterministic_and_reported():
    network = make_network(n=60, m=3, edges_per_sybil=1, train_fraction=0.1)
    hyper = GatHyper(max_epochs=6, patience=3, seed=1)
    epochs = []
    reports = []
    core.eventsys.TrainEventListener(
        core.eventsys.EventHandler(epochs.append),
        core.eventsys.TrainEventListener.EPOCH).listen()
    core.eventsys.TrainEventListener(
        core.eventsys.EventHandler(reports.append),
        core.eventsys.TrainEventListener.STOPPED).listen()

    model, report = train(network.graph, network.split, hyper)
    again, _ = train(network.graph, network.split, hyper)
    for p, q in zip(model.parameters(), again.parameters()):
        assert np.array_equal(p, q)
    assert len(epochs) == 2 * report.epochs
    assert len(reports) == 2 and reports[0].report is not None
    assert 1 <= report.best_epoch <= report.epochs <= 6
    assert report.best_loss == min(report.val_losses)

    scores, labels = predict(model, network.graph, network.split,
                             report.threshold)
    assert len(scores.values) == network.n
    assert np.all((scores.values >= 0.0) & (scores.values <= 1.0))
    assert set(labels.tolist()) <= {0, 1}


def test_training_needs_two_known_nodes_per_class():
    g, _ = small_graph()
    split = TrainSplit(labels_from([0, 0, 0, 1, 1, 1]), [0, 1], [4])
    with pytest.raises(TrainingError):
        train(g, split, GatHyper(max_epochs=2))


def test_inference_threshold_is_reported():
    network = make_network(n=60, m=3, edges_per_sybil=1, train_fraction=0.2)
    model = GatModel(GatHyper(seed=2)).initialize(np.random.default_rng(2))
    scores, labels, threshold = predict_with_threshold(
        model, network.graph, network.split, np.random.default_rng(0))
    assert scores.diagnostics['threshold'] == threshold
    assert np.array_equal(labels, (scores.values >= threshold).astype(int))


def test_checkpoint_round_trip(tmp_path):
    model = GatModel(GatHyper(layers=3, output_width=2, seed=5))
    model.initialize(np.random.default_rng(5))
    path = tmp_path / 'model.json'
    save_checkpoint(path, model, 0.375)
    loaded, threshold = load_checkpoint(path)
    assert threshold == 0.375
    assert loaded.hyper == model.hyper
    for p, q in zip(model.parameters(), loaded.parameters()):
        assert np.array_equal(p, q)


def test_bad_checkpoints_are_rejected(tmp_path):
    with pytest.raises(CheckpointError):
        load_checkpoint(write_text(tmp_path / 'a.json', '{"format": "x"}'))
    with pytest.raises(CheckpointError):
        load_checkpoint(write_text(tmp_path / 'b.json', '{not json'))
    model = GatModel(GatHyper(layers=2))
    save_checkpoint(tmp_path / 'c.json', model)
    text = (tmp_path / 'c.json').read_text().replace('"layers": 2',
                                                     '"layers": 3')
    with pytest.raises(CheckpointError):
        load_checkpoint(write_text(tmp_path / 'd.json', text))
