"""
Useful docs to read for more information:
 - gat.layers module

Module containing the SybilGAT model: its hyperparameters (GatHyper), the
stack of attention layers (GatModel), the input encoding of known labels and
the loss with its gradients.

Architecture for L layers, input width I, hidden width Hw, N heads and output
width O:
- first layer: I -> Hw with N heads (I -> O with one head when L = 1);
- intermediate layers: Hw * N -> Hw with N heads;
- last layer: Hw * N -> O with one head.
tanh follows every layer but the last, which is followed by a sigmoid (O = 1)
or a softmax whose Sybil channel is the score (O = 2). Channel 0 is always
honest and channel 1 Sybil.
"""
import pathlib
from dataclasses import dataclass, asdict

import numpy as np
import ruamel.yaml
import scipy.special

from core import LabError
from core import ScoreVector
from gat.layers import GatLayer
from gat.structure import as_structure


@dataclass(frozen=True)
class GatHyper:
    """
    Hyperparameters of a SybilGAT model and of its training:
    'input_width' I and 'output_width' O (1 or 2), 'hidden_width' Hw,
    'heads' N, 'layers' L, 'dropout_rate', 'leaky_slope', 'learning_rate',
    'max_epochs', 'patience' (epochs without validation improvement before
    stopping), 'train_val_split' (training share of the known nodes) and the
    master 'seed' of every random stream of the model.
    """

    input_width: int = 1
    hidden_width: int = 4
    output_width: int = 1
    heads: int = 4
    layers: int = 2
    dropout_rate: float = 0.5
    leaky_slope: float = 0.2
    learning_rate: float = 0.01
    max_epochs: int = 500
    patience: int = 30
    train_val_split: float = 0.8
    seed: int = 0

    def __post_init__(self):
        if self.input_width not in (1, 2) or self.output_width not in (1, 2):
            raise ModelError('Input and output widths must be 1 or 2',
                             (self.input_width, self.output_width))
        if min(self.hidden_width, self.heads, self.layers) < 1:
            raise ModelError('Widths, heads and layers must be positive',
                             (self.hidden_width, self.heads, self.layers))
        for name in ('dropout_rate', 'learning_rate', 'train_val_split'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ModelError(f'{name} must lie in [0, 1]', value)
        if self.dropout_rate >= 1.0:
            raise ModelError('Dropout rate must be lower than 1',
                             self.dropout_rate)
        if self.max_epochs < 1 or self.patience < 1:
            raise ModelError('Epoch budget and patience must be positive',
                             (self.max_epochs, self.patience))

    def replace(self, **changes):
        data = asdict(self)
        data.update(changes)
        return GatHyper(**data)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ModelError('Invalid key in hyperparameters',
                             sorted(unknown)[0])
        return cls(**dict(data))

    @classmethod
    def load(cls, path):
        """Load hyperparameters from a JSON or YAML file"""
        try:
            data = ruamel.yaml.YAML(typ='safe').load(pathlib.Path(path))
        except ruamel.yaml.YAMLError as e:
            raise ModelError('Malformed hyperparameter file', path) from e
        return cls.from_dict(data or {})


class GatModel:
    """
    A GatModel is the stack of GatLayers described by a GatHyper. Its weights
    start at zero; call initialize() with a Generator to draw them.
    """

    def __init__(self, hyper):
        self.hyper = hyper
        self.layers = []
        in_dim = hyper.input_width
        for index in range(hyper.layers):
            last = index == hyper.layers - 1
            out_dim = hyper.output_width if last else hyper.hidden_width
            heads = 1 if last else hyper.heads
            self.layers.append(GatLayer(in_dim, out_dim, heads,
                                        hyper.leaky_slope))
            in_dim = out_dim * heads

    @property
    def label(self):
        return f'SybilGAT-L{self.hyper.layers}'

    def initialize(self, rng):
        for layer in self.layers:
            layer.initialize(rng)
        return self

    def parameters(self):
        """Flat list of every parameter array, layer by layer"""
        return [p for layer in self.layers for p in layer.parameters()]

    def state(self):
        """Copy of every parameter array"""
        return [p.copy() for p in self.parameters()]

    def load_state(self, state):
        for param, value in zip(self.parameters(), state):
            param[...] = value

    def check(self):
        """Verify the layer shapes against the hyperparameters"""
        expected = GatModel(self.hyper)
        for have, want in zip(self.layers, expected.layers):
            for p, q in zip(have.parameters(), want.parameters()):
                if p.shape != q.shape:
                    raise ModelError('Layer shape does not match the '
                                     'hyperparameters', (p.shape, q.shape))
        if len(self.layers) != len(expected.layers):
            raise ModelError('Wrong number of layers', len(self.layers))

    def __str__(self):
        layers = ', '.join(str(layer) for layer in self.layers)
        return f'GatModel({layers})'


def node_features(g, split, width=1):
    """
    Encode the known nodes of 'split' as the n x 'width' input of a model.
    Width 1 is the Sybil-ness of a node: 1 for known Sybils, 0 for known
    honest nodes and 0.5 for unknown ones. Width 2 is one-hot (honest,
    Sybil) with (0.5, 0.5) for unknown nodes.
    """
    if width not in (1, 2):
        raise ModelError('Input width must be 1 or 2', width)
    sybilness = np.full(g.n, 0.5)
    sybilness[split.train_sybil] = 1.0
    sybilness[split.train_honest] = 0.0
    if width == 1:
        return sybilness[:, np.newaxis]
    return np.column_stack((1.0 - sybilness, sybilness))


def gat_layer_forward(layer, g, x, training=False, rng=None,
                      dropout_rate=0.5, final=False):
    """
    Run a single 'layer' on the Graph (or AttentionStructure) 'g': dropout on
    the input while 'training', attention, then tanh unless the layer is the
    'final' one.
    """
    out, _ = layer.forward(as_structure(g), np.asarray(x, dtype=np.float64),
                           training, dropout_rate, rng)
    return out if final else np.tanh(out)


def forward_pass(model, structure, x, training=False, rng=None):
    """
    Run 'model' on the AttentionStructure 'structure' with input 'x'. Return
    the output logits (n x O) and the per layer caches.
    """
    hyper = model.hyper
    caches = []
    h = x
    for index, layer in enumerate(model.layers):
        h, cache = layer.forward(structure, h, training, hyper.dropout_rate,
                                 rng)
        if index < len(model.layers) - 1:
            h = np.tanh(h)
            cache['activation'] = h
        caches.append(cache)
    return h, caches


def sybil_probability(logits):
    """Per node Sybil probability of the output logits"""
    if logits.shape[1] == 1:
        return scipy.special.expit(logits[:, 0])
    return scipy.special.softmax(logits, axis=1)[:, 1]


def model_forward(model, g, x, training=False, rng=None):
    """
    Run 'model' on the Graph (or AttentionStructure) 'g' with input 'x' and
    return the per node Sybil probabilities as a ScoreVector. Dropout is
    only active when 'training'.
    """
    logits, _ = forward_pass(model, as_structure(g),
                             np.asarray(x, dtype=np.float64), training, rng)
    return ScoreVector(np.clip(sybil_probability(logits), 0.0, 1.0),
                       model.label)


def loss(logits, nodes, labels):
    """
    Mean cross entropy of the model output on 'nodes' with 0/1 'labels'
    (binary cross entropy of the sigmoid when O = 1) and its gradient
    w.r.t. the logits.
    """
    labels = np.asarray(labels, dtype=np.float64)
    grad = np.zeros_like(logits)
    count = len(nodes)
    if logits.shape[1] == 1:
        z = logits[nodes, 0]
        value = np.mean(np.logaddexp(0.0, z) - labels * z)
        grad[nodes, 0] = (scipy.special.expit(z) - labels) / count
        return float(value), grad
    target = np.column_stack((1.0 - labels, labels))
    log_p = scipy.special.log_softmax(logits[nodes], axis=1)
    value = -np.mean(np.sum(target * log_p, axis=1))
    grad[nodes] = (np.exp(log_p) - target) / count
    return float(value), grad


def loss_and_gradients(model, structure, x, nodes, labels, training=False,
                       rng=None):
    """
    Forward and backward pass. Return the loss on 'nodes' and the gradient
    of every parameter, in the order of model.parameters().
    """
    logits, caches = forward_pass(model, structure, x, training, rng)
    value, grad = loss(logits, nodes, labels)
    grads = []
    for index in range(len(model.layers) - 1, -1, -1):
        layer = model.layers[index]
        cache = caches[index]
        if 'activation' in cache:
            grad = grad * (1.0 - cache['activation'] ** 2)
        grad, layer_grads = layer.backward(structure, grad, cache)
        grads = layer_grads + grads
    return value, grads


class ModelError(LabError):
    """Error raised for invalid model hyperparameters or shapes."""
