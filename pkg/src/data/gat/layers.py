"""
Useful docs to read for more information:
 - gat.structure module

Module containing the graph attention layer with its analytic backward pass.

For one head with weights W and attention vector a = [a_t | a_s] a layer
computes, for every node i and every j in N(i) plus i itself:

    z_i = W x_i
    e_ij = LeakyReLU(a_t . z_i + a_s . z_j)
    alpha_ij = softmax over j of e_ij
    h_i = sum over j of alpha_ij z_j

Heads are concatenated and a bias is added. Dropout (inverted, so nothing
changes at inference) is applied to the layer input while training.
"""
import numpy as np

from core import LabError


class GatLayer:
    """
    A graph attention layer with 'heads' heads mapping 'in_dim' input
    features to 'out_dim' features per head. Its parameters are 'weight'
    (in_dim x heads * out_dim), 'attention' (heads x 2 * out_dim: the first
    out_dim entries score the target, the others the source) and 'bias'
    (heads * out_dim).
    """

    def __init__(self, in_dim, out_dim, heads, leaky_slope=0.2):
        if min(in_dim, out_dim, heads) < 1:
            raise LayerError('Layer sizes must be positive',
                             (in_dim, out_dim, heads))
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.heads = heads
        self.leaky_slope = leaky_slope
        self.weight = np.zeros((in_dim, heads * out_dim))
        self.attention = np.zeros((heads, 2 * out_dim))
        self.bias = np.zeros(heads * out_dim)

    @property
    def width(self):
        """Number of output columns"""
        return self.heads * self.out_dim

    def parameters(self):
        return [self.weight, self.attention, self.bias]

    def initialize(self, rng):
        """Glorot uniform weights and attention vectors, zero bias"""
        limit = np.sqrt(6.0 / (self.in_dim + self.width))
        self.weight[...] = rng.uniform(-limit, limit, self.weight.shape)
        limit = np.sqrt(6.0 / (1 + 2 * self.out_dim))
        self.attention[...] = rng.uniform(-limit, limit, self.attention.shape)
        self.bias[...] = 0.0

    def forward(self, structure, x, training=False, dropout_rate=0.0,
                rng=None):
        """
        Run the layer on the features 'x' (n x in_dim). Return the output
        (n x heads * out_dim) and the cache the backward pass needs.
        """
        if x.ndim != 2 or x.shape[1] != self.in_dim:
            raise LayerError(f'Layer expects {self.in_dim} input features',
                             x.shape)
        if training and dropout_rate > 0.0:
            keep = rng.random(x.shape) >= dropout_rate
            mask = keep / (1.0 - dropout_rate)
            x = x * mask
        else:
            mask = None

        n = x.shape[0]
        z = (x @ self.weight).reshape(n, self.heads, self.out_dim)
        a_t = self.attention[:, :self.out_dim]
        a_s = self.attention[:, self.out_dim:]
        score_t = np.einsum('nhf,hf->nh', z, a_t)
        score_s = np.einsum('nhf,hf->nh', z, a_s)

        tgt = structure.targets
        src = structure.sources
        raw = score_t[tgt] + score_s[src]
        logits = np.where(raw > 0, raw, self.leaky_slope * raw)
        shifted = np.exp(logits - structure.max_by_target(logits)[tgt])
        alpha = shifted / structure.sum_by_target(shifted)[tgt]
        out = structure.sum_by_target(alpha[:, :, np.newaxis] * z[src])
        out = out.reshape(n, self.width) + self.bias

        cache = {'x': x, 'mask': mask, 'z': z, 'raw': raw, 'alpha': alpha}
        return out, cache

    def backward(self, structure, grad_out, cache):
        """
        Backpropagate 'grad_out' (gradient of the loss w.r.t. the layer
        output). Return the gradient w.r.t. the layer input and the list of
        parameter gradients, in the order of parameters().
        """
        x = cache['x']
        z = cache['z']
        alpha = cache['alpha']
        raw = cache['raw']
        n = x.shape[0]
        tgt = structure.targets
        src = structure.sources

        grad_bias = grad_out.sum(axis=0)
        grad_h = grad_out.reshape(n, self.heads, self.out_dim)

        # Aggregation h_i = sum alpha_ij z_j
        grad_alpha = np.einsum('ehf,ehf->eh', grad_h[tgt], z[src])
        grad_z = structure.sum_by_source(alpha[:, :, np.newaxis] *
                                         grad_h[tgt])

        # Softmax over every target segment
        weighted = structure.sum_by_target(alpha * grad_alpha)
        grad_logits = alpha * (grad_alpha - weighted[tgt])
        grad_raw = grad_logits * np.where(raw > 0, 1.0, self.leaky_slope)

        grad_score_t = structure.sum_by_target(grad_raw)
        grad_score_s = structure.sum_by_source(grad_raw)
        a_t = self.attention[:, :self.out_dim]
        a_s = self.attention[:, self.out_dim:]
        grad_z += grad_score_t[:, :, np.newaxis] * a_t
        grad_z += grad_score_s[:, :, np.newaxis] * a_s
        grad_attention = np.concatenate(
            (np.einsum('nh,nhf->hf', grad_score_t, z),
             np.einsum('nh,nhf->hf', grad_score_s, z)), axis=1)

        grad_z = grad_z.reshape(n, self.width)
        grad_weight = x.T @ grad_z
        grad_x = grad_z @ self.weight.T
        if cache['mask'] is not None:
            grad_x = grad_x * cache['mask']
        return grad_x, [grad_weight, grad_attention, grad_bias]

    def __str__(self):
        return f'GatLayer(in={self.in_dim}, out={self.out_dim}, ' \
            f'heads={self.heads})'


def attention_coefficients(layer, structure, x):
    """Attention coefficients of every entry of 'structure' (no dropout)"""
    return layer.forward(structure, x)[1]['alpha']


class LayerError(LabError):
    """Error raised for mismatched layer shapes."""
