"""
Module containing SybilSCAR, a local rule propagation detector, in its two
variants: C (constant homophily on every edge) and D (homophily derived from
the degree of the sending node).

The propagated quantity is the residual p - 0.5. With the prior residual q
(+s for known Sybils, -s for known honest nodes, 0 elsewhere) each sweep
computes, from the previous sweep only,

    p(v) = clip(q(v) + sum over u in N(v) of 2 w(u, v) p(u), -0.5, 0.5)

where w(u, v) = theta - 0.5 for variant C and 1 / (2 d(u)) for variant D.
The sweep is a sparse matrix-vector product.
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from core import ScoreVector
from detectors.base import Detector
from detectors.base import DetectorError

logger = logging.getLogger(__name__)

VARIANTS = ('C', 'D')


@dataclass(frozen=True)
class ScarParams:
    """
    Parameters of SybilSCAR: 'variant' ('C' or 'D'), 'homophily' theta
    (variant C only), 'prior_strength' s, 'max_iterations' and the
    convergence 'tolerance' on the max residual change of a sweep.
    """

    variant: str = 'D'
    homophily: float = 0.8
    prior_strength: float = 0.48
    max_iterations: int = 100
    tolerance: float = 1e-5

    def __post_init__(self):
        object.__setattr__(self, 'variant', str(self.variant).upper())
        if self.variant not in VARIANTS:
            raise DetectorError('SybilSCAR variant must be C or D',
                                self.variant)
        if not 0.5 < self.homophily <= 1.0:
            raise DetectorError('Homophily must lie in (0.5, 1]',
                                self.homophily)
        if not 0.0 < self.prior_strength <= 0.5:
            raise DetectorError('Prior strength must lie in (0, 0.5]',
                                self.prior_strength)
        if self.max_iterations < 1:
            raise DetectorError('At least one sweep is needed',
                                self.max_iterations)


def propagation_matrix(g, params):
    """
    Sparse matrix M with M[v, u] = 2 w(u, v) for every edge, so that one
    sweep is q + M p.
    """
    adjacency = g.adjacency()
    if params.variant == 'C':
        return (2.0 * (params.homophily - 0.5)) * adjacency
    degrees = g.degrees.astype(np.float64)
    inverse = np.divide(1.0, degrees, out=np.zeros(g.n), where=degrees > 0)
    return (adjacency @ sp.diags(inverse)).tocsr()


def prior_residuals(split, prior_strength):
    residuals = np.zeros(split.regions.n)
    residuals[split.train_sybil] = prior_strength
    residuals[split.train_honest] = -prior_strength
    return residuals


def sybilscar(g, split, params=None):
    """
    Run SybilSCAR on 'g' with the known nodes 'split' and ScarParams
    'params'. Sweeps start from the prior residuals and stop once the max
    change drops below the tolerance or after max_iterations sweeps, in
    which case a warning is logged and the 'converged' diagnostic is False.
    The score of a node is its residual plus 0.5.
    """
    if params is None:
        params = ScarParams()
    matrix = propagation_matrix(g, params)
    prior = prior_residuals(split, params.prior_strength)

    residuals = prior
    iterations = 0
    delta = 0.0
    while iterations < params.max_iterations:
        updated = np.clip(prior + matrix @ residuals, -0.5, 0.5)
        delta = float(np.max(np.abs(updated - residuals))) if g.n else 0.0
        residuals = updated
        iterations += 1
        if delta < params.tolerance:
            break
    converged = delta < params.tolerance
    if converged:
        logger.debug('SybilSCAR-%s converged after %d sweeps (max change '
                     '%.3g)', params.variant, iterations, delta)
    else:
        logger.warning('SybilSCAR-%s did not converge in %d sweeps: max '
                       'change %.3g, tolerance %.3g', params.variant,
                       iterations, delta, params.tolerance)
    return ScoreVector(np.clip(residuals + 0.5, 0.0, 1.0),
                       f'SybilSCAR-{params.variant}',
                       {'iterations': iterations, 'max_delta': delta,
                        'converged': converged})


class SybilScar(Detector):
    """Detector wrapper around sybilscar(), configured by ScarParams."""

    def __init__(self, params=None):
        super().__init__()
        self.scar_params = params if params is not None else ScarParams()

    @property
    def name(self):
        return f'sybilscar-{self.scar_params.variant.lower()}'

    @property
    def label(self):
        return f'SybilSCAR-{self.scar_params.variant}'

    def detect(self, graph, split):
        return sybilscar(graph, split, self.scar_params)

    def params(self):
        return dict(self.scar_params.__dict__)
