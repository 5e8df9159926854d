"""
Package containing the test suite, plus some helper functions that build
toy graphs and networks without going through files or configs.

Run it from the repository root with 'pytest' ('pytest -m "not slow"' skips
the desk scale runs).
"""
import numpy as np

from core import RegionLabels
from core import TrainSplit
from core import build_graph
from core import compose_regions
from synthesis import AttackConfig
from synthesis import RegionModel
from synthesis import SynthSpec
from synthesis import synthesize_network


def path_graph(n):
    """Path 0 - 1 - ... - n-1"""
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def two_triangles():
    """
    Two disjoint triangles: nodes 0-2 are honest and 3-5 Sybil. Return the
    graph and its RegionLabels.
    """
    return compose_regions(complete_graph(3), complete_graph(3))


def toy_split(regions, honest, sybil):
    return TrainSplit(regions, honest, sybil)


def labels_from(is_sybil):
    return RegionLabels(np.asarray(is_sybil, dtype=bool))


def make_spec(model='ba', n=100, m=3, p=0.8, edges_per_sybil=0.0,
              p_targeted=0.0, pdf=(1.0,), train_fraction=0.05, seed=42):
    """SynthSpec with the same region model on both sides"""
    region = RegionModel(model=model, n=n, m=m,
                         p=p if model == 'pl' else 0.0)
    return SynthSpec(region, region,
                     AttackConfig(edges_per_sybil, p_targeted, tuple(pdf)),
                     train_fraction, seed)


def make_network(**kwargs):
    """LabeledNetwork synthesized from make_spec(**kwargs)"""
    return synthesize_network(make_spec(**kwargs))


def write_text(path, text):
    path.write_text(text)
    return path
