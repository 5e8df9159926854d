"""
This module contains the random region generators: the Barabasi-Albert (BA)
model and the Holme-Kim power law (PL) model with tunable clustering.

Both grow a graph from a star seed on m+1 nodes. Every subsequent node adds
exactly m edges, so a generated region always has m(n - m) edges and, as each
new node links to the existing graph, is connected.
"""
import numpy as np

from core import build_graph
from core import LabError


class _Urn:
    """
    Preferential attachment urn: every edge endpoint is stored once, so a
    uniform draw from the urn picks a node with probability proportional to
    its degree.
    """

    def __init__(self, capacity):
        self.items = np.empty(capacity, dtype=np.int64)
        self.size = 0

    def extend(self, nodes):
        count = len(nodes)
        self.items[self.size:self.size + count] = nodes
        self.size += count

    def draw(self, rng, exclude):
        """Draw a node not contained in 'exclude', resampling duplicates"""
        while True:
            node = int(self.items[rng.integers(self.size)])
            if node not in exclude:
                return node


def _grow(n, m, p, rng):
    """
    Grow a graph on 'n' nodes where every new node attaches 'm' edges. With
    probability 'p' each edge after the first closes a triangle with the last
    preferentially attached target instead of attaching preferentially.
    """
    if not 1 <= m < n:
        raise SynthesisError('Growth models need 1 <= m < n', (n, m))
    if not 0.0 <= p <= 1.0:
        raise SynthesisError('Triad probability must lie in [0, 1]', p)

    edges = np.empty((m * (n - m), 2), dtype=np.int64)
    neighbors = [set() for _ in range(n)]
    urn = _Urn(2 * m * (n - m))

    count = 0
    for leaf in range(1, m + 1):
        edges[count] = (0, leaf)
        neighbors[0].add(leaf)
        neighbors[leaf].add(0)
        count += 1
    urn.extend([0] * m + list(range(1, m + 1)))

    for source in range(m + 1, n):
        linked = neighbors[source]
        hub = urn.draw(rng, linked)
        targets = [hub]
        linked.add(hub)
        while len(targets) < m:
            target = None
            if p > 0.0 and rng.random() < p:
                closing = [w for w in sorted(neighbors[hub])
                           if w != source and w not in linked]
                if closing:
                    target = closing[rng.integers(len(closing))]
            if target is None:
                target = urn.draw(rng, linked)
                hub = target
            targets.append(target)
            linked.add(target)
        for target in targets:
            neighbors[target].add(source)
            edges[count] = (source, target)
            count += 1
        urn.extend(targets + [source] * m)

    return build_graph(n, edges)


def generate_ba(n, m, rng):
    """
    Generate a Barabasi-Albert graph with 'n' nodes where every node after the
    star seed attaches 'm' edges by preferential attachment. 'rng' is a numpy
    Generator.
    """
    return _grow(n, m, 0.0, rng)


def generate_pl(n, m, p, rng):
    """
    Generate a Holme-Kim power law graph: like generate_ba(), but each of the
    m - 1 edges after a node's first one closes a triangle with probability
    'p'. With p = 0 the result is identical to generate_ba() for the same
    'rng' state.
    """
    return _grow(n, m, p, rng)


class SynthesisError(LabError):
    """Error raised when a network cannot be synthesized."""
