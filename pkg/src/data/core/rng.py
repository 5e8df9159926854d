"""
Module containing the named random streams of the lab.

A run is identified by one master seed. Every consumer of randomness (region
synthesis, train split, attack placement, sampling, dropout...) derives its
own stream from the master seed and a list of names, so adding a consumer or
reordering calls never perturbs the numbers another consumer sees.
"""
import hashlib

import numpy as np


def _name_key(name):
    """Fold 'name' into a 32 bit integer that is stable across processes"""
    digest = hashlib.sha256(str(name).encode('utf-8')).digest()
    return int.from_bytes(digest[:4], 'little')


def derive_seed(seed, *names):
    """Return an integer seed derived from 'seed' and the stream 'names'"""
    entropy = [int(seed)] + [_name_key(name) for name in names]
    state = np.random.SeedSequence(entropy).generate_state(2, np.uint32)
    return int(state[0]) << 32 | int(state[1])


def derive_rng(seed, *names):
    """Return a numpy Generator for the stream 'names' of master 'seed'"""
    entropy = [int(seed)] + [_name_key(name) for name in names]
    return np.random.default_rng(np.random.SeedSequence(entropy))
