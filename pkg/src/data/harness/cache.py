"""
Module containing the artifact cache of the harness.

Work items of one experiment often ask for the same dataset (e.g. every seed
of a Facebook experiment reads the same edge list). Loaded artifacts are
cached in an OrderedDict with size core.vars.CACHE_SIZE; the data is stored
from older (first in dict) to newer (last in dict).

Cached objects are never modified by their users (Graphs are read only), so
the cache hands out the objects themselves. The cache lives in the memory of
a single process: every worker of a parallel run has its own.
"""
from collections import OrderedDict

import core.vars as lvars
from dataio.edgelist import load_edge_list


class ArtifactCache:
    """Static class that handles the artifact cache"""

    cache = OrderedDict()

    @classmethod
    def extract(cls, key):
        """Get the artifact stored under 'key' and mark it as the newest"""
        data = cls.cache[key]
        cls.cache.move_to_end(key)
        return data

    @classmethod
    def add(cls, key, data):
        """Add 'data' with key 'key' to the cache and trim it"""
        cls.cache[key] = data
        cls.trim()

    @classmethod
    def trim(cls):
        """Remove items from older to newer until the cache fits CACHE_SIZE"""
        while len(cls.cache) > max(lvars.CACHE_SIZE, 0):
            cls.cache.popitem(last=False)

    @classmethod
    def clear(cls):
        cls.cache.clear()

    @classmethod
    def get(cls, key, build):
        """
        Return the artifact under 'key', calling 'build()' and storing its
        result when it is not cached yet.
        """
        if key in cls.cache:
            return cls.extract(key)
        data = build()
        cls.add(key, data)
        return data


def cached_edge_list(path, direction='union', id_policy='dense'):
    """
    load_edge_list() through the ArtifactCache. The key is the resolved path
    with both policies, so the same file read as 'union' and 'mutual' is
    cached twice.
    """
    key = f'edges:{path}:{direction}:{id_policy}'
    return ArtifactCache.get(
        key, lambda: load_edge_list(path, direction, id_policy))


def cached_region_loader(path, direction):
    """Region loader for RegionModel.build() backed by the cache"""
    return cached_edge_list(path, direction)[0]
