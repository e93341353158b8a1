"""Regime dispatcher for arbitrary catalog trees.

Builds the short-path, mid-height (bootstrapped), and long-path structures
once each, and routes a query by path length: short chunked queries up to
(log n)/2, the bootstrapped mid structure up to (log² n)/2, heavy-path
composition beyond that.
"""

from __future__ import annotations

import math
import random

from .boot import BootstrappedDS
from .long_path import LongPathDS
from .model import CatalogTree, PathQuery, QueryAnswer
from .short_tree import ShortTreeDS

SHORT, MID, LONG = "short", "mid", "long"


class TreeDS:
    __slots__ = ("tree", "t1", "t2", "short", "mid", "long", "stored_entries")

    def __init__(self, tree: CatalogTree, rounds: int = 1,
                 rng: random.Random | None = None):
        if rng is None:
            rng = random.Random(0)
        n = max(2, tree.n)
        logn = math.log2(n)
        self.tree = tree
        self.t1 = math.ceil(logn / 2)
        self.t2 = math.ceil(logn * logn / 2)
        self.short = ShortTreeDS(tree, rng, strict=False)
        self.mid = BootstrappedDS(tree, rounds, rng, h1=self.t1, h2=self.t2)
        self.long = LongPathDS(tree)
        self.stored_entries = (
            self.short.stored_entries
            + self.mid.stored_entries
            + self.long.stored_entries
        )

    def regime(self, path_len: int) -> str:
        if path_len <= self.t1:
            return SHORT
        if path_len <= self.t2:
            return MID
        return LONG

    def query(self, q: PathQuery, counters=None, regime=None) -> QueryAnswer:
        r = regime or self.regime(len(q.path))
        if r == SHORT:
            return self.short.query(q, counters)
        if r == MID:
            return self.mid.query(q, counters, enforce_regime=False)
        return self.long.query(q, counters, strict=False)


def build_tree(tree: CatalogTree, rounds: int = 1, rng=None) -> TreeDS:
    return TreeDS(tree, rounds, rng)


def query_tree(ds: TreeDS, q: PathQuery, counters=None) -> QueryAnswer:
    return ds.query(q, counters)
