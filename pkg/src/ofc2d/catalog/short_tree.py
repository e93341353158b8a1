"""Query structure for shallow catalog trees.

Each vertex gets a coarse cutting with ~r² conflicts per cell; every simple
tree path of at most L = ceil(log2 r) vertices gets one 2D stabbing structure
over its members' cutting cells (built lazily on first use).  A query path is
chopped into such chunks, each answered by one stab plus one small
conflict-list point location per vertex.
"""

from __future__ import annotations

import math
import random

from ..cutting import cutting_build
from ..errors import HeightOutOfRegime, VertexNotOnPath
from ..geometry import Rect
from ..stabbing import Stab2D
from .model import CatalogTree, PathQuery, QueryAnswer


def enumerate_subpaths(tree: CatalogTree, max_len: int):
    """All simple paths with 1..max_len vertices, one canonical key each.

    A path is its apex (highest vertex) plus downward arms into at most two
    distinct child subtrees.
    """
    down = {}  # v -> list of downward vertex tuples starting at v, len <= max_len

    order = [tree.root]
    for u in order:
        order.extend(tree.children[u])
    for v in reversed(order):
        paths = [(v,)]
        for c in tree.children[v]:
            for p in down[c]:
                if 1 + len(p) <= max_len:
                    paths.append((v,) + p)
        down[v] = paths

    out = set()
    for v in order:
        arms = {}
        for c in tree.children[v]:
            arms[c] = [p for p in down[c] if len(p) < max_len]
        for c, ps in arms.items():
            for p in ps:
                out.add(_canon((v,) + p))
        kids = list(arms)
        for i in range(len(kids)):
            for j in range(i + 1, len(kids)):
                for p1 in arms[kids[i]]:
                    for p2 in arms[kids[j]]:
                        if len(p1) + len(p2) + 1 <= max_len:
                            out.add(_canon(tuple(reversed(p1)) + (v,) + p2))
        out.add((v,))
    return out


def _canon(seq):
    rev = tuple(reversed(seq))
    return seq if seq <= rev else rev


class ShortTreeDS:
    __slots__ = ("tree", "r", "L", "cuttings", "cell_rects", "cell_owner",
                 "subpaths", "_stabs", "stored_entries")

    def __init__(self, tree: CatalogTree, rng: random.Random | None = None,
                 strict: bool = False):
        n = max(2, tree.n)
        logn = math.log2(n)
        if strict and tree.height > logn / 2:
            raise HeightOutOfRegime(f"height {tree.height} > {logn / 2:.1f}")
        if rng is None:
            rng = random.Random(0)
        self.tree = tree
        self.r = 2 ** math.ceil(math.sqrt(logn))
        self.L = max(1, math.ceil(math.log2(self.r)))
        self.cuttings = {}
        self.cell_rects = {}  # vertex -> cells re-idd with global cell ids
        self.cell_owner = {}  # global cell id -> (vertex, local cell index)
        self.stored_entries = 0
        gid = 0
        for vid, v in tree.vertices.items():
            ni = len(v.tiling)
            rho = max(1, min(ni, math.ceil(ni / self.r ** 2)))
            cut = cutting_build(v.tiling, rho, rng)
            self.cuttings[vid] = cut
            rects = []
            for i, cell in enumerate(cut.cells.rects):
                rects.append(Rect(gid, cell.xlo, cell.xhi, cell.ylo, cell.yhi))
                self.cell_owner[gid] = (vid, i)
                gid += 1
            self.cell_rects[vid] = rects
            self.stored_entries += sum(len(c) for c in cut.conflicts)
        self.subpaths = enumerate_subpaths(tree, self.L)
        self._stabs = {}

    def _stab_for(self, key) -> Stab2D:
        s = self._stabs.get(key)
        if s is None:
            rects = [r for v in key for r in self.cell_rects[v]]
            s = Stab2D(rects)
            self._stabs[key] = s
            self.stored_entries += s.stored_entries
        return s

    def query(self, q: PathQuery, counters=None) -> QueryAnswer:
        path = q.path
        for v in path:
            self.tree.check_vertex(v)
        for a, b in zip(path, path[1:]):
            if b not in self.tree.vertices[a].adjacency:
                raise VertexNotOnPath(f"{a} and {b} not adjacent")
        out = {}
        for i in range(0, len(path), self.L):
            chunk = tuple(path[i:i + self.L])
            key = _canon(chunk)
            if key not in self.subpaths:
                raise VertexNotOnPath(f"chunk {chunk} is not a tree path")
            hits = self._stab_for(key).query(q.q, counters)
            if counters is not None:
                counters.structures_queried += 1
            for gid in hits:
                vid, ci = self.cell_owner[gid]
                out[vid] = self.cuttings[vid].conflict_index(ci).locate(q.q, counters)
                if counters is not None:
                    counters.cells_located += 1
        return QueryAnswer(out)


def build_short_tree(tree: CatalogTree, rng=None, strict=True) -> ShortTreeDS:
    return ShortTreeDS(tree, rng, strict)


def query_short_tree(ds: ShortTreeDS, q: PathQuery, counters=None) -> QueryAnswer:
    return ds.query(q, counters)
