"""Structures for mid-height catalog trees.

RootLeafDS answers a root-to-leaf query with a single 3D stab: every vertex
gets a z range (leaves get unit ranges, parents the union), each cutting cell
is lifted to a 3D box over its owner's z range, and stabbing at the deepest
vertex's z value returns exactly one cell per path vertex.

MidTreeDS covers arbitrary mid-length paths: the tree is cut into a forest at
depth multiples of h2, each forest tree carries a halving recursion of
RootLeafDS instances, and a query splits at its apex into two descending
halves answered level by level (extended to a full root-to-leaf query at the
truncation level, with the extra answers discarded but counted).
"""

from __future__ import annotations

import math
import random

from ..cutting import cutting_build
from ..errors import (
    HeightOutOfRegime,
    InvalidHeights,
    NotRootToLeaf,
    PathOutOfRegime,
    VertexNotOnPath,
)
from ..stabbing import Point3, Rect3, Stab3D
from .model import CatalogTree, PathQuery, QueryAnswer, assign_z_ranges


class SubTree:
    """A connected slice of a catalog tree, exposing the same tree surface
    (vertices/root/children/depth/leaves/n) the structures consume."""

    __slots__ = ("root", "vertices", "children", "parent", "depth", "height",
                 "leaves", "n", "bbox")

    def __init__(self, tree, root, max_rel_depth=None):
        self.root = root
        self.vertices = {}
        self.children = {}
        self.parent = {root: None}
        self.depth = {root: 0}
        stack = [root]
        while stack:
            u = stack.pop()
            self.vertices[u] = tree.vertices[u]
            d = self.depth[u]
            if max_rel_depth is not None and d == max_rel_depth:
                self.children[u] = []
                continue
            kids = tree.children[u]
            self.children[u] = list(kids)
            for c in kids:
                self.parent[c] = u
                self.depth[c] = d + 1
                stack.append(c)
        self.height = max(self.depth.values())
        out = []
        stack = [root]
        while stack:
            u = stack.pop()
            if not self.children[u]:
                out.append(u)
            else:
                stack.extend(reversed(self.children[u]))
        self.leaves = out
        self.n = sum(len(v.tiling) for v in self.vertices.values())
        self.bbox = tree.vertices[root].tiling.bbox


class RootLeafDS:
    __slots__ = ("tree", "r", "H", "cuttings", "cell_owner", "z", "stab",
                 "stored_entries")

    def __init__(self, tree, rng: random.Random | None = None, strict: bool = False):
        n = max(2, tree.n)
        h = max(1, tree.height)
        logn = math.log2(n)
        if strict and tree.height > logn * logn / 2:
            raise HeightOutOfRegime(f"height {tree.height} > {logn * logn / 2:.1f}")
        if rng is None:
            rng = random.Random(0)
        self.tree = tree
        self.r = 2 ** math.ceil(logn / math.sqrt(h))
        denom = max(1.0, math.log2(max(2.0, n / self.r)))
        self.H = max(2, int(self.r / denom))
        self.z = assign_z_ranges(tree)
        self.cuttings = {}
        self.cell_owner = {}
        boxes = []
        gid = 0
        self.stored_entries = 0
        for vid, v in tree.vertices.items():
            ni = len(v.tiling)
            rho = max(1, min(ni, math.ceil(ni / self.r)))
            cut = cutting_build(v.tiling, rho, rng)
            self.cuttings[vid] = cut
            zlo, zhi = self.z[vid]
            for i, cell in enumerate(cut.cells.rects):
                boxes.append(Rect3(gid, cell.xlo, cell.xhi, cell.ylo, cell.yhi, zlo, zhi))
                self.cell_owner[gid] = (vid, i)
                gid += 1
            self.stored_entries += sum(len(c) for c in cut.conflicts)
        self.stab = Stab3D(boxes, self.H)
        self.stored_entries += self.stab.stored_entries

    def locate_along(self, q, end_vid, wanted, counters=None) -> dict:
        """Locate q at every ancestor of a leaf under ``end_vid``; keep the
        vertices in ``wanted``, discard (but still pay for) the rest."""
        z_q = self.z[end_vid][0]
        hits = self.stab.query(Point3(q.x, q.y, z_q), counters)
        if counters is not None:
            counters.structures_queried += 1
        out = {}
        for gid in hits:
            vid, ci = self.cell_owner[gid]
            rid = self.cuttings[vid].conflict_index(ci).locate(q, counters)
            if counters is not None:
                counters.cells_located += 1
            if vid in wanted:
                out[vid] = rid
        return out


def build_midtree_rootleaf(tree: CatalogTree, rng=None, strict=True) -> RootLeafDS:
    return RootLeafDS(tree, rng, strict)


def query_midtree_rootleaf(ds: RootLeafDS, q: PathQuery, counters=None) -> QueryAnswer:
    t = ds.tree
    path = q.path
    ok = (
        len(path) >= 1
        and path[0] == t.root
        and all(t.parent.get(b) == a for a, b in zip(path, path[1:]))
        and not t.children[path[-1]]
    )
    if not ok:
        raise NotRootToLeaf(f"{path} is not a root-to-leaf path")
    out = ds.locate_along(q.q, path[-1], set(path), counters)
    return QueryAnswer(out)


class _RecNode:
    """One node of the halving hierarchy over a forest tree."""

    __slots__ = ("sub", "rl", "cut", "top", "bottoms", "levels")

    def __init__(self, tree, root, h1, rng, max_rel_depth=None):
        self.sub = SubTree(tree, root, max_rel_depth)
        self.rl = RootLeafDS(self.sub, rng)
        if self.sub.height > h1:
            self.cut = math.ceil(self.sub.height / 2)
            self.top = _RecNode(self.sub, root, h1, rng, max_rel_depth=self.cut)
            self.bottoms = {}
            for vid, d in self.sub.depth.items():
                if d == self.cut and self.sub.children[vid]:
                    self.bottoms[vid] = _RecNode(self.sub, vid, h1, rng)
            self.levels = 1 + max(
                [self.top.levels] + [b.levels for b in self.bottoms.values()]
            )
        else:
            self.cut = None
            self.top = None
            self.bottoms = {}
            self.levels = 0

    def stored_entries(self):
        total = self.rl.stored_entries
        if self.top is not None:
            total += self.top.stored_entries()
        for b in self.bottoms.values():
            total += b.stored_entries()
        return total

    def answer_seg(self, q, seg, out, counters):
        """Answer a descending path ``seg`` inside this node's tree."""
        node = self
        while True:
            sub = node.sub
            a, b = seg[0], seg[-1]
            if sub.depth[a] == 0 and not sub.children[b]:
                # Complete root-to-leaf path: one exact query, nothing wasted.
                out.update(node.rl.locate_along(q, b, set(seg), counters))
                return
            if node.top is None:
                # Truncation level: extend to a full root-to-leaf query and
                # discard the answers outside seg.
                out.update(node.rl.locate_along(q, b, set(seg), counters))
                return
            cut = node.cut
            if sub.depth[b] <= cut:
                node = node.top
            elif sub.depth[a] >= cut:
                # Entirely below the cut: descend into the bottom tree
                # containing the segment (its root is on or above seg[0]).
                node = node.bottoms[node._bottom_root(a)]
            else:
                j = next(i for i, v in enumerate(seg) if sub.depth[v] == cut)
                node.top.answer_seg(q, seg[: j + 1], out, counters)
                seg = seg[j:]
                node = node.bottoms[seg[0]]

    def _bottom_root(self, v):
        sub = self.sub
        while sub.depth[v] > self.cut:
            v = sub.parent[v]
        return v


class MidTreeDS:
    __slots__ = ("tree", "h1", "h2", "forest", "forest_of", "levels",
                 "stored_entries")

    def __init__(self, tree: CatalogTree, h1: int, h2: int,
                 rng: random.Random | None = None):
        if not 1 <= h1 < h2:
            raise InvalidHeights(f"need 1 <= h1 < h2, got {h1}, {h2}")
        if rng is None:
            rng = random.Random(0)
        self.tree = tree
        self.h1 = h1
        self.h2 = h2
        roots = sorted(v for v, d in tree.depth.items() if d % h2 == 0)
        self.forest = {}
        for v in roots:
            limit = h2 - 1  # forest trees span depths [k*h2, (k+1)*h2 - 1]
            self.forest[v] = _RecNode(tree, v, h1, rng, max_rel_depth=limit)
        self.forest_of = {}
        for root in roots:
            for vid in self.forest[root].sub.vertices:
                self.forest_of[vid] = root
        self.levels = max(n.levels for n in self.forest.values())
        self.stored_entries = sum(n.stored_entries() for n in self.forest.values())

    def query(self, q: PathQuery, counters=None, enforce_regime=True) -> QueryAnswer:
        t = self.tree
        path = q.path
        for v in path:
            t.check_vertex(v)
        for a, b in zip(path, path[1:]):
            if b not in t.vertices[a].adjacency:
                raise VertexNotOnPath(f"{a} and {b} not adjacent")
        if enforce_regime and not (self.h1 <= len(path) <= self.h2):
            raise PathOutOfRegime(f"|path|={len(path)} outside [{self.h1}, {self.h2}]")
        k = min(range(len(path)), key=lambda i: t.depth[path[i]])
        halves = [list(reversed(path[: k + 1])), list(path[k + 1:])]
        out = {}
        for half in halves:
            if not half:
                continue
            # Split where the half crosses a forest boundary.
            segs = [[half[0]]]
            for v in half[1:]:
                if t.depth[v] % self.h2 == 0:
                    segs.append([v])
                else:
                    segs[-1].append(v)
            for seg in segs:
                self.forest[self.forest_of[seg[0]]].answer_seg(q.q, seg, out, counters)
        return QueryAnswer(out)


def build_midtree_general(tree: CatalogTree, h1: int, h2: int, rng=None) -> MidTreeDS:
    return MidTreeDS(tree, h1, h2, rng)


def query_midtree_general(ds: MidTreeDS, q: PathQuery, counters=None) -> QueryAnswer:
    return ds.query(q, counters)
