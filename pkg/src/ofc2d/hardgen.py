"""Adversarial catalog-tree instances with exact dyadic geometry.

Both generators realize the same scheme: a family of 3D box shapes, one per
tree layer, where every shape tiles the unit cube with isometric axis-aligned
copies.  Slicing a shape's tiling by its z-grid and projecting each slab to
the xy-plane yields the 2D tiling of one tree vertex, so a root-to-leaf
query hits exactly one rectangle per layer while any two boxes of different
shapes overlap in a provably tiny volume.  All coordinates are dyadic; the
unit square is scaled to an integer grid so the 2D side stays exact, and the
witness keeps the 3D boxes as rationals for exact volume arithmetic.

Shape for class i, group j: width 1/K^j, height K^j * 2^e * V, depth 1/2^e
with K = 2^r and V dyadic.  The short variant uses e = i*r + j on a balanced
binary tree; the mid variant freezes e at i*r + r past group r, which turns
the corresponding tree layers unary (branching runs of length r alternating
with unary runs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog.model import CatalogTree, CatalogVertex
from .errors import InfeasibleParams
from .geometry import Rect, Tiling


@dataclass(frozen=True)
class LBParams:
    n: int
    h: int
    r: int
    K: int
    V: Fraction
    regime: str  # "short" | "mid"


@dataclass
class LBWitness:
    params: LBParams
    t: int  # designed number of containing boxes per lifted query point
    scale: int  # 2D integer grid side (the unit square times ``scale``)
    # rect id -> (x0, x1, y0, y1, z0, z1) in the unit cube, all Fractions
    boxes: dict = field(default_factory=dict)
    shape: dict = field(default_factory=dict)  # rect id -> (class, group, layer)
    vertex_of: dict = field(default_factory=dict)  # rect id -> tree vertex id
    zrange: dict = field(default_factory=dict)  # vertex id -> (z0, z1)

    def lift(self, q, vid):
        """Unit-cube point for integer query point ``q`` at vertex ``vid``,
        offset to half-grid so it avoids all dyadic boundaries."""
        z0, z1 = self.zrange[vid]
        s = 2 * self.scale
        return (Fraction(2 * q.x + 1, s), Fraction(2 * q.y + 1, s),
                (z0 + z1) / 2)

    def containing(self, p):
        fx, fy, fz = p
        return [rid for rid, (x0, x1, y0, y1, z0, z1) in self.boxes.items()
                if x0 <= fx < x1 and y0 <= fy < y1 and z0 <= fz < z1]


def box_intersection_volume(b1, b2) -> Fraction:
    v = Fraction(1)
    for k in range(3):
        lo = max(b1[2 * k], b2[2 * k])
        hi = min(b1[2 * k + 1], b2[2 * k + 1])
        if hi <= lo:
            return Fraction(0)
        v *= hi - lo
    return v


def _layer_plan_short(n, h, logn):
    r = max(1, math.ceil(math.sqrt(logn) / 4))
    if h % r:
        raise InfeasibleParams(f"r={r} must divide h={h}")
    K = 2 ** r
    # Every layer branches: depth exponent e equals the layer index.
    layers = [(l // r, l % r, l, r * (l % r)) for l in range(h)]
    return r, K, layers


def _layer_plan_mid(n, h, logn):
    b = math.ceil(math.sqrt(h))
    r = max(1, math.ceil(logn / (4 * b)))
    c = max(1, b // 2)
    K = 2 ** r
    g = r + b  # groups per class: r branching, b unary
    layers = []
    for l in range(c * g):
        i, j = divmod(l, g)
        layers.append((i, j, i * r + min(j, r), r * j))
    return r, K, layers


def _generate(n, h, regime):
    if n < 4:
        raise InfeasibleParams("n must be at least 4")
    logn = math.log2(n)
    if regime == "short":
        if not (math.sqrt(logn) <= h <= logn / 2):
            raise InfeasibleParams(f"short regime needs sqrt(log n) <= h <= log(n)/2, got h={h}")
        r, K, layers = _layer_plan_short(n, h, logn)
    else:
        if not (logn / 2 < h <= logn * logn / 2):
            raise InfeasibleParams(f"mid regime needs log(n)/2 < h <= log2(n)^2/2, got h={h}")
        r, K, layers = _layer_plan_mid(n, h, logn)
    t = len(layers)
    Lv = math.ceil(math.log2(n / t))
    V = Fraction(1, 2 ** Lv)
    # No side may exceed the unit cube: the tallest box is in the last layer.
    for i, j, e, jx in layers:
        if Fraction(K) ** j * 2 ** e * V > 1:
            raise InfeasibleParams(
                f"height K^{j} * 2^{e} * V = {Fraction(K)**j * 2**e * V} > 1")
        if e > Lv:
            raise InfeasibleParams(f"depth 1/2^{e} below grid resolution 2^-{Lv}")

    params = LBParams(n, h, r, K, V, regime)
    wit = LBWitness(params, t, 2 ** Lv)
    scale = 2 ** Lv
    bbox = Rect(-1, 0, scale, 0, scale)

    vertices = {}
    adjacency = {}
    wit.zrange = {}
    layer_vertices = []
    next_vid = 0
    next_rid = 0
    for l, (i, j, e, jx) in enumerate(layers):
        width = 2 ** e  # tree vertices in this layer = z-slabs of the shape
        xcount = 2 ** jx
        ycount = 2 ** (Lv - jx - e)
        assert xcount * ycount * width == 2 ** Lv
        cw = scale // xcount
        ch = 2 ** (jx + e)
        row = []
        for k in range(width):
            vid = next_vid
            next_vid += 1
            rects = []
            z0, z1 = Fraction(k, width), Fraction(k + 1, width)
            for b_ in range(ycount):
                for a in range(xcount):
                    rid = next_rid
                    next_rid += 1
                    rects.append(Rect(rid, a * cw, (a + 1) * cw,
                                      b_ * ch, (b_ + 1) * ch))
                    wit.boxes[rid] = (
                        Fraction(a * cw, scale), Fraction((a + 1) * cw, scale),
                        Fraction(b_ * ch, scale), Fraction((b_ + 1) * ch, scale),
                        z0, z1)
                    wit.shape[rid] = (i, j, l)
                    wit.vertex_of[rid] = vid
            rects.sort(key=lambda rc: (rc.xlo, rc.ylo))
            vertices[vid] = (Tiling(bbox, rects))
            adjacency[vid] = []
            wit.zrange[vid] = (z0, z1)
            row.append(vid)
        if l > 0:
            prev = layer_vertices[-1]
            step = width // len(prev)  # 1 (unary) or 2 (branching)
            for ci, vid in enumerate(row):
                p = prev[ci // step]
                adjacency[p].append(vid)
                adjacency[vid].append(p)
        layer_vertices.append(row)

    cat = {vid: CatalogVertex(vid, tiling, tuple(sorted(adjacency[vid])))
           for vid, tiling in vertices.items()}
    tree = CatalogTree(cat, 0)
    return tree, wit


def gen_short_tree_instance(n, h):
    return _generate(n, h, "short")


def gen_mid_tree_instance(n, h):
    return _generate(n, h, "mid")
