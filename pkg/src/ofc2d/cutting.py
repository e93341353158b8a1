"""Coarse covers with bounded conflict lists over a rectangle tiling.

``cutting_build(source, r)`` returns ~r cells tiling the source bounding box
such that each cell meets at most ``C_CONF * n / r`` source rects.  The
construction samples source rects, trapezoidal-decomposes their merged edge
set, splits any over-full cell at a median conflict edge, then verifies both
budgets and retries with fresh randomness if they fail.
"""

from __future__ import annotations

import bisect
import random

from .config import C_CONF, C_CUT, CUTTING_MAX_RETRIES, SAMPLE_RHO
from .errors import InvalidParameter, RetryExhausted
from .geometry import (
    HORIZONTAL,
    VERTICAL,
    Rect,
    Segment,
    SlabIndex,
    Tiling,
    trapezoidal_decompose,
    validate_tiling,
)


def _merge_spans(spans):
    spans.sort()
    out = []
    lo, hi = spans[0]
    for a, b in spans[1:]:
        if a <= hi:
            hi = max(hi, b)
        else:
            out.append((lo, hi))
            lo, hi = a, b
    out.append((lo, hi))
    return out


def _merged_edge_segments(rects, bbox):
    """Boundary edges of disjoint rects as a valid orthogonal subdivision.

    Collinear pieces are merged per line; merging can make two segments cross
    at a four-corner meeting point, so each merged segment is re-split at
    every such crossing (the point is a genuine subdivision vertex).
    """
    vlines, hlines = {}, {}
    for r in rects:
        vlines.setdefault(r.xlo, []).append((r.ylo, r.yhi))
        vlines.setdefault(r.xhi, []).append((r.ylo, r.yhi))
        hlines.setdefault(r.ylo, []).append((r.xlo, r.xhi))
        hlines.setdefault(r.yhi, []).append((r.xlo, r.xhi))
    hs = []  # (y, xlo, xhi)
    vs = []  # (x, ylo, yhi)
    for x, spans in vlines.items():
        vs.extend((x, lo, hi) for lo, hi in _merge_spans(spans))
    for y, spans in hlines.items():
        hs.extend((y, lo, hi) for lo, hi in _merge_spans(spans))
    hs.sort()
    hys = [h[0] for h in hs]
    hsplit = {}
    vsplit = {}
    for vi, (x, ylo, yhi) in enumerate(vs):
        k0 = bisect.bisect_right(hys, ylo)
        k1 = bisect.bisect_left(hys, yhi)
        for k in range(k0, k1):
            y, xlo, xhi = hs[k]
            if xlo < x < xhi:
                vsplit.setdefault(vi, []).append(y)
                hsplit.setdefault(k, []).append(x)
    segs = []
    for axis, items, splits in ((VERTICAL, vs, vsplit), (HORIZONTAL, hs, hsplit)):
        for i, (fixed, lo, hi) in enumerate(items):
            cuts = [lo] + sorted(splits.get(i, ())) + [hi]
            for a, b in zip(cuts, cuts[1:]):
                segs.append(Segment(axis, fixed, a, b))
    return segs


def _conflicts_for_cells(cells, source_rects):
    """Per-cell list of source rect indices intersecting the cell.

    Cells must tile the bbox; each slab's cells partition y, so the rects
    meeting a slab form a contiguous run found by binary search.
    """
    xs = sorted({x for c in cells for x in (c.xlo, c.xhi)})
    nslab = len(xs) - 1
    slab_cells = [[] for _ in range(nslab)]
    for ci, c in enumerate(cells):
        i0 = bisect.bisect_left(xs, c.xlo)
        i1 = bisect.bisect_left(xs, c.xhi)
        for i in range(i0, i1):
            slab_cells[i].append((c.ylo, ci))
    for b in slab_cells:
        b.sort()
    slab_ylos = [[t[0] for t in b] for b in slab_cells]
    conflicts = [[] for _ in cells]
    for ri, r in enumerate(source_rects):
        i0 = bisect.bisect_right(xs, r.xlo) - 1
        i1 = bisect.bisect_left(xs, r.xhi)
        for i in range(max(i0, 0), min(i1, nslab)):
            ylos = slab_ylos[i]
            k0 = max(bisect.bisect_right(ylos, r.ylo) - 1, 0)
            k1 = bisect.bisect_left(ylos, r.yhi)
            for k in range(k0, k1):
                ci = slab_cells[i][k][1]
                lst = conflicts[ci]
                if not lst or lst[-1] != ri:
                    lst.append(ri)
    return conflicts


def _split_overfull(cells_conf, budget, source_rects):
    """Split any cell with more than ``budget`` conflicts at the median
    interior conflict-edge coordinate until every cell fits."""
    out = []
    stack = list(cells_conf)
    while stack:
        key, conf = stack.pop()
        if len(conf) <= budget:
            out.append((key, conf))
            continue
        xlo, xhi, ylo, yhi = key
        xcand, ycand = [], []
        for ri in conf:
            r = source_rects[ri]
            for x in (r.xlo, r.xhi):
                if xlo < x < xhi:
                    xcand.append(x)
            for y in (r.ylo, r.yhi):
                if ylo < y < yhi:
                    ycand.append(y)
        # No interior edge => every conflict rect covers the whole cell, and
        # disjointness caps that at one rect, contradicting len > budget.
        assert xcand or ycand, "over-full cell with no interior conflict edges"
        if len(xcand) >= len(ycand):
            xcand.sort()
            c = xcand[len(xcand) // 2]
            halves = ((xlo, c, ylo, yhi), (c, xhi, ylo, yhi))
        else:
            ycand.sort()
            c = ycand[len(ycand) // 2]
            halves = ((xlo, xhi, ylo, c), (xlo, xhi, c, yhi))
        for hx0, hx1, hy0, hy1 in halves:
            sub = [
                ri
                for ri in conf
                if source_rects[ri].xlo < hx1
                and hx0 < source_rects[ri].xhi
                and source_rects[ri].ylo < hy1
                and hy0 < source_rects[ri].yhi
            ]
            stack.append(((hx0, hx1, hy0, hy1), sub))
    return out


class ConflictIndex:
    """Point location over one cell's conflict rects (clipped to the cell)."""

    __slots__ = ("index",)

    def __init__(self, cell: Rect, conflict_rects):
        clipped = [
            Rect(
                r.id,
                max(r.xlo, cell.xlo),
                min(r.xhi, cell.xhi),
                max(r.ylo, cell.ylo),
                min(r.yhi, cell.yhi),
            )
            for r in conflict_rects
        ]
        self.index = SlabIndex(cell, clipped)

    def locate(self, p, counters=None) -> int:
        return self.index.locate(p, counters).id


class Cutting:
    """Cells tiling the source bbox + per-cell conflict lists of source ids.

    Conflict-list point-location indexes are built lazily per cell and
    cached; ``conflicts[i]`` parallels ``cells.rects[i]``.
    """

    __slots__ = ("cells", "conflicts", "source", "source_size", "target", "_ci")

    def __init__(self, cells: Tiling, conflicts, source: Tiling, target: int):
        self.cells = cells
        self.conflicts = conflicts
        self.source = source
        self.source_size = len(source)
        self.target = target
        self._ci = {}

    def conflict_rects(self, cell_idx):
        return [self.source.rects[ri] for ri in self.conflicts[cell_idx]]

    def conflict_index(self, cell_idx) -> ConflictIndex:
        ci = self._ci.get(cell_idx)
        if ci is None:
            ci = ConflictIndex(self.cells.rects[cell_idx], self.conflict_rects(cell_idx))
            self._ci[cell_idx] = ci
        return ci

    def max_conflict(self):
        return max((len(c) for c in self.conflicts), default=0)


def verify_cutting(c: Cutting, check_coverage=True):
    """The post-build verification pass; raises ValueError on any violation."""
    validate_tiling(c.cells)
    n, r = c.source_size, c.target
    if len(c.cells) > C_CUT * r:
        raise ValueError(f"{len(c.cells)} cells exceeds budget {C_CUT * r}")
    budget = C_CONF * n / r
    if c.max_conflict() > budget:
        raise ValueError(f"conflict list {c.max_conflict()} exceeds budget {budget}")
    if check_coverage:
        for i, cell in enumerate(c.cells.rects):
            covered = 0
            for ri in c.conflicts[i]:
                s = c.source.rects[ri]
                w = min(s.xhi, cell.xhi) - max(s.xlo, cell.xlo)
                h = min(s.yhi, cell.yhi) - max(s.ylo, cell.ylo)
                if w > 0 and h > 0:
                    covered += w * h
            if covered != cell.area:
                raise ValueError(f"cell {i} not exactly covered by its conflicts")


def cutting_build(source: Tiling, r: int, rng: random.Random | None = None) -> Cutting:
    n = len(source)
    if not 1 <= r <= n:
        raise InvalidParameter(f"r={r} outside [1, {n}]")
    if rng is None:
        rng = random.Random(0)
    bbox = source.bbox
    if r == 1:
        cells = Tiling(bbox, [Rect(0, bbox.xlo, bbox.xhi, bbox.ylo, bbox.yhi)])
        return Cutting(cells, [list(range(n))], source, r)
    p = min(1.0, SAMPLE_RHO * r / n)
    budget = C_CONF * n // r
    for _ in range(CUTTING_MAX_RETRIES):
        sampled = [rect for rect in source.rects if rng.random() < p]
        segs = _merged_edge_segments(sampled, bbox)
        coarse = trapezoidal_decompose(bbox, segs)
        conf = _conflicts_for_cells(coarse.rects, source.rects)
        pairs = _split_overfull(
            [(c.key(), cf) for c, cf in zip(coarse.rects, conf)], budget, source.rects
        )
        if len(pairs) > C_CUT * r:
            continue
        pairs.sort(key=lambda t: t[0])
        cells = Tiling(bbox, [Rect(i, *k) for i, (k, _) in enumerate(pairs)])
        cut = Cutting(cells, [cf for _, cf in pairs], source, r)
        try:
            verify_cutting(cut, check_coverage=False)
        except ValueError:
            continue
        return cut
    raise RetryExhausted(f"cutting r={r} failed {CUTTING_MAX_RETRIES} attempts")


def cutting_locate(c: Cutting, p, counters=None):
    """The unique cell containing p: returns (cell index, conflict id list)."""
    cell = c.cells.index().locate(p, counters)
    if counters is not None:
        counters.cells_located += 1
    return cell.id, c.conflicts[cell.id]
