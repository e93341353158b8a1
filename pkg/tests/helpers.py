"""Brute-force reference implementations used by the test suite.

Everything here is deliberately slow and simple, and shares no logic with the
library beyond raw coordinate arithmetic, so a library bug cannot hide in its
own reference.
"""

import random

from ofc2d.geometry import HORIZONTAL, VERTICAL, Rect, Segment


def _ray_stop_up(x, y, horiz, vert, yhi):
    """First blocking y strictly above (x, y): a horizontal whose closed x-span
    contains x, a collinear vertical endpoint, or the box top."""
    best = yhi
    for h in horiz:
        if h.lo <= x <= h.hi and y < h.fixed < best:
            best = h.fixed
    for v in vert:
        if v.fixed == x:
            for e in (v.lo, v.hi):
                if y < e < best:
                    best = e
    return best

def _ray_stop_down(x, y, horiz, vert, ylo):
    best = ylo
    for h in horiz:
        if h.lo <= x <= h.hi and best < h.fixed < y:
            best = h.fixed
    for v in vert:
        if v.fixed == x:
            for e in (v.lo, v.hi):
                if best < e < y:
                    best = e
    return best


def decompose_oracle(bbox, segments):
    """Independent trapezoidal decomposition: compute every vertical wall by
    brute-force ray shooting, chop the box into a micro-grid, and glue grid
    cells with union-find wherever no wall or segment separates them.

    Returns the set of (xlo, xhi, ylo, yhi) cell tuples.
    """
    horiz = [s for s in segments if s.axis == HORIZONTAL]
    vert = [s for s in segments if s.axis == VERTICAL]

    # Every subdivision vertex shoots a ray up and down.
    vertices = set()
    for h in horiz:
        vertices.add((h.lo, h.fixed))
        vertices.add((h.hi, h.fixed))
    for v in vert:
        vertices.add((v.fixed, v.lo))
        vertices.add((v.fixed, v.hi))

    walls = {}  # x -> list of (ylo, yhi) blocked intervals

    def add_wall(x, lo, hi):
        if lo < hi and bbox.xlo < x < bbox.xhi:
            walls.setdefault(x, []).append((lo, hi))

    for v in vert:
        add_wall(v.fixed, v.lo, v.hi)
    for (x, y) in vertices:
        add_wall(x, y, _ray_stop_up(x, y, horiz, vert, bbox.yhi))
        add_wall(x, _ray_stop_down(x, y, horiz, vert, bbox.ylo), y)

    xs = sorted({bbox.xlo, bbox.xhi} | set(walls))
    ys = {bbox.ylo, bbox.yhi}
    ys.update(h.fixed for h in horiz)
    for spans in walls.values():
        for lo, hi in spans:
            ys.add(lo)
            ys.add(hi)
    ys = sorted(ys)

    nx, ny = len(xs) - 1, len(ys) - 1
    parent = list(range(nx * ny))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    def x_blocked(x, ylo, yhi):
        return any(lo <= ylo and yhi <= hi for lo, hi in walls.get(x, ()))

    def y_blocked(y, xlo, xhi):
        return any(h.fixed == y and h.lo <= xlo and xhi <= h.hi for h in horiz)

    for i in range(nx):
        for j in range(ny):
            c = i * ny + j
            if i + 1 < nx and not x_blocked(xs[i + 1], ys[j], ys[j + 1]):
                union(c, (i + 1) * ny + j)
            if j + 1 < ny and not y_blocked(ys[j + 1], xs[i], xs[i + 1]):
                union(c, i * ny + j + 1)

    groups = {}
    for i in range(nx):
        for j in range(ny):
            groups.setdefault(find(i * ny + j), []).append((i, j))
    cells = set()
    for members in groups.values():
        xlo = min(xs[i] for i, _ in members)
        xhi = max(xs[i + 1] for i, _ in members)
        ylo = min(ys[j] for _, j in members)
        yhi = max(ys[j + 1] for _, j in members)
        area = sum((xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]) for i, j in members)
        assert area == (xhi - xlo) * (yhi - ylo), "oracle face is not a rectangle"
        cells.add((xlo, xhi, ylo, yhi))
    return cells


def _conflicts(a, b):
    """True if segments a, b properly cross or overlap collinearly."""
    if a.axis == b.axis:
        if a.fixed != b.fixed:
            return False
        return a.lo < b.hi and b.lo < a.hi
    h, v = (a, b) if a.axis == HORIZONTAL else (b, a)
    return h.lo < v.fixed < h.hi and v.lo < h.fixed < v.hi


def random_segments(bbox, count, rng: random.Random, max_tries=10000):
    """Random valid orthogonal subdivision: axis-aligned segments inside bbox
    meeting only at endpoints (generated by rejection sampling)."""
    out = []
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        if rng.random() < 0.5:
            y = rng.randint(bbox.ylo, bbox.yhi)
            a = rng.randint(bbox.xlo, bbox.xhi - 1)
            b = rng.randint(a + 1, bbox.xhi)
            s = Segment(HORIZONTAL, y, a, b)
        else:
            x = rng.randint(bbox.xlo, bbox.xhi)
            a = rng.randint(bbox.ylo, bbox.yhi - 1)
            b = rng.randint(a + 1, bbox.yhi)
            s = Segment(VERTICAL, x, a, b)
        if all(not _conflicts(s, t) for t in out):
            out.append(s)
    if len(out) < count:
        raise RuntimeError("rejection sampling failed to fill the quota")
    return out


def stab_oracle_2d(rects, p):
    """Linear-scan containment set."""
    return {r.id for r in rects if r.xlo <= p.x < r.xhi and r.ylo <= p.y < r.yhi}


def stab_oracle_3d(rects, p):
    return {
        r.id
        for r in rects
        if r.xlo <= p.x < r.xhi
        and r.ylo <= p.y < r.yhi
        and r.zlo <= p.z < r.zhi
    }


def bbox_of(side):
    return Rect(-1, 0, side, 0, side)
