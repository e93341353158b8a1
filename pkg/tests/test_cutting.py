import random

import pytest

from ofc2d.config import C_CONF, C_CUT
from ofc2d.counters import WorkCounters
from ofc2d.cutting import Cutting, cutting_build, cutting_locate, verify_cutting
from ofc2d.errors import InvalidParameter, PointOutsideBBox
from ofc2d.gen import random_tiling
from ofc2d.geometry import Point, Rect, Tiling


def make_source(n, seed, side=None):
    rng = random.Random(seed)
    if side is None:
        side = 1
        while side * side < 4 * n:
            side *= 2
    return random_tiling(Rect(-1, 0, side, 0, side), n, rng), rng


def test_coarsest_cutting():
    src, rng = make_source(64, 1)
    c = cutting_build(src, 1, rng)
    assert len(c.cells) == 1
    assert c.cells.rects[0].key() == src.bbox.key()
    assert sorted(c.conflicts[0]) == list(range(64))
    verify_cutting(c)


def test_finest_cutting():
    src, rng = make_source(128, 2)
    c = cutting_build(src, 128, rng)
    assert c.max_conflict() <= C_CONF
    verify_cutting(c)


def test_seed11_budgets():
    src, _ = make_source(1024, 11)
    c = cutting_build(src, 32, random.Random(11))
    assert len(c.cells) <= C_CUT * 32 == 128
    # Direct per-cell intersection recount, independent of the build path.
    for i, cell in enumerate(c.cells.rects):
        direct = [r.id for r in src.rects if r.intersects(cell)]
        assert sorted(c.conflicts[i]) == sorted(direct)
        assert len(direct) <= C_CONF * 1024 // 32
    verify_cutting(c)


def test_invalid_r():
    src, rng = make_source(16, 3)
    with pytest.raises(InvalidParameter):
        cutting_build(src, 0, rng)
    with pytest.raises(InvalidParameter):
        cutting_build(src, 17, rng)


@pytest.mark.parametrize("seed,n,r", [(4, 256, 8), (5, 256, 64), (6, 1024, 100), (7, 500, 22)])
def test_random_cuttings_verify(seed, n, r):
    src, rng = make_source(n, seed)
    c = cutting_build(src, r, rng)
    verify_cutting(c)


def test_locate_agrees_with_scan():
    src, rng = make_source(512, 8)
    c = cutting_build(src, 30, rng)
    side = src.bbox.xhi
    for _ in range(100):
        p = Point(rng.randrange(side), rng.randrange(side))
        ci, conf = cutting_locate(c, p)
        scan = [cell for cell in c.cells.rects if cell.contains(p)]
        assert len(scan) == 1 and scan[0].id == ci
        # The source rect containing p is in the located cell's conflicts.
        true_src = next(r.id for r in src.rects if r.contains(p))
        assert true_src in {src.rects[ri].id for ri in conf}


def test_locate_half_open_and_outside():
    bbox = Rect(-1, 0, 8, 0, 8)
    cells = Tiling(bbox, [Rect(0, 0, 4, 0, 8), Rect(1, 4, 8, 0, 8)])
    src = Tiling(bbox, [Rect(0, 0, 4, 0, 8), Rect(1, 4, 8, 0, 8)])
    c = Cutting(cells, [[0], [1]], src, 2)
    assert cutting_locate(c, Point(4, 3))[0] == 1
    with pytest.raises(PointOutsideBBox):
        cutting_locate(c, Point(8, 0))


def test_conflict_index_locates_source_rect():
    src, rng = make_source(256, 9)
    c = cutting_build(src, 16, rng)
    side = src.bbox.xhi
    for _ in range(100):
        p = Point(rng.randrange(side), rng.randrange(side))
        ci, _ = cutting_locate(c, p)
        w = WorkCounters()
        rid = c.conflict_index(ci).locate(p, w)
        assert rid == next(r.id for r in src.rects if r.contains(p))
        assert w.pl_comparisons > 0


def test_counters_logarithmic_in_cells():
    src, rng = make_source(2048, 10)
    c = cutting_build(src, 64, rng)
    side = src.bbox.xhi
    for _ in range(50):
        p = Point(rng.randrange(side), rng.randrange(side))
        w = WorkCounters()
        cutting_locate(c, p, w)
        assert w.pl_comparisons <= 4 * (C_CUT * 64).bit_length()
        assert w.cells_located == 1
