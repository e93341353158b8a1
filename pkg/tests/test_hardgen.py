import math
import random
from fractions import Fraction

import pytest

from ofc2d.errors import InfeasibleParams
from ofc2d.geometry import Point, validate_tiling
from ofc2d.hardgen import (
    box_intersection_volume,
    gen_mid_tree_instance,
    gen_short_tree_instance,
)
from ofc2d.oracle import oracle_query


def test_short_instance_shape_counts():
    tree, wit = gen_short_tree_instance(2 ** 16, 8)
    p = wit.params
    assert p.K == 2 ** p.r
    assert wit.t == 8
    # Every shape has volume V and tiles the cube, so each layer holds 1/V
    # boxes and the whole instance t/V.
    assert len(wit.boxes) == wit.t * (1 / p.V)
    assert tree.height == 7
    assert len(tree.leaves) == 2 ** 7


def test_short_tilings_all_valid():
    tree, _ = gen_short_tree_instance(2 ** 16, 8)
    for v in tree.vertices.values():
        validate_tiling(v.tiling)


def test_short_lifted_point_hits_exactly_h():
    tree, wit = gen_short_tree_instance(2 ** 14, 7)
    rng = random.Random(1)
    bbox = tree.bbox
    for _ in range(50):
        leaf = rng.choice(tree.leaves)
        q = Point(rng.randrange(bbox.xlo, bbox.xhi),
                  rng.randrange(bbox.ylo, bbox.yhi))
        hits = wit.containing(wit.lift(q, leaf))
        assert len(hits) == wit.t
        # One hit per layer of the root-to-leaf path, and they agree with
        # the 2D answers along the path.
        assert sorted(wit.shape[rid][2] for rid in hits) == list(range(wit.t))
        path = tree.path_between(tree.root, leaf)
        ans = oracle_query(tree, q, path)
        assert sorted(ans.by_vertex.values()) == sorted(hits)


def test_short_adjacent_group_intersection_exact():
    tree, wit = gen_short_tree_instance(2 ** 17, 8)
    p = wit.params
    assert p.r == 2  # two groups per class at this scale
    # Corner-anchored boxes of the same class, adjacent groups, intersect in
    # exactly V/(2K).
    origin = {}
    for rid, b in wit.boxes.items():
        i, j, _ = wit.shape[rid]
        if b[0] == 0 and b[2] == 0 and b[4] == 0:
            origin[(i, j)] = b
    for i in range(4):
        got = box_intersection_volume(origin[(i, 0)], origin[(i, 1)])
        assert got == p.V / (2 * p.K)


def test_short_pairwise_cap():
    tree, wit = gen_short_tree_instance(2 ** 12, 6)
    p = wit.params
    cap = p.V / 2 ** p.r
    rng = random.Random(2)
    ids = list(wit.boxes)
    for _ in range(300):
        a, b = rng.choice(ids), rng.choice(ids)
        if a == b:
            continue
        v = box_intersection_volume(wit.boxes[a], wit.boxes[b])
        if wit.shape[a][2] == wit.shape[b][2]:
            assert v == 0  # same shape: disjoint by construction
        else:
            assert v <= cap


def test_short_infeasible_params():
    with pytest.raises(InfeasibleParams):
        gen_short_tree_instance(2 ** 12, 60)  # way past log(n)/2
    with pytest.raises(InfeasibleParams):
        gen_short_tree_instance(2 ** 12, 1)  # below sqrt(log n)


def test_mid_instance_structure():
    tree, wit = gen_mid_tree_instance(2 ** 16, 40)
    p = wit.params
    assert p.regime == "mid"
    # Branching runs of length r alternate with unary runs; each leaf path
    # has exactly t vertices.
    for leaf in tree.leaves:
        assert len(tree.path_between(tree.root, leaf)) == wit.t
    kids = [len(tree.children[v]) for v in tree.vertices if tree.children[v]]
    assert set(kids) == {1, 2}
    for v in tree.vertices.values():
        validate_tiling(v.tiling)


def test_mid_lifted_point_hits_exactly_t():
    tree, wit = gen_mid_tree_instance(2 ** 16, 40)
    rng = random.Random(3)
    bbox = tree.bbox
    for _ in range(50):
        leaf = rng.choice(tree.leaves)
        q = Point(rng.randrange(bbox.xlo, bbox.xhi),
                  rng.randrange(bbox.ylo, bbox.yhi))
        hits = wit.containing(wit.lift(q, leaf))
        assert len(hits) == wit.t
        path = tree.path_between(tree.root, leaf)
        ans = oracle_query(tree, q, path)
        assert sorted(ans.by_vertex.values()) == sorted(hits)


def test_mid_past_threshold_intersection_exact():
    tree, wit = gen_mid_tree_instance(2 ** 16, 40)
    p = wit.params
    origin = {}
    for rid, b in wit.boxes.items():
        i, j, _ = wit.shape[rid]
        if b[0] == 0 and b[2] == 0 and b[4] == 0:
            origin[(i, j)] = b
    # Same class, adjacent groups past the branching threshold (depth equal):
    # exactly V/K.
    got = box_intersection_volume(origin[(0, p.r)], origin[(0, p.r + 1)])
    assert got == p.V / p.K
    # Below the threshold the sharper V/(2K) bound holds when r >= 2;
    # at r = 1 the only sub-threshold pair straddles the branch point.
    if p.r >= 2:
        assert box_intersection_volume(origin[(0, 0)], origin[(0, 1)]) == \
            p.V / (2 * p.K)


def test_mid_pairwise_cap():
    tree, wit = gen_mid_tree_instance(2 ** 14, 30)
    p = wit.params
    cap = p.V / 2 ** p.r
    rng = random.Random(4)
    ids = list(wit.boxes)
    for _ in range(300):
        a, b = rng.choice(ids), rng.choice(ids)
        if a == b:
            continue
        v = box_intersection_volume(wit.boxes[a], wit.boxes[b])
        if wit.shape[a][2] == wit.shape[b][2]:
            assert v == 0
        else:
            assert v <= cap


def test_mid_infeasible_params():
    with pytest.raises(InfeasibleParams):
        gen_mid_tree_instance(2 ** 12, 5)  # at or below log(n)/2


def test_group_volume_sums_to_cube():
    _, wit = gen_short_tree_instance(2 ** 12, 6)
    per_layer = {}
    for rid, b in wit.boxes.items():
        l = wit.shape[rid][2]
        vol = (b[1] - b[0]) * (b[3] - b[2]) * (b[5] - b[4])
        per_layer[l] = per_layer.get(l, Fraction(0)) + vol
    assert all(v == 1 for v in per_layer.values())
