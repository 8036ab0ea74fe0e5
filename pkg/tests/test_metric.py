from __future__ import annotations

import math
import random

import pytest

from reeb import ReebPoint, all_pairs_df, df, make_graph, subdivide
from reeb.errors import NonPositiveEpsilon
from reeb.gen import random_graph

from .oracles import brute_df


def test_identity_of_indiscernibles(loop):
    p = ReebPoint.on_arc(0, 0.25)
    assert df(loop, p, p).value == 0.0
    assert df(loop, ReebPoint.at_node(1), ReebPoint.at_node(1)).value == 0.0


def test_loop_opposite_points(loop):
    u, v = ReebPoint.on_arc(0, 0.3), ReebPoint.on_arc(1, 0.7)
    res = df(loop, u, v)
    assert res.value == 0.7
    assert res.witness[0] == u and res.witness[-1] == v


def test_loop_symmetric_level(loop):
    u, v = ReebPoint.on_arc(0, 0.5), ReebPoint.on_arc(1, 0.5)
    assert df(loop, u, v).value == 0.5


def test_all_pairs_trivial(loop):
    assert all_pairs_df(loop, [ReebPoint.at_node(0)]) == [[0.0]]
    p = ReebPoint.on_arc(0, 0.5)
    assert all_pairs_df(loop, [p, p]) == [[0.0, 0.0], [0.0, 0.0]]


def test_all_pairs_y_tree():
    y = make_graph({0: 0.0, 1: 1.0, 2: 2.0}, [(0, 0, 2), (1, 1, 2)])
    pts = [ReebPoint.at_node(i) for i in (0, 1, 2)]
    mat = all_pairs_df(y, pts)
    assert mat[0][1] == 2.0  # forced through the merge node
    assert mat[0][2] == 2.0 and mat[1][2] == 1.0


def test_disconnected_is_infinite():
    r = make_graph({0: 0.0, 1: 1.0, 2: 4.0, 3: 5.0}, [(0, 0, 1), (1, 2, 3)])
    res = df(r, ReebPoint.at_node(0), ReebPoint.at_node(3))
    assert math.isinf(res.value) and res.witness is None
    mat = all_pairs_df(r, [ReebPoint.at_node(0), ReebPoint.at_node(3)])
    assert math.isinf(mat[0][1])


def test_common_arc_distance_is_value_gap(rng):
    for _ in range(20):
        r = random_graph(rng, 7, 2)
        arcs = [a for a in r.arcs if r.arc_height(a) > 0]
        if not arcs:
            continue
        a = arcs[rng.randrange(len(arcs))]
        lo, hi = r.nodes[a.lo], r.nodes[a.hi]
        t1 = lo + (hi - lo) * 0.25
        t2 = lo + (hi - lo) * 0.75
        if not (lo < t1 < t2 < hi):
            continue
        u, v = ReebPoint.on_arc(a.id, t1), ReebPoint.on_arc(a.id, t2)
        assert df(r, u, v).value == t2 - t1


def test_metric_axioms_on_samples(rng):
    for _ in range(10):
        r = random_graph(rng, 8, 2)
        ids = sorted(r.nodes)
        pts = [ReebPoint.at_node(n) for n in ids]
        mat = all_pairs_df(r, pts)
        k = len(pts)
        for i in range(k):
            assert mat[i][i] == 0.0
            for j in range(k):
                assert mat[i][j] == mat[j][i] >= 0.0
                if i != j:
                    assert mat[i][j] > 0.0
                for l in range(k):
                    assert mat[i][j] <= mat[i][l] + mat[l][j]


def test_witness_attains_value(rng):
    for _ in range(20):
        r = random_graph(rng, 7, 2)
        ids = sorted(r.nodes)
        u = ReebPoint.at_node(ids[rng.randrange(len(ids))])
        v = ReebPoint.at_node(ids[rng.randrange(len(ids))])
        res = df(r, u, v)
        if res.witness is None:
            continue
        vals = [r.point_value(p) for p in res.witness if isinstance(p, ReebPoint)]
        assert max(vals) - min(vals) == res.value


@pytest.mark.parametrize("seed", range(30))
def test_oracle_small_graphs(seed):
    rng = random.Random(seed)
    r = random_graph(rng, rng.randrange(2, 7), rng.randrange(0, 3))
    if len(r.arcs) > 8:
        return
    ids = sorted(r.nodes)
    pts = [ReebPoint.at_node(n) for n in ids]
    arcs = [a for a in r.arcs if r.arc_height(a) > 0]
    for a in arcs[:2]:
        t = r.nodes[a.lo] + r.arc_height(a) / 2
        if r.nodes[a.lo] < t < r.nodes[a.hi]:
            pts.append(ReebPoint.on_arc(a.id, t))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            assert df(r, pts[i], pts[j]).value == brute_df(r, pts[i], pts[j])


# -- subdivision ---------------------------------------------------------------


def test_subdivide_exact_split(loop):
    s = subdivide(loop, 0.5)
    assert len(s.arcs) == 4
    assert all(s.arc_height(a) == 0.5 for a in s.arcs)
    assert s.regular == set(s.nodes) - {0, 1}


def test_subdivide_ceiling_rule(loop):
    s = subdivide(loop, 0.4)
    assert len(s.arcs) == 6
    assert all(s.arc_height(a) <= 0.4 for a in s.arcs)


def test_subdivide_noop_when_eps_large(loop):
    s = subdivide(loop, 2.0)
    assert s.structurally_equal(loop)


def test_subdivide_requires_positive_eps(loop):
    with pytest.raises(NonPositiveEpsilon):
        subdivide(loop, 0.0)


def test_subdivision_preserves_distances(rng):
    for _ in range(10):
        r = random_graph(rng, 6, 2)
        eps = [0.5, 0.25, 1.0][rng.randrange(3)]
        s = subdivide(r, eps)
        ids = sorted(r.nodes)
        pts = [ReebPoint.at_node(n) for n in ids]
        assert all_pairs_df(r, pts) == all_pairs_df(s, pts)
