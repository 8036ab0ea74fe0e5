from __future__ import annotations

import random
from itertools import combinations

import pytest

from reeb import build_reeb, make_complex, tie_break
from reeb.errors import InvalidComplex
from reeb.gen import random_complex

from .oracles import brute_reeb, complex_level_count, graph_signature


def test_monotone_path_collapses():
    c = make_complex([(0, 0.0), (1, 1.0), (2, 2.0)], [(0, 1), (1, 2)])
    r = build_reeb(c)
    assert set(r.nodes) == {0, 2}
    assert [(a.lo, a.hi) for a in r.arcs] == [(0, 2)]


def test_hollow_triangle_is_a_loop():
    c = make_complex([(0, 0.0), (1, 1.0), (2, 2.0)], [(0, 1), (1, 2), (0, 2)])
    r = build_reeb(c)
    assert set(r.nodes) == {0, 2}
    assert sorted((a.lo, a.hi) for a in r.arcs) == [(0, 2), (0, 2)]
    assert r.cycle_rank() == 1


def test_filled_triangle_is_a_disk():
    c = make_complex([(0, 0.0), (1, 1.0), (2, 2.0)],
                     [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)])
    r = build_reeb(c)
    assert r.cycle_rank() == 0
    assert [(a.lo, a.hi) for a in r.arcs] == [(0, 2)]


def test_invalid_complex_raises():
    with pytest.raises(InvalidComplex):
        build_reeb(make_complex([(0, 0.0)], edges=[(0, 3)]))


def test_torus_has_one_visible_cycle():
    tris = [(i % 7, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    tris += [(i % 7, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    c = make_complex([(i, float(i)) for i in range(7)],
                     list(combinations(range(7), 2)), tris)
    r = build_reeb(c)
    assert r.cycle_rank() == 1
    assert len(r.components()) == 1


def test_components_preserved():
    c = make_complex([(0, 0.0), (1, 1.0), (2, 5.0), (3, 6.0)],
                     [(0, 1), (2, 3)])
    r = build_reeb(c)
    assert len(r.components()) == 2


def test_isolated_vertex():
    r = build_reeb(make_complex([(0, 1.5)]))
    assert set(r.nodes) == {0} and not r.arcs


def test_empty_complex():
    r = build_reeb(make_complex([]))
    assert not r.nodes and not r.arcs


def test_relabeling_invariance(rng):
    for _ in range(15):
        c = random_complex(rng, 9, 14, 4)
        vals = dict(c.vertices)
        ids = sorted(vals)
        # order-preserving relabel: stretch ids, keep their relative order
        relabel = {v: 3 * v + 1 for v in ids}
        c2 = make_complex([(relabel[v], f) for v, f in c.vertices],
                          [(relabel[a], relabel[b]) for a, b in c.edges],
                          [(relabel[a], relabel[b], relabel[t]) for a, b, t in c.triangles])
        r1, r2 = build_reeb(c), build_reeb(c2)
        nodes1, arcs1 = graph_signature(r1)
        nodes2, arcs2 = graph_signature(r2)
        assert {relabel[n]: f for n, f in nodes1.items()} == nodes2
        assert sorted((relabel[a], relabel[b]) for a, b in arcs1) == arcs2


def test_tree_complex_has_rank_zero(rng):
    for _ in range(20):
        n = rng.randrange(2, 10)
        vertices = [(i, rng.randrange(0, 50) / 4) for i in range(n)]
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        r = build_reeb(make_complex(vertices, edges))
        assert r.cycle_rank() == 0


def test_euler_formula(rng):
    for _ in range(25):
        c = random_complex(rng, rng.randrange(1, 12), 16, 6, tie_prob=0.2)
        r = build_reeb(c)
        assert r.cycle_rank() == len(r.arcs) - len(r.nodes) + len(r.components())


@pytest.mark.parametrize("seed", range(40))
def test_oracle_equivalence_small_complexes(seed):
    rng = random.Random(seed)
    c = random_complex(rng, rng.randrange(1, 13), rng.randrange(0, 20),
                       rng.randrange(0, 8), tie_prob=0.15 if seed % 3 == 0 else 0.0)
    r = build_reeb(c)
    nodes, arcs = brute_reeb(c)
    got_nodes, got_arcs = graph_signature(r)
    assert got_nodes == nodes
    assert got_arcs == arcs


@pytest.mark.parametrize("seed", range(12))
def test_level_counts_match_arc_crossings(seed):
    rng = random.Random(1000 + seed)
    c = random_complex(rng, rng.randrange(2, 11), rng.randrange(2, 16),
                       rng.randrange(0, 6))
    r = build_reeb(c)
    order = tie_break(c).order
    rank = {v: i for i, v in enumerate(order)}
    node_rank = {n: rank[n] for n in r.nodes}
    for i in range(len(order)):
        expected = complex_level_count(c, i, order)
        at_level = sum(1 for n in r.nodes if node_rank[n] == i)
        crossing = 0
        for a in r.arcs:
            if rank[a.lo] < i < rank[a.hi]:
                crossing += 1
        assert at_level + crossing == expected


def test_provenance_covers_all_vertices(rng):
    c = random_complex(rng, 10, 15, 5)
    r = build_reeb(c)
    assert set(r.provenance) == {v for v, _ in c.vertices}
    for v, f in c.vertices:
        p = r.provenance[v]
        if p.node is not None:
            assert r.nodes[p.node] == f
        else:
            assert p.t == f
