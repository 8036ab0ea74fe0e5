from __future__ import annotations

import random

import pytest

from reeb import (Cycle, cycle_from_arcs, decompose, extended1, full_diagram,
                  is_alpha_matching, make_graph, ordinary0, thinnest_basis)
from reeb.errors import NotACycle
from reeb.gen import random_graph
from reeb.persistence import diagram_from_json, diagram_to_json

from .oracles import brute_ordinary0, cycle_range, greedy_thinnest

# -- ordinary pairs -------------------------------------------------------------


def test_y_tree_pairs(y_tree):
    d = ordinary0(y_tree, "up")
    assert d.pairs("ordinary0-up") == [(1.0, 2.0)]  # the higher minimum dies
    assert d.pairs("essential0") == [(0.0, 3.0)]


def test_merge_point_in_larger_graph(fig_graph):
    d = ordinary0(fig_graph, "up")
    assert (2.0, 6.0) in d.pairs("ordinary0-up")


def test_single_arc():
    r = make_graph({0: 0.0, 1: 1.0}, [(0, 0, 1)])
    d = ordinary0(r, "up")
    assert d.pairs("ordinary0-up") == []
    assert d.pairs("essential0") == [(0.0, 1.0)]


def test_down_direction_pairs_maxima():
    # mirror of the Y tree: maxima at 2 and 3 split at 1, rooted at 0
    r = make_graph({0: 0.0, 1: 1.0, 2: 2.0, 3: 3.0},
                   [(0, 0, 1), (1, 1, 2), (2, 1, 3)])
    d = ordinary0(r, "down")
    assert d.pairs("ordinary0-down") == [(2.0, 1.0)]  # birth above death


def test_duality_against_negated_graph(rng):
    for _ in range(15):
        r = random_graph(rng, 8, 2)
        neg = make_graph({n: -f for n, f in r.nodes.items()},
                         [(a.id, a.lo, a.hi) for a in r.arcs])
        down = ordinary0(r, "down").pairs("ordinary0-down")
        up_neg = ordinary0(neg, "up").pairs("ordinary0-up")
        assert sorted((-b, -d) for b, d in up_neg) == sorted(down)


@pytest.mark.parametrize("seed", range(25))
def test_ordinary0_rank_oracle(seed):
    rng = random.Random(seed)
    r = random_graph(rng, rng.randrange(2, 9), rng.randrange(0, 4))
    got = ordinary0(r, "up").pairs("ordinary0-up")
    assert got == brute_ordinary0(r)


def test_essential0_spans_components(rng):
    for _ in range(10):
        r = random_graph(rng, 7, 1)
        pts = ordinary0(r, "up").pairs("essential0")
        comps = r.components()
        assert len(pts) == len(comps)
        spans = sorted((min(r.nodes[n] for n in comp), max(r.nodes[n] for n in comp))
                       for comp in comps)
        assert pts == spans


# -- extended pairs and bases -----------------------------------------------------


def test_loop_extended(loop):
    assert extended1(loop).pairs() == [(0.0, 1.0)]


def test_fig_graph_extended_pair(fig_graph):
    assert extended1(fig_graph).pairs() == [(3.0, 8.0), (4.0, 9.0)]


def test_double_loop_matches_enumeration(double_loop):
    got = extended1(double_loop).pairs()
    oracle = sorted(cycle_range(double_loop, c) for c in greedy_thinnest(double_loop))
    assert got == oracle == [(3.0, 8.0), (4.0, 9.0)]


def test_tree_has_empty_basis(y_tree):
    assert len(thinnest_basis(y_tree)) == 0


def test_loop_basis(loop):
    b = thinnest_basis(loop)
    assert [sorted(c.arcs) for c in b.cycles] == [[0, 1]]
    assert b.cycles[0].range == (0.0, 1.0)


def test_fig_graph_canonical_basis(fig_graph):
    b = thinnest_basis(fig_graph)
    assert [sorted(c.arcs) for c in b.cycles] == [[2, 3, 4, 8], [4, 5, 6, 7, 8]]
    # the wide cycle through both loops is in the span but not the basis
    wide = cycle_from_arcs(fig_graph, {2, 3, 5, 6, 7})
    assert all(sorted(c.arcs) != sorted(wide.arcs) for c in b.cycles)


def test_basis_ranges_equal_extended(rng):
    for _ in range(25):
        r = random_graph(rng, rng.randrange(3, 10), rng.randrange(0, 5))
        assert thinnest_basis(r).ranges() == extended1(r).pairs()


def test_extended_count_formula(rng):
    for _ in range(25):
        r = random_graph(rng, rng.randrange(2, 10), rng.randrange(0, 5))
        pts = extended1(r).pairs()
        assert len(pts) == len(r.arcs) - len(r.nodes) + len(r.components())


@pytest.mark.parametrize("seed", range(40))
def test_extended_oracle(seed):
    rng = random.Random(seed)
    r = random_graph(rng, rng.randrange(2, 9), rng.randrange(0, 6))
    if len(r.arcs) > 14 or r.cycle_rank() > 6:
        return
    got = extended1(r).pairs()
    oracle = sorted(cycle_range(r, c) for c in greedy_thinnest(r))
    assert got == oracle


def test_virtual_split_invariance():
    # triple merge at one saddle vs. the same merges split across two nodes
    degen = make_graph({0: 0.0, 1: 1.0, 2: 2.0, 3: 4.0, 4: 6.0},
                       [(0, 0, 3), (1, 1, 3), (2, 2, 3), (3, 3, 4)])
    split = make_graph({0: 0.0, 1: 1.0, 2: 2.0, 3: 4.0, 30: 4.0, 4: 6.0},
                       [(0, 0, 3), (1, 1, 3), (2, 2, 30), (5, 3, 30), (3, 30, 4)])
    assert full_diagram(degen).pairs() == full_diagram(split).pairs()


# -- decomposition ---------------------------------------------------------------


def test_decompose_unit_vector(double_loop):
    b = thinnest_basis(double_loop)
    d = decompose(double_loop, b, b.cycles[0])
    assert d.coefficients == (1, 0) and d.dominating == 0


def test_decompose_empty_cycle(double_loop):
    b = thinnest_basis(double_loop)
    d = decompose(double_loop, b, Cycle(frozenset(), 0.0, 0.0))
    assert d.coefficients == (0, 0) and d.dominating is None


def test_decompose_wide_cycle(double_loop):
    b = thinnest_basis(double_loop)
    wide = cycle_from_arcs(double_loop, {0, 3, 4, 5, 6})
    d = decompose(double_loop, b, wide)
    assert d.coefficients == (1, 1)
    heights = [c.height for c in b.cycles]
    tallest = max(range(2), key=lambda i: (heights[i], -i))
    assert d.dominating == tallest


def test_decompose_rejects_boundaries(double_loop):
    b = thinnest_basis(double_loop)
    with pytest.raises(NotACycle):
        decompose(double_loop, b, Cycle(frozenset({0}), 3.0, 4.0))


def test_distinct_dominating_cycles_are_independent(rng):
    # combinations with pairwise distinct dominating cycles have full rank
    for _ in range(20):
        r = random_graph(rng, 8, 4)
        b = thinnest_basis(r)
        k = len(b)
        if k < 2:
            continue
        picks = []
        seen_dom = set()
        for _ in range(k):
            mask = rng.randrange(1, 2 ** k)
            arcs = frozenset()
            for i in range(k):
                if mask >> i & 1:
                    arcs = arcs ^ b.cycles[i].arcs
            if not arcs:
                continue
            c = cycle_from_arcs(r, arcs)
            dom = decompose(r, b, c).dominating
            if dom in seen_dom:
                continue
            seen_dom.add(dom)
            picks.append(c)
        if len(picks) < 2:
            continue
        pos = {a.id: i for i, a in enumerate(r.arcs)}
        pivots = {}
        rank = 0
        for c in picks:
            m = 0
            for a in c.arcs:
                m |= 1 << pos[a]
            while m:
                p = m & -m
                if p not in pivots:
                    pivots[p] = m
                    rank += 1
                    break
                m ^= pivots[p]
        assert rank == len(picks)


# -- alpha matching ----------------------------------------------------------------


def _basis_of(*ranges):
    return type(thinnest_basis(make_graph({0: 0.0, 1: 1.0}, [(0, 0, 1), (1, 0, 1)])))(
        tuple(Cycle(frozenset({i}), lo, hi) for i, (lo, hi) in enumerate(ranges)))


def test_alpha_matching_identity(double_loop):
    b = thinnest_basis(double_loop)
    assert is_alpha_matching(b, b, [(0, 0), (1, 1)], 0.0)


def test_alpha_matching_unpaired_stable_cycle():
    b1, b2 = _basis_of((0.0, 10.0)), _basis_of((0.0, 10.0))
    assert not is_alpha_matching(b1, b2, [], 1.0)


def test_alpha_matching_hausdorff_close():
    b1, b2 = _basis_of((0.0, 10.0)), _basis_of((0.5, 9.5))
    assert is_alpha_matching(b1, b2, [(0, 0)], 0.5)
    assert not is_alpha_matching(b1, b2, [(0, 0)], 0.25)


# -- serialization ------------------------------------------------------------------


def test_diagram_roundtrip(fig_graph):
    d = full_diagram(fig_graph)
    assert sorted(diagram_from_json(diagram_to_json(d)).points,
                  key=lambda p: (p.cls, p.birth, p.death)) == \
        sorted(d.points, key=lambda p: (p.cls, p.birth, p.death))
