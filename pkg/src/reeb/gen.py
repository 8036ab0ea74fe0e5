"""Seeded random test-data generators.

Values are dyadic rationals (multiples of a power-of-two grid step), so
differences, halves and comparisons computed from them are exact in
binary floating point.  All generators are deterministic functions of
the supplied random.Random instance.
"""
from __future__ import annotations

import random

from .complexes import ScalarComplex, make_complex
from .graph import ReebGraph, normalized
from .persistence import PersistenceDiagram, DiagramPoint


def distinct_dyadics(rng: random.Random, count: int, span: int = None,
                     denom: int = 8) -> list[float]:
    """count distinct multiples of 1/denom inside [0, span]."""
    if span is None:
        span = max(2 * count, 8)
    pool = rng.sample(range(span * denom + 1), count)
    return [p / denom for p in pool]


def random_tree(rng: random.Random, n_nodes: int, denom: int = 8) -> ReebGraph:
    """Random tree with distinct node values; regular points suppressed,
    so the result may have fewer nodes than requested."""
    n_nodes = max(2, n_nodes)
    vals = sorted(distinct_dyadics(rng, n_nodes, denom=denom))
    nodes = {i: vals[i] for i in range(n_nodes)}
    arcs = []
    for i in range(1, n_nodes):
        parent = rng.randrange(i)
        arcs.append((i - 1, parent, i))
    return normalized(nodes, arcs)


def random_graph(rng: random.Random, n_nodes: int, extra_arcs: int,
                 denom: int = 8) -> ReebGraph:
    """Random connected multigraph: a tree plus extra arcs, giving cycle
    rank at most extra_arcs (exactly that when all nodes survive)."""
    n_nodes = max(2, n_nodes)
    vals = sorted(distinct_dyadics(rng, n_nodes, denom=denom))
    nodes = {i: vals[i] for i in range(n_nodes)}
    arcs = [(i - 1, rng.randrange(i), i) for i in range(1, n_nodes)]
    next_id = n_nodes - 1
    for _ in range(extra_arcs):
        a = rng.randrange(n_nodes)
        b = rng.randrange(n_nodes)
        if a == b:
            b = (b + 1) % n_nodes
        arcs.append((next_id, min(a, b), max(a, b)))
        next_id += 1
    return normalized(nodes, arcs)


def spread_graph(rng: random.Random, n_nodes: int, extra_arcs: int) -> ReebGraph:
    """Like random_graph but with integer values at spacing >= 1, so an
    order-preserving jitter below 1/2 always exists."""
    n_nodes = max(2, n_nodes)
    vals = sorted(rng.sample(range(4 * n_nodes), n_nodes))
    nodes = {i: float(vals[i]) for i in range(n_nodes)}
    arcs = [(i - 1, rng.randrange(i), i) for i in range(1, n_nodes)]
    next_id = n_nodes - 1
    for _ in range(extra_arcs):
        a = rng.randrange(n_nodes)
        b = rng.randrange(n_nodes)
        if a == b:
            b = (b + 1) % n_nodes
        arcs.append((next_id, min(a, b), max(a, b)))
        next_id += 1
    return normalized(nodes, arcs)


def jittered_copy(r: ReebGraph, rng: random.Random, eps: float,
                  denom: int = 64) -> ReebGraph:
    """Same structure with every node value moved by a dyadic amount of
    magnitude at most eps; requires the jitter to preserve the order."""
    steps = int(eps * denom)
    nodes = {n: f + rng.randint(-steps, steps) / denom for n, f in r.nodes.items()}
    before = sorted(r.nodes, key=r.key)
    after = sorted(nodes, key=lambda n: (nodes[n], n))
    if before != after:
        raise ValueError("jitter broke the node order; lower eps")
    return ReebGraph(nodes, r.arcs, regular=r.regular)


def random_complex(rng: random.Random, n_vertices: int, n_edges: int,
                   n_triangles: int, tie_prob: float = 0.0,
                   denom: int = 8) -> ScalarComplex:
    """Random simplicial 2-complex with triangle closure; tie_prob
    duplicates some values to exercise the tie-break order."""
    n_vertices = max(1, n_vertices)
    vals = distinct_dyadics(rng, n_vertices, denom=denom)
    for i in range(n_vertices):
        if i and rng.random() < tie_prob:
            vals[i] = vals[rng.randrange(i)]
    vertices = [(i, vals[i]) for i in range(n_vertices)]
    edges: set[tuple[int, int]] = set()
    for _ in range(n_edges):
        if n_vertices < 2:
            break
        a, b = rng.sample(range(n_vertices), 2)
        edges.add((min(a, b), max(a, b)))
    triangles: set[tuple[int, int, int]] = set()
    for _ in range(n_triangles):
        if n_vertices < 3:
            break
        tri = tuple(sorted(rng.sample(range(n_vertices), 3)))
        triangles.add(tri)
        for u, w in ((tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])):
            edges.add((u, w))
    return make_complex(vertices, sorted(edges), sorted(triangles))


def random_diagram(rng: random.Random, n_points: int, cls: str = "extended1",
                   denom: int = 8) -> PersistenceDiagram:
    pts = []
    for _ in range(n_points):
        a = rng.randrange(0, 16 * denom) / denom
        b = rng.randrange(0, 16 * denom) / denom
        lo, hi = min(a, b), max(a, b)
        if cls == "ordinary0-down":
            lo, hi = hi, lo
        pts.append(DiagramPoint(lo, hi, cls))
    return PersistenceDiagram(tuple(pts))
