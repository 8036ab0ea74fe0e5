"""Independent brute-force oracles used to cross-check the library.

Everything here is written straight from the definitions: set-based BFS
connectivity instead of union-find sweeps, exhaustive enumeration
instead of candidate searches.  None of it shares algorithmic code with
the package.
"""
from __future__ import annotations

import itertools
import math

from reeb import ReebGraph


# ---------------------------------------------------------------------------
# Reeb graph by explicit level-set components


def _bfs_groups(elements, neighbors):
    groups = []
    todo = set(elements)
    while todo:
        seed = min(todo, key=repr)
        comp = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for y in neighbors(x):
                if y in todo and y not in comp:
                    comp.add(y)
                    frontier.append(y)
        todo -= comp
        groups.append(frozenset(comp))
    return groups


def brute_reeb(c):
    """(nodes, arc multiset) of the level-set quotient, nodes named by
    their critical vertex ids."""
    vals = dict(c.vertices)
    order = sorted(vals, key=lambda v: (vals[v], v))
    rank = {v: i for i, v in enumerate(order)}
    n = len(order)
    edges = [tuple(sorted((rank[a], rank[b]))) for a, b in c.edges]
    tris = [tuple(sorted((rank[a], rank[b], rank[t]))) for a, b, t in c.triangles]

    def level_components(i):
        # elements: crossing edges plus the vertex marker
        elems = [e for e in edges if e[0] < i < e[1]] + ["v"]
        adj = {e: set() for e in elems}
        for (a, b, t) in tris:
            if not a < i < t:
                continue
            if b == i:
                adj["v"].add((a, t))
                adj[(a, t)].add("v")
            else:
                pair = ((b, t), (a, t)) if b < i else ((a, b), (a, t))
                adj[pair[0]].add(pair[1])
                adj[pair[1]].add(pair[0])
        return _bfs_groups(elems, lambda x: adj[x])

    def gap_components(i):
        elems = [e for e in edges if e[0] <= i and e[1] >= i + 1]
        adj = {e: set() for e in elems}
        for (a, b, t) in tris:
            if a <= i and t >= i + 1:
                pair = ((b, t), (a, t)) if b <= i else ((a, b), (a, t))
                adj[pair[0]].add(pair[1])
                adj[pair[1]].add(pair[0])
        return _bfs_groups(elems, lambda x: adj[x])

    levels = [level_components(i) for i in range(n)]
    gaps = [gap_components(i) for i in range(n - 1)] + [[]]

    def attach(gap_comp, level_list, i, above):
        # the unique level-i component whose closure meets the segment
        hits = set()
        for e in gap_comp:
            marker = "v" if (e[1] == i if above else e[0] == i) else e
            for k, comp in enumerate(level_list):
                if marker in comp:
                    hits.add(k)
        assert len(hits) == 1, "segment touches several level components"
        return hits.pop()

    # chain graph: vertices (i, k); edges from gap components
    chain_edges = []
    for i in range(n - 1):
        for g in gaps[i]:
            up = attach(g, levels[i], i, above=False)
            down = attach(g, levels[i + 1], i + 1, above=True)
            chain_edges.append(((i, up), (i + 1, down)))

    degree_up = {}
    degree_down = {}
    for lo, hi in chain_edges:
        degree_up[lo] = degree_up.get(lo, 0) + 1
        degree_down[hi] = degree_down.get(hi, 0) + 1
    points = [(i, k) for i in range(n) for k in range(len(levels[i]))]

    def is_vertex_comp(pt):
        return "v" in levels[pt[0]][pt[1]]

    critical = [pt for pt in points
                if degree_up.get(pt, 0) != 1 or degree_down.get(pt, 0) != 1]
    for pt in critical:
        assert is_vertex_comp(pt), "criticality away from a vertex"

    # contract chains of regular points
    succ = {}
    for lo, hi in chain_edges:
        succ.setdefault(lo, []).append(hi)
    arcs = []
    for pt in critical:
        for nxt in succ.get(pt, []):
            cur = nxt
            while cur not in critical:
                (cur,) = succ[cur]
            arcs.append((order[pt[0]], order[cur[0]]))
    nodes = {order[pt[0]]: vals[order[pt[0]]] for pt in critical}
    return nodes, sorted(arcs)


def graph_signature(r: ReebGraph):
    """Comparable form: node values keyed by id, arc multiset by endpoints."""
    return dict(r.nodes), sorted((a.lo, a.hi) for a in r.arcs)


def complex_level_count(c, rank_level: float | int, order) -> int:
    """Number of level-set components at a vertex rank (for property tests)."""
    vals = dict(c.vertices)
    rank = {v: i for i, v in enumerate(order)}
    edges = [tuple(sorted((rank[a], rank[b]))) for a, b in c.edges]
    tris = [tuple(sorted((rank[a], rank[b], rank[t]))) for a, b, t in c.triangles]
    i = rank_level
    elems = [e for e in edges if e[0] < i < e[1]] + ["v"]
    adj = {e: set() for e in elems}
    for (a, b, t) in tris:
        if not a < i < t:
            continue
        if b == i:
            adj["v"].add((a, t))
            adj[(a, t)].add("v")
        else:
            pair = ((b, t), (a, t)) if b < i else ((a, b), (a, t))
            adj[pair[0]].add(pair[1])
            adj[pair[1]].add(pair[0])
    return len(_bfs_groups(elems, lambda x: adj[x]))


# ---------------------------------------------------------------------------
# path-height distance by path enumeration


def brute_df(r: ReebGraph, u, v) -> float:
    """Minimum over all simple paths of (max - min), with query points
    spliced in as explicit vertices."""
    nodes = {("n", n): r.nodes[n] for n in r.nodes}
    adj: dict = {key: [] for key in nodes}

    def add(a, b):
        adj[a].append(b)
        adj[b].append(a)

    split: dict[int, list] = {}
    for label, p in (("u", u), ("v", v)):
        if p.node is not None:
            continue
        key = (label, p.arc, p.t)
        nodes[key] = p.t
        adj[key] = []
        split.setdefault(p.arc, []).append(key)
    for a in r.arcs:
        if a.id not in split:
            add(("n", a.lo), ("n", a.hi))
        else:
            inner = sorted(split[a.id], key=lambda k: (nodes[k], k))
            chain = [("n", a.lo), *inner, ("n", a.hi)]
            for x, y in zip(chain, chain[1:]):
                add(x, y)

    def key_of(label, p):
        return ("n", p.node) if p.node is not None else (label, p.arc, p.t)

    src, dst = key_of("u", u), key_of("v", v)
    if src == dst or (u.node is None and v.node is None and u == v):
        return 0.0
    best = math.inf

    def walk(node, seen, lo, hi):
        nonlocal best
        lo, hi = min(lo, nodes[node]), max(hi, nodes[node])
        if hi - lo >= best:
            return
        if node == dst:
            best = hi - lo
            return
        for nxt in adj[node]:
            if nxt not in seen:
                walk(nxt, seen | {nxt}, lo, hi)

    walk(src, {src}, nodes[src], nodes[src])
    return best


# ---------------------------------------------------------------------------
# thinnest basis by cycle enumeration + greedy independence


def all_simple_cycles(r: ReebGraph) -> list[frozenset[int]]:
    """Every simple cycle of the multigraph as an arc-id set."""
    by_node: dict[int, list] = {n: [] for n in r.nodes}
    for a in r.arcs:
        by_node[a.lo].append((a.id, a.hi))
        by_node[a.hi].append((a.id, a.lo))
    cycles = set()
    nodes = sorted(r.nodes)

    def extend(start, current, used_arcs, seen):
        for aid, nxt in by_node[current]:
            if aid in used_arcs:
                continue
            if nxt == start and len(used_arcs) >= 1:
                cycles.add(frozenset(used_arcs | {aid}))
                continue
            if nxt in seen or nxt < start:
                continue
            extend(start, nxt, used_arcs | {aid}, seen | {nxt})

    for s in nodes:
        extend(s, s, frozenset(), {s})
    return sorted(cycles, key=lambda c: sorted(c))


def cycle_range(r: ReebGraph, arcs) -> tuple[float, float]:
    lo = min(r.nodes[r.arc(a).lo] for a in arcs)
    hi = max(r.nodes[r.arc(a).hi] for a in arcs)
    return lo, hi


def greedy_thinnest(r: ReebGraph):
    """Matroid greedy over all simple cycles ordered by (height, arc ids)."""
    rank_needed = r.cycle_rank()
    pos = {a.id: i for i, a in enumerate(r.arcs)}
    candidates = sorted(
        all_simple_cycles(r),
        key=lambda c: (cycle_range(r, c)[1] - cycle_range(r, c)[0], sorted(c)))
    pivots: dict[int, int] = {}
    basis = []
    for cand in candidates:
        m = 0
        for a in cand:
            m |= 1 << pos[a]
        while m:
            p = m & -m
            if p not in pivots:
                pivots[p] = m
                basis.append(cand)
                break
            m ^= pivots[p]
        if len(basis) == rank_needed:
            break
    assert len(basis) == rank_needed, "cycle enumeration missed the rank"
    return basis


# ---------------------------------------------------------------------------
# 0-dimensional pairing through the rank function


def brute_ordinary0(r: ReebGraph):
    """Finite (birth, death) pairs of the ascending filtration, via the
    inclusion-rank formula on the grid of node order positions."""
    order = sorted(r.nodes, key=r.key)
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}

    def components_upto(i):
        keep = set(order[:i + 1])
        adj = {v: set() for v in keep}
        for a in r.arcs:
            if a.lo in keep and a.hi in keep:
                adj[a.lo].add(a.hi)
                adj[a.hi].add(a.lo)
        return _bfs_groups(keep, lambda x: adj[x])

    comps = [components_upto(i) for i in range(n)]

    def beta(i, j):
        # components of the sublevel at j that contain a point of level <= i
        if i < 0:
            return 0
        return sum(1 for comp in comps[j] if any(pos[v] <= i for v in comp))

    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            mult = (beta(i, j - 1) - beta(i, j)) - (beta(i - 1, j - 1) - beta(i - 1, j))
            for _ in range(mult):
                pairs.append((r.nodes[order[i]], r.nodes[order[j]]))
    return sorted(pairs)


# ---------------------------------------------------------------------------
# bottleneck by exhaustive matching


def brute_bottleneck(pts1, pts2) -> float:
    """Exhaustive minimax matching with diagonal moves allowed."""
    pts1 = [tuple(p) for p in pts1]
    pts2 = [tuple(p) for p in pts2]
    best = math.inf

    def cost_pair(p, q):
        return max(abs(p[0] - q[0]), abs(p[1] - q[1]))

    def diag(p):
        return abs(p[1] - p[0]) / 2

    def rec(i, free2, cur):
        nonlocal best
        if cur >= best:
            return
        if i == len(pts1):
            rest = max((diag(pts2[j]) for j in free2), default=0.0)
            best = min(best, max(cur, rest))
            return
        p = pts1[i]
        rec(i + 1, free2, max(cur, diag(p)))
        for j in list(free2):
            rec(i + 1, free2 - {j}, max(cur, cost_pair(p, pts2[j])))

    rec(0, frozenset(range(len(pts2))), 0.0)
    return best
