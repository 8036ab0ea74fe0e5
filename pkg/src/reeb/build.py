"""Reeb graph construction for PL scalar fields on simplicial 2-complexes.

The construction sweeps the vertex order once.  Between two consecutive
vertex levels the level sets are combinatorially constant: their
components are the components of the crossing edges glued pairwise
through crossing triangles.  At each vertex level the same partition is
recomputed together with the vertex itself, and the two are stitched.
Each slab component is one monotone arc segment; components are rebuilt
per slab (never carried as one growing union-find) because level-set
components both merge and split as the sweep ascends.
"""
from __future__ import annotations

from .complexes import ScalarComplex, tie_break, validate
from .errors import InternalError, InvalidComplex
from .graph import Arc, ReebGraph, ReebPoint


class _UnionFind:
    def __init__(self, elements):
        self.parent = {e: e for e in elements}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _components(uf: _UnionFind):
    groups: dict = {}
    for e in uf.parent:
        groups.setdefault(uf.find(e), []).append(e)
    return [tuple(sorted(g)) for g in sorted(groups.values(), key=lambda g: sorted(g)[0])]


def build_reeb(c: ScalarComplex) -> ReebGraph:
    """Quotient of the complex by level-set components.

    Returns the Reeb graph with node ids equal to vertex ids of critical
    vertices, arcs carrying ids in sweep order, and a provenance map
    from every complex vertex to its image point.
    """
    report = validate(c)
    if not report.valid:
        raise InvalidComplex("; ".join(report.problems))

    order = tie_break(c)
    rank = order.rank
    vid = order.order
    values = dict(c.vertices)
    n = len(vid)

    # edges / triangles in rank coordinates, ascending
    edges = [tuple(sorted((rank[a], rank[b]))) for a, b in c.edges]
    tris = [tuple(sorted((rank[a], rank[b], rank[t]))) for a, b, t in c.triangles]

    starting: list[list[int]] = [[] for _ in range(n)]
    ending: list[list[int]] = [[] for _ in range(n)]
    for ei, (lo, hi) in enumerate(edges):
        starting[lo].append(ei)
        ending[hi].append(ei)
    edge_index = {e: i for i, e in enumerate(edges)}

    tri_by_bottom: list[list[int]] = [[] for _ in range(n)]
    for ti, (a, b, cc) in enumerate(tris):
        tri_by_bottom[a].append(ti)

    def tri_gap_pair(ti: int, gap: int) -> tuple[int, int]:
        # edges of triangle ti glued together inside gap (gap, gap+1)
        a, b, cc = tris[ti]
        if b <= gap:
            return edge_index[(b, cc)], edge_index[(a, cc)]
        return edge_index[(a, b)], edge_index[(a, cc)]

    nodes: dict[int, float] = {}
    arcs: list[Arc] = []
    provenance: dict[int, ReebPoint] = {}
    next_arc_id = 0

    V = "vertex"  # sentinel element for the swept vertex in level partitions

    # tokens: open arc segments; token = [arc_id, lower_node_id]
    prev_comps: list[tuple[tuple[int, ...], list]] = []  # (edge tuple, token)
    active: set[int] = set()
    active_tris: set[int] = set()

    for i in range(n):
        v = vid[i]
        # ----- level partition at rank i -----
        passing = [e for e in active if edges[e][1] > i]
        level = _UnionFind(passing + [V])
        for ti in active_tris:
            a, b, cc = tris[ti]
            if cc == i:
                continue  # meets this level only at the vertex
            if b == i:
                level.union(V, edge_index[(a, cc)])
            elif b < i:
                level.union(edge_index[(b, cc)], edge_index[(a, cc)])
            else:
                level.union(edge_index[(a, b)], edge_index[(a, cc)])
        vclass = level.find(V)

        # anchor previous slab components at this level
        down_groups: dict = {}
        for comp, token in prev_comps:
            anchors = set()
            for e in comp:
                anchors.add(vclass if edges[e][1] == i else level.find(e))
            if len(anchors) != 1:
                raise InternalError("slab component attaches to several level components")
            down_groups.setdefault(anchors.pop(), []).append((comp, token))

        # ----- next slab partition -----
        for e in ending[i]:
            active.discard(e)
        active.update(starting[i])
        active_tris = {ti for ti in active_tris if tris[ti][2] > i}
        active_tris.update(ti for ti in tri_by_bottom[i] if tris[ti][2] > i)

        nxt = _UnionFind(active)
        for ti in active_tris:
            e1, e2 = tri_gap_pair(ti, i)
            nxt.union(e1, e2)
        up_groups: dict = {}
        for comp in _components(nxt):
            anchors = set()
            for e in comp:
                anchors.add(vclass if edges[e][0] == i else level.find(e))
            if len(anchors) != 1:
                raise InternalError("slab component departs from several level components")
            up_groups.setdefault(anchors.pop(), []).append(comp)

        # ----- stitch -----
        new_prev: list[tuple[tuple[int, ...], list]] = []
        level_classes = [vclass] + sorted(
            (cl for cl in set(map(level.find, passing)) if cl != vclass),
            key=lambda cl: min(e for e in passing if level.find(e) == cl))
        for cl in level_classes:
            downs = sorted(down_groups.get(cl, []), key=lambda item: item[1][0])
            ups = sorted(up_groups.get(cl, []))
            if cl != vclass:
                if len(downs) != 1 or len(ups) != 1:
                    raise InternalError("level component away from the vertex is not regular")
                new_prev.append((ups[0], downs[0][1]))
                continue
            k, m = len(downs), len(ups)
            if k == 1 and m == 1:
                token = downs[0][1]
                provenance[v] = ReebPoint.on_arc(token[0], values[v])
                new_prev.append((ups[0], token))
            else:
                nodes[v] = values[v]
                provenance[v] = ReebPoint.at_node(v)
                for _, token in downs:
                    arcs.append(Arc(token[0], token[1], v))
                for comp in ups:
                    token = [next_arc_id, v]
                    next_arc_id += 1
                    new_prev.append((comp, token))
        prev_comps = new_prev

    if prev_comps:
        raise InternalError("open arc segments left after the sweep")

    graph = ReebGraph(nodes, arcs, provenance=provenance)
    for v in list(provenance):
        p = provenance[v]
        if p.arc is not None:
            a = graph.arc(p.arc)
            lo, hi = graph.nodes[a.lo], graph.nodes[a.hi]
            if not (lo < p.t < hi):
                # raw ties can flatten an arc around this vertex; snap to the
                # nearer endpoint, which is at distance zero in the metric
                provenance[v] = ReebPoint.at_node(a.lo if p.t <= lo else a.hi)
    return graph
