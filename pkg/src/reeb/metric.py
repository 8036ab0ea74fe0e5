"""The intrinsic path-height metric on Reeb graphs.

The distance between two points is the smallest possible height
(max f minus min f) of a connecting path.  Optimal paths attain their
extrema at nodes or at the query points, so the floor of the optimal
path can be searched over a finite candidate set: for each candidate
floor b, the least possible path maximum D(b) is found by an ascending
connectivity sweep restricted to arcs lying above b, and the answer is
the best D(b) - b.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InternalError, NonPositiveEpsilon, UnknownNode
from .graph import Arc, ReebGraph, ReebPoint


@dataclass(frozen=True)
class PathHeight:
    """A distance value together with a witness path.

    The witness alternates points and arc ids, starting and ending at a
    point: [p0, arc, p1, arc, ..., pk].  It is None for infinite
    distances and a single-point list when the query points coincide.
    """

    value: float
    witness: tuple | None

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)


# -- internal augmented graph ------------------------------------------------


class _AugGraph:
    """A Reeb graph with query points spliced in as extra nodes.

    Node handles are ints for original nodes and ("q", i) for query
    points.  Every edge remembers the original arc id it came from.
    """

    def __init__(self, r: ReebGraph, points: list[ReebPoint]):
        self.r = r
        self.value: dict = dict(r.nodes)
        self.adj: dict = {n: [] for n in r.nodes}
        self.handles: list = []

        by_arc: dict[int, list] = {}
        for i, p in enumerate(points):
            if p.node is not None:
                if p.node not in r.nodes:
                    raise UnknownNode(f"node {p.node} not in graph")
                self.handles.append(p.node)
            else:
                r.point_value(p)  # validates interiority
                h = ("q", i)
                self.value[h] = p.t
                self.adj[h] = []
                self.handles.append(h)
                by_arc.setdefault(p.arc, []).append(h)

        split = set(by_arc)
        for a in r.arcs:
            if a.id not in split:
                self._add_edge(a.lo, a.hi, a.id)
        for arc_id, hs in by_arc.items():
            a = r.arc(arc_id)
            chain = [a.lo] + sorted(hs, key=lambda h: (self.value[h], h[1])) + [a.hi]
            for u, w in zip(chain, chain[1:]):
                self._add_edge(u, w, arc_id)

    def _add_edge(self, u, w, arc_id):
        self.adj[u].append((w, arc_id))
        self.adj[w].append((u, arc_id))

    def nodes_ascending(self):
        return sorted(self.value, key=lambda h: (self.value[h], str(h)))


def _connect_value(aug: _AugGraph, floor: float, src, dst) -> float:
    """Least possible path maximum from src to dst using arcs whose lower
    end sits at or above the floor; inf when unreachable."""
    order = aug.nodes_ascending()
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    idx = 0
    while idx < len(order):
        t = aug.value[order[idx]]
        j = idx
        while j < len(order) and aug.value[order[j]] == t:
            h = order[j]
            parent[h] = h
            j += 1
        for k in range(idx, j):
            h = order[k]
            for other, _ in aug.adj[h]:
                if other in parent and min(aug.value[h], aug.value[other]) >= floor:
                    ra, rb = find(h), find(other)
                    if ra != rb:
                        parent[rb] = ra
        if src in parent and dst in parent and find(src) == find(dst):
            return t
        idx = j
    return math.inf


def _threshold_path(aug: _AugGraph, floor: float, ceil: float, src, dst):
    """Deterministic BFS path inside the value window [floor, ceil]."""
    prev = {src: None}
    queue = [src]
    while queue:
        h = queue.pop(0)
        if h == dst:
            break
        for other, arc_id in sorted(aug.adj[h], key=lambda e: (e[1], str(e[0]))):
            if other in prev:
                continue
            if min(aug.value[h], aug.value[other]) < floor:
                continue
            if max(aug.value[h], aug.value[other]) > ceil:
                continue
            prev[other] = (h, arc_id)
            queue.append(other)
    if dst not in prev:
        raise InternalError("threshold path reconstruction failed")
    steps = []
    h = dst
    while prev[h] is not None:
        p, arc_id = prev[h]
        steps.append((p, arc_id, h))
        h = p
    steps.reverse()
    return steps


def _as_point(aug: _AugGraph, h, points: list[ReebPoint]) -> ReebPoint:
    if isinstance(h, tuple) and h[0] == "q":
        return points[h[1]]
    return ReebPoint.at_node(h)


def df(r: ReebGraph, u: ReebPoint, v: ReebPoint) -> PathHeight:
    """Minimal path height between two points; inf when disconnected."""
    points = [u, v]
    aug = _AugGraph(r, points)
    hu, hv = aug.handles
    if hu == hv or (u.arc is not None and u == v):
        return PathHeight(0.0, (_as_point(aug, hu, points),))

    fu, fv = aug.value[hu], aug.value[hv]
    top = min(fu, fv)
    floors = sorted({w for w in aug.value.values() if w <= top} | {top}, reverse=True)
    best = math.inf
    best_floor = None
    for b in floors:
        d = _connect_value(aug, b, hu, hv)
        if d - b < best:
            best, best_floor = d - b, b
    if not math.isfinite(best):
        return PathHeight(math.inf, None)

    steps = _threshold_path(aug, best_floor, best_floor + best, hu, hv)
    witness: list = [_as_point(aug, hu, points)]
    for _, arc_id, h in steps:
        witness.append(arc_id)
        witness.append(_as_point(aug, h, points))
    lo = min(aug.value[h] for h in [hu] + [s[2] for s in steps])
    hi = max(aug.value[h] for h in [hu] + [s[2] for s in steps])
    if hi - lo != best:
        raise InternalError("witness path does not attain the distance")
    return PathHeight(best, tuple(witness))


def all_pairs_df(r: ReebGraph, sample: list[ReebPoint]) -> list[list[float]]:
    """Symmetric matrix of pairwise path-height distances."""
    k = len(sample)
    aug = _AugGraph(r, list(sample))
    handles = aug.handles
    fvals = [aug.value[h] for h in handles]
    dist = [[math.inf] * k for _ in range(k)]
    for i in range(k):
        dist[i][i] = 0.0
        for j in range(k):
            if handles[i] == handles[j]:
                dist[i][j] = 0.0

    floors = sorted(set(aug.value.values()), reverse=True)
    order = aug.nodes_ascending()
    for b in floors:
        parent: dict = {}
        members: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        idx = 0
        while idx < len(order):
            t = aug.value[order[idx]]
            j = idx
            while j < len(order) and aug.value[order[j]] == t:
                h = order[j]
                parent[h] = h
                members[h] = [i for i in range(k) if handles[i] == h]
                j += 1
            for kk in range(idx, j):
                h = order[kk]
                for other, _ in aug.adj[h]:
                    if other in parent and min(aug.value[h], aug.value[other]) >= b:
                        ra, rb = find(h), find(other)
                        if ra == rb:
                            continue
                        if len(members[ra]) < len(members[rb]):
                            ra, rb = rb, ra
                        for p in members[ra]:
                            for q in members[rb]:
                                if b <= min(fvals[p], fvals[q]) and t - b < dist[p][q]:
                                    dist[p][q] = dist[q][p] = t - b
                        parent[rb] = ra
                        members[ra].extend(members[rb])
                        members[rb] = []
            idx = j
    return dist


def subdivide(r: ReebGraph, eps: float) -> ReebGraph:
    """Split every arc into equal pieces of height at most eps.

    The result is the same underlying space with extra marked regular
    nodes; node and arc ids of the input are preserved, fresh ids are
    appended.  Each new arc remembers its source arc in ``arc_origin``.
    """
    if not (eps > 0):
        raise NonPositiveEpsilon(f"subdivision step must be positive, got {eps}")
    nodes = dict(r.nodes)
    regular = set(r.regular)
    next_node = max(nodes, default=-1) + 1
    next_arc = max((a.id for a in r.arcs), default=-1) + 1
    arcs: list[Arc] = []
    origin: dict[int, int] = {}
    for a in r.arcs:
        h = r.arc_height(a)
        pieces = max(1, math.ceil(h / eps)) if h > 0 else 1
        if pieces == 1:
            arcs.append(a)
            origin[a.id] = a.id
            continue
        lo_v = nodes[a.lo]
        chain = [a.lo]
        for i in range(1, pieces):
            nodes[next_node] = lo_v + (h * i) / pieces
            regular.add(next_node)
            chain.append(next_node)
            next_node += 1
        chain.append(a.hi)
        ids = [a.id] + list(range(next_arc, next_arc + pieces - 1))
        next_arc += pieces - 1
        for arc_id, (u, w) in zip(ids, zip(chain, chain[1:])):
            arcs.append(Arc(arc_id, u, w))
            origin[arc_id] = a.id
    out = ReebGraph(nodes, arcs, regular=regular)
    out.arc_origin = origin
    return out
