"""Persistence-guided simplification of Reeb graphs.

Each feature pair (a branch killed at a merge saddle, or a cycle) owns a
merging path: a path or thin cycle spanning the pair's value interval.
Simplification identifies equal-value points along every selected
merging path, taking the transitive closure across pairs, and then
suppresses the regular points this creates.  The quotient map is value
preserving and contracts the path-height metric; how far the diagrams
can move is verified by :func:`verify_simplification`.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .bottleneck import bottleneck
from .errors import InternalError, InvalidPair
from .graph import Arc, ReebGraph, ReebPoint, suppress_regular
from .metric import df
from .persistence import (extended1, full_diagram, mirrored, ordinary0, sweep)


@dataclass(frozen=True)
class FeaturePair:
    kind: str          # "branch-min" | "branch-max" | "loop"
    creator: int       # node id: dying extremum, or lowest node of the cycle
    destroyer: int     # node id: the saddle that removes the feature
    persistence: float


@dataclass(frozen=True)
class PathSpec:
    """A walk from a saddle: arcs in traversal order plus its far end,
    which is either a node or a cut point inside an arc."""

    start: int
    arcs: tuple[int, ...]
    end_node: int | None = None
    end_cut: tuple[int, float] | None = None


@dataclass(frozen=True)
class MergingPath:
    kind: str
    pair: FeaturePair
    pi1: PathSpec
    pi2: PathSpec
    interval: tuple[float, float]
    segments: tuple[tuple[int, float, float], ...]  # (arc id, low value, high value)
    path_nodes: tuple[int, ...]


# ---------------------------------------------------------------------------
# feature pairs


def feature_pairs(r: ReebGraph) -> list[FeaturePair]:
    """Branch pairs from both sweep directions and one loop pair per
    independent cycle, sorted by persistence."""
    out = []
    up = sweep(r)
    for e in up.ordinary:
        out.append(FeaturePair("branch-min", e.extremum, e.saddle,
                               r.nodes[e.saddle] - r.nodes[e.extremum]))
    for e in up.essential:
        out.append(FeaturePair("loop", e.birth_node, e.saddle,
                               r.nodes[e.saddle] - r.nodes[e.birth_node]))
    m = mirrored(r)
    for e in sweep(m).ordinary:
        out.append(FeaturePair("branch-max", e.extremum, e.saddle,
                               r.nodes[e.extremum] - r.nodes[e.saddle]))
    out.sort(key=lambda p: (p.persistence, p.kind, r.key(p.creator), r.key(p.destroyer)))
    return out


# ---------------------------------------------------------------------------
# merging paths


def _bfs_path(r: ReebGraph, rank, ceiling_rank, src, dst) -> list[int]:
    """Arc-id path from src to dst through nodes strictly below the
    ceiling; deterministic by arc id."""
    prev = {src: None}
    queue = [src]
    while queue:
        n = queue.pop(0)
        if n == dst:
            break
        for arc, other, _up in r.incident(n):
            if rank[arc.hi] >= ceiling_rank or other in prev:
                continue
            prev[other] = (n, arc.id)
            queue.append(other)
    if dst not in prev:
        raise InternalError("no path inside the sublevel component")
    arcs = []
    n = dst
    while prev[n] is not None:
        p, aid = prev[n]
        arcs.append(aid)
        n = p
    arcs.reverse()
    return arcs


def _walk_nodes(r: ReebGraph, start: int, arcs) -> list[int]:
    nodes = [start]
    cur = start
    for aid in arcs:
        a = r.arc(aid)
        cur = a.hi if a.lo == cur else a.lo
        nodes.append(cur)
    return nodes


def _truncate(r: ReebGraph, start: int, arcs, level: float) -> PathSpec:
    """Prefix of the walk up to its first point at the given value."""
    nodes = _walk_nodes(r, start, arcs)
    if r.nodes[start] == level:
        return PathSpec(start, (), end_node=start)
    for k, aid in enumerate(arcs):
        nxt = nodes[k + 1]
        if r.nodes[nxt] == level:
            return PathSpec(start, tuple(arcs[:k + 1]), end_node=nxt)
        a = r.arc(aid)
        if r.nodes[a.lo] < level < r.nodes[a.hi]:
            return PathSpec(start, tuple(arcs[:k + 1]), end_cut=(aid, level))
    raise InternalError("walk never reaches the truncation level")


def _branch_path(g: ReebGraph, event) -> tuple[PathSpec, PathSpec]:
    """Ascending-orientation merging path for an ordinary event."""
    rank = {n: i for i, n in enumerate(g.nodes_ascending())}
    s = event.saddle
    dying = g.arc(event.dying_arc)
    surviving = g.arc(event.surviving_arc)
    down1 = _bfs_path(g, rank, rank[s], dying.lo, event.extremum)
    pi1 = PathSpec(s, (event.dying_arc, *down1), end_node=event.extremum)
    down2 = _bfs_path(g, rank, rank[s], surviving.lo, event.survivor)
    pi2 = _truncate(g, s, [event.surviving_arc, *down2], g.nodes[event.extremum])
    return pi1, pi2


def _spec_segments(g: ReebGraph, spec: PathSpec):
    """(arc, low, high) portions covered by the walk, and its nodes."""
    segs = []
    nodes = [spec.start]
    cur = spec.start
    for k, aid in enumerate(spec.arcs):
        a = g.arc(aid)
        if spec.end_cut is not None and k == len(spec.arcs) - 1:
            cutv = spec.end_cut[1]
            segs.append((aid, cutv, g.nodes[cur]))
            break
        segs.append((aid, g.nodes[a.lo], g.nodes[a.hi]))
        cur = a.hi if a.lo == cur else a.lo
        nodes.append(cur)
    return segs, nodes


def _cycle_split(r: ReebGraph, arcs: frozenset[int], low: int, top: int):
    """Order a simple cycle's arcs and split it at its two anchor nodes."""
    adj: dict[int, list[int]] = {}
    for aid in sorted(arcs):
        a = r.arc(aid)
        adj.setdefault(a.lo, []).append(aid)
        adj.setdefault(a.hi, []).append(aid)
    if any(len(v) != 2 for v in adj.values()):
        raise InternalError("canonical cycle is not a simple closed curve")
    first, second = adj[top]
    halves = []
    for start_arc in (first, second):
        cur, aid, walk = top, start_arc, []
        while True:
            walk.append(aid)
            a = r.arc(aid)
            cur = a.hi if a.lo == cur else a.lo
            if cur == low:
                break
            n1, n2 = adj[cur]
            aid = n2 if n1 == aid else n1
        halves.append(PathSpec(top, tuple(walk), end_node=low))
    return halves[0], halves[1]


def merging_path(r: ReebGraph, pair: FeaturePair) -> MergingPath:
    """The path (branch kinds) or thin cycle (loop kind) whose collapse
    cancels the pair; raises InvalidPair for foreign pairs."""
    if pair.kind == "branch-min":
        for e in sweep(r).ordinary:
            if e.extremum == pair.creator and e.saddle == pair.destroyer:
                pi1, pi2 = _branch_path(r, e)
                seg1, n1 = _spec_segments(r, pi1)
                seg2, n2 = _spec_segments(r, pi2)
                return MergingPath("branch-min", pair, pi1, pi2,
                                   (r.nodes[pair.creator], r.nodes[pair.destroyer]),
                                   tuple(seg1 + seg2), tuple(dict.fromkeys(n1 + n2)))
        raise InvalidPair(f"{pair} is not a branch pair of this graph")
    if pair.kind == "branch-max":
        m = mirrored(r)
        for e in sweep(m).ordinary:
            if e.extremum == pair.creator and e.saddle == pair.destroyer:
                pi1, pi2 = _branch_path(m, e)
                segs = []
                for spec in (pi1, pi2):
                    s, _ = _spec_segments(m, spec)
                    segs.extend((aid, -hi, -lo) for aid, lo, hi in s)
                _, n1 = _spec_segments(m, pi1)
                _, n2 = _spec_segments(m, pi2)
                flip = lambda sp: PathSpec(sp.start, sp.arcs, sp.end_node,
                                           None if sp.end_cut is None
                                           else (sp.end_cut[0], -sp.end_cut[1]))
                return MergingPath("branch-max", pair, flip(pi1), flip(pi2),
                                   (r.nodes[pair.destroyer], r.nodes[pair.creator]),
                                   tuple(segs), tuple(dict.fromkeys(n1 + n2)))
        raise InvalidPair(f"{pair} is not a branch pair of this graph")
    if pair.kind == "loop":
        for e in sweep(r).essential:
            if e.birth_node == pair.creator and e.saddle == pair.destroyer:
                pi1, pi2 = _cycle_split(r, e.cycle_arcs, e.birth_node, e.saddle)
                seg1, n1 = _spec_segments(r, pi1)
                seg2, n2 = _spec_segments(r, pi2)
                return MergingPath("loop", pair, pi1, pi2,
                                   (r.nodes[pair.creator], r.nodes[pair.destroyer]),
                                   tuple(seg1 + seg2), tuple(dict.fromkeys(n1 + n2)))
        raise InvalidPair(f"{pair} is not a loop pair of this graph")
    raise InvalidPair(f"unknown feature kind {pair.kind!r}")


# ---------------------------------------------------------------------------
# the quotient


class QuotientMap:
    """Value-preserving surjection from a graph onto its simplification."""

    def __init__(self, source: ReebGraph, target: ReebGraph, cuts, cut_node,
                 node_class, arc_class, sub_source, kept, absorbed,
                 arc_final, fibers_nodes, fibers_arcs):
        self.source = source
        self.target = target
        self._cuts = cuts                  # arc id -> sorted cut values
        self._cut_node = cut_node          # (arc id, value) -> s-node id
        self._cut_of = {v: k for k, v in cut_node.items()}
        self._node_class = node_class      # s-node -> class rep id
        self._arc_class = arc_class        # s-arc -> class rep arc id (or None if dropped)
        self._sub_source = sub_source      # s-arc -> (source arc, lo value, hi value)
        self._kept = kept                  # node ids present in the target
        self._absorbed = absorbed          # class node -> final arc id
        self._arc_final = arc_final        # class arc -> final arc id
        self._sub_of: dict[int, list[int]] = {}
        for sid, (src_arc, _, _) in sub_source.items():
            self._sub_of.setdefault(src_arc, []).append(sid)
        self._fibers_nodes = fibers_nodes  # list of lists of s-node ids
        self._fibers_arcs = fibers_arcs    # list of lists of s-arc ids

    # -- forward ----------------------------------------------------------

    def _snap(self, arc_id: int, value: float) -> ReebPoint:
        a = self.target.arc(arc_id)
        lo, hi = self.target.nodes[a.lo], self.target.nodes[a.hi]
        if value <= lo:
            return ReebPoint.at_node(a.lo)
        if value >= hi:
            return ReebPoint.at_node(a.hi)
        return ReebPoint.on_arc(arc_id, value)

    def _place_class_node(self, cls: int, value: float) -> ReebPoint:
        if cls in self._kept:
            return ReebPoint.at_node(cls)
        return self._snap(self._absorbed[cls], value)

    def map_node(self, n: int) -> ReebPoint:
        return self._place_class_node(self._node_class[n], self.source.nodes[n])

    def map_point(self, p: ReebPoint) -> ReebPoint:
        if p.node is not None:
            return self.map_node(p.node)
        self.source.point_value(p)  # validates
        aid, t = p.arc, p.t
        if t in self._cuts.get(aid, []):
            cls = self._node_class[self._cut_node[(aid, t)]]
            return self._place_class_node(cls, t)
        sid = self._locate_sub(aid, t)
        cls = self._arc_class[sid]
        return self._snap(self._arc_final[cls], t)

    def _locate_sub(self, arc_id: int, t: float) -> int:
        for sid in self._sub_of.get(arc_id, []):
            _, lo, hi = self._sub_source[sid]
            if lo < t < hi:
                return sid
        raise InternalError(f"no subdivision piece of arc {arc_id} holds {t}")

    # -- backward -----------------------------------------------------------

    def _s_node_point(self, sid: int) -> ReebPoint:
        if sid in self._cut_of:
            arc, v = self._cut_of[sid]
            return ReebPoint.on_arc(arc, v)
        return ReebPoint.at_node(sid)

    def _s_arc_point(self, sid: int, t: float) -> ReebPoint:
        src_arc, lo, hi = self._sub_source[sid]
        a = self.source.arc(src_arc)
        slo, shi = self.source.nodes[a.lo], self.source.nodes[a.hi]
        if t <= slo:
            return ReebPoint.at_node(a.lo)
        if t >= shi:
            return ReebPoint.at_node(a.hi)
        return ReebPoint.on_arc(src_arc, t)

    def preimage(self, p: ReebPoint) -> ReebPoint:
        """Some source point mapping to p."""
        if p.node is not None:
            members = sorted(s for s, c in self._node_class.items()
                             if c == p.node)
            if not members:
                raise InternalError(f"target node {p.node} has no preimage record")
            return self._s_node_point(members[0])
        t = p.t
        chain = sorted(s for s, c in self._arc_class.items()
                       if c is not None and self._arc_final[c] == p.arc)
        for sid in chain:
            _, lo, hi = self._sub_source[sid]
            if lo < t < hi:
                return self._s_arc_point(sid, t)
        for sid in chain:  # boundary of a piece
            _, lo, hi = self._sub_source[sid]
            if t == lo or t == hi:
                return self._boundary_node(sid, t)
        raise InternalError(f"no preimage found for {p}")

    def _boundary_node(self, sid: int, t: float) -> ReebPoint:
        src_arc, lo, hi = self._sub_source[sid]
        if t in self._cuts.get(src_arc, []):
            return ReebPoint.on_arc(src_arc, t)
        a = self.source.arc(src_arc)
        return ReebPoint.at_node(a.lo if self.source.nodes[a.lo] == t else a.hi)

    # -- fibers --------------------------------------------------------------

    def fiber_pairs(self, limit: int | None = None):
        """Pairs of distinct source points with a common image."""
        out = []
        for members in self._fibers_nodes:
            base = self._s_node_point(members[0])
            for other in members[1:]:
                out.append((base, self._s_node_point(other)))
        for members in self._fibers_arcs:
            _, lo, hi = self._sub_source[members[0]]
            if not (lo < hi):
                continue
            t = (lo + hi) / 2
            base = self._s_arc_point(members[0], t)
            for other in members[1:]:
                out.append((base, self._s_arc_point(other, t)))
        return out if limit is None else out[:limit]


class ComposedQuotient:
    """Composition of two quotient maps (fixed-point simplification)."""

    def __init__(self, first, second):
        self.first, self.second = first, second
        self.source, self.target = first.source, second.target

    def map_node(self, n: int) -> ReebPoint:
        return self.second.map_point(self.first.map_node(n))

    def map_point(self, p: ReebPoint) -> ReebPoint:
        return self.second.map_point(self.first.map_point(p))

    def preimage(self, p: ReebPoint) -> ReebPoint:
        return self.first.preimage(self.second.preimage(p))

    def fiber_pairs(self, limit: int | None = None):
        out = list(self.first.fiber_pairs(limit))
        for a, b in self.second.fiber_pairs(limit):
            out.append((self.first.preimage(a), self.first.preimage(b)))
        return out if limit is None else out[:limit]


def _identity_quotient(r: ReebGraph) -> QuotientMap:
    node_class = {n: n for n in r.nodes}
    arc_class = {a.id: a.id for a in r.arcs}
    sub_source = {a.id: (a.id, r.nodes[a.lo], r.nodes[a.hi]) for a in r.arcs}
    return QuotientMap(r, r, {}, {}, node_class, arc_class, sub_source,
                       set(r.nodes), {}, {a.id: a.id for a in r.arcs}, [], [])


def _quotient(r: ReebGraph, paths: list[MergingPath]):
    participating = sorted({aid for mp in paths for aid, _, _ in mp.segments})
    node_values = sorted({v for v in r.nodes.values()})

    cuts: dict[int, list[float]] = {}
    for aid in participating:
        a = r.arc(aid)
        lo, hi = r.nodes[a.lo], r.nodes[a.hi]
        inner = [v for v in node_values if lo < v < hi]
        cuts[aid] = inner

    s_nodes: dict[int, float] = dict(r.nodes)
    cut_node: dict[tuple[int, float], int] = {}
    next_node = max(r.nodes, default=-1) + 1
    s_arcs: list[Arc] = []
    sub_source: dict[int, tuple[int, float, float]] = {}
    next_arc = max((a.id for a in r.arcs), default=-1) + 1
    for a in r.arcs:
        inner = cuts.get(a.id, [])
        if not inner:
            s_arcs.append(a)
            sub_source[a.id] = (a.id, r.nodes[a.lo], r.nodes[a.hi])
            continue
        chain = [a.lo]
        for v in inner:
            cut_node[(a.id, v)] = next_node
            s_nodes[next_node] = v
            chain.append(next_node)
            next_node += 1
        chain.append(a.hi)
        values = [r.nodes[a.lo], *inner, r.nodes[a.hi]]
        ids = [a.id] + list(range(next_arc, next_arc + len(chain) - 2))
        next_arc += len(chain) - 2
        for sid, (u, w), (vl, vh) in zip(ids, zip(chain, chain[1:]),
                                         zip(values, values[1:])):
            s_arcs.append(Arc(sid, u, w))
            sub_source[sid] = (a.id, vl, vh)

    # union-find over s-nodes and s-arcs
    np_ = {n: n for n in s_nodes}
    ap = {a.id: a.id for a in s_arcs}

    def nfind(x):
        while np_[x] != x:
            np_[x] = np_[np_[x]]
            x = np_[x]
        return x

    def afind(x):
        while ap[x] != x:
            ap[x] = ap[ap[x]]
            x = ap[x]
        return x

    def union(parent, find, a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for mp in paths:
        members_n: dict[float, list[int]] = {}
        for n in mp.path_nodes:
            members_n.setdefault(r.nodes[n], []).append(n)
        members_a: dict[tuple[float, float], list[int]] = {}
        for aid, vlo, vhi in mp.segments:
            for v in cuts.get(aid, []):
                if vlo <= v <= vhi:
                    members_n.setdefault(v, []).append(cut_node[(aid, v)])
            pieces = [sid for sid, (src, lo, hi) in sub_source.items()
                      if src == aid and lo >= vlo and hi <= vhi]
            for sid in pieces:
                _, lo, hi = sub_source[sid]
                members_a.setdefault((lo, hi), []).append(sid)
        for group in members_n.values():
            for other in group[1:]:
                union(np_, nfind, group[0], other)
        for group in members_a.values():
            for other in group[1:]:
                union(ap, afind, group[0], other)

    node_class = {n: nfind(n) for n in s_nodes}
    q_nodes: dict[int, float] = {}
    for n, cls in node_class.items():
        if cls in q_nodes:
            if q_nodes[cls] != s_nodes[n]:
                raise InternalError("identified nodes with different values")
        else:
            q_nodes[cls] = s_nodes[n]

    arc_class: dict[int, int | None] = {}
    q_arcs: dict[int, Arc] = {}
    fibers_arcs: dict[int, list[int]] = {}
    for a in s_arcs:
        cls = afind(a.id)
        lo_c, hi_c = node_class[a.lo], node_class[a.hi]
        if lo_c == hi_c:
            arc_class[a.id] = None  # zero-height piece collapsed to a point
            continue
        arc_class[a.id] = cls
        fibers_arcs.setdefault(cls, []).append(a.id)
        if cls not in q_arcs:
            q_arcs[cls] = Arc(cls, lo_c, hi_c)
        elif {q_arcs[cls].lo, q_arcs[cls].hi} != {lo_c, hi_c}:
            raise InternalError("identified arcs with different endpoints")

    nodes2, arcs2, absorbed, redirect = _suppress_tracked(q_nodes, list(q_arcs.values()))
    target = ReebGraph(nodes2, arcs2)

    def resolve(aid):
        while aid in redirect:
            aid = redirect[aid]
        return aid

    arc_final = {cls: resolve(cls) for cls in q_arcs}
    absorbed_final = {n: resolve(a) for n, a in absorbed.items()}

    fibers_nodes_map: dict[int, list[int]] = {}
    for n, cls in node_class.items():
        fibers_nodes_map.setdefault(cls, []).append(n)
    fibers_nodes = [sorted(v) for k, v in sorted(fibers_nodes_map.items()) if len(v) > 1]
    fibers_arcs_list = [sorted(v) for k, v in sorted(fibers_arcs.items()) if len(v) > 1]

    q = QuotientMap(r, target, cuts, cut_node, node_class, arc_class, sub_source,
                    set(nodes2), absorbed_final, arc_final,
                    fibers_nodes, fibers_arcs_list)
    return target, q


def _suppress_tracked(nodes, arcs):
    """suppress_regular plus records of where spliced nodes went."""
    nodes = dict(nodes)
    arc_map = {a.id: a for a in arcs}
    adj: dict[int, list[int]] = {n: [] for n in nodes}
    for a in arc_map.values():
        adj[a.lo].append(a.id)
        adj[a.hi].append(a.id)
    absorbed: dict[int, int] = {}
    redirect: dict[int, int] = {}
    changed = True
    while changed:
        changed = False
        for n in sorted(nodes):
            if len(adj[n]) != 2:
                continue
            i1, i2 = sorted(adj[n])
            if i1 == i2:
                continue
            a1, a2 = arc_map[i1], arc_map[i2]
            down = a1 if a1.hi == n else a2
            up = a2 if down is a1 else a1
            if not (down.hi == n and up.lo == n):
                continue
            merged = Arc(min(i1, i2), down.lo, up.hi)
            del arc_map[i1], arc_map[i2], nodes[n], adj[n]
            arc_map[merged.id] = merged
            for old in (i1, i2):
                if old != merged.id:
                    redirect[old] = merged.id
            absorbed[n] = merged.id
            for end in (merged.lo, merged.hi):
                adj[end] = [i for i in adj[end] if i not in (i1, i2)] + [merged.id]
            changed = True
    for n, aid in list(absorbed.items()):
        while aid in redirect:
            aid = redirect[aid]
        absorbed[n] = aid
    return nodes, sorted(arc_map.values(), key=lambda a: a.id), absorbed, redirect


# ---------------------------------------------------------------------------
# driver


def simplify(r: ReebGraph, delta: float | None = None, pairs=None,
             fixed_point: bool = False):
    """Collapse the merging paths of all features with persistence at
    most delta (or of an explicit pair list) in one transitive-closure
    pass; with fixed_point, repeat until no such feature remains."""
    if (delta is None) == (pairs is None):
        raise ValueError("pass exactly one of delta or pairs")
    if delta is not None and delta < 0:
        raise ValueError("delta must be nonnegative")
    if pairs is not None:
        known = set(feature_pairs(r))
        for p in pairs:
            if p not in known:
                raise InvalidPair(f"{p} is not a feature pair of this graph")
        selected = list(pairs)
    else:
        selected = [p for p in feature_pairs(r) if p.persistence <= delta]
    if not selected:
        return r, _identity_quotient(r)
    paths = [merging_path(r, p) for p in selected]
    target, q = _quotient(r, paths)
    if fixed_point and delta is not None:
        rounds = len(selected) + 1
        while rounds > 0:
            more = [p for p in feature_pairs(target) if p.persistence <= delta]
            if not more:
                break
            target, q2 = simplify(target, delta)
            q = ComposedQuotient(q, q2)
            rounds -= 1
    return target, q


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class SimplificationReport:
    db_up: float
    db_down: float
    db_ext: float
    bounds_ok: bool
    contraction_violations: tuple
    fiber_violations: tuple
    survivors: tuple  # (birth, death, cls, partner birth, partner death, cost)

    @property
    def ok(self) -> bool:
        return (self.bounds_ok and not self.contraction_violations
                and not self.fiber_violations)


def _sample_points(r: ReebGraph, rng: random.Random, count: int) -> list[ReebPoint]:
    pts = [ReebPoint.at_node(n) for n in sorted(r.nodes)]
    arcs = [a for a in r.arcs if r.arc_height(a) > 0]
    for _ in range(4 * count):
        if len(pts) >= count or not arcs:
            break
        a = arcs[rng.randrange(len(arcs))]
        frac = rng.randrange(1, 16) / 16
        t = r.nodes[a.lo] + r.arc_height(a) * frac
        if r.nodes[a.lo] < t < r.nodes[a.hi]:
            pts.append(ReebPoint.on_arc(a.id, t))
    return pts[:count] if count < len(pts) else pts


def verify_simplification(r: ReebGraph, simplified: ReebGraph, delta: float,
                          quotient=None, samples: int = 24,
                          seed: int = 0) -> SimplificationReport:
    """Check the stability guarantees of a simplification at threshold
    delta: bottleneck moves of at most 2*delta (0-dimensional classes)
    and 6*delta (extended class), metric contraction of the quotient
    map, and fibers of diameter at most 2*delta."""
    up_a = ordinary0(r, "up").restrict("ordinary0-up")
    up_b = ordinary0(simplified, "up").restrict("ordinary0-up")
    down_a = ordinary0(r, "down").restrict("ordinary0-down")
    down_b = ordinary0(simplified, "down").restrict("ordinary0-down")
    ext_a, ext_b = extended1(r), extended1(simplified)
    db_up, m_up = bottleneck(up_a, up_b)
    db_down, m_down = bottleneck(down_a, down_b)
    db_ext, m_ext = bottleneck(ext_a, ext_b)
    bounds_ok = db_up <= 2 * delta and db_down <= 2 * delta and db_ext <= 6 * delta

    contraction = []
    fibers = []
    if quotient is not None:
        rng = random.Random(seed)
        pts = _sample_points(r, rng, samples)
        for i in range(len(pts)):
            for j in range(i + 1, min(len(pts), i + 6)):
                x, y = pts[i], pts[j]
                dxy = df(r, x, y).value
                dq = df(simplified, quotient.map_point(x), quotient.map_point(y)).value
                if dq > dxy:
                    contraction.append((x, y, dxy, dq))
        for x0, x1 in quotient.fiber_pairs(limit=4 * samples):
            d = df(r, x0, x1).value
            if d > 2 * delta:
                fibers.append((x0, x1, d))

    survivors = []
    other = {"ordinary0-up": up_b, "ordinary0-down": down_b, "extended1": ext_b}
    for diag, (value, matching) in ((up_a, (db_up, m_up)),
                                    (down_a, (db_down, m_down)),
                                    (ext_a, (db_ext, m_ext))):
        for i, p in enumerate(diag.points):
            if abs(p.death - p.birth) <= 2 * value:
                continue
            hit = [pair for pair in matching.pairs if pair[0] == i]
            if not hit or hit[0][1] is None:
                raise InternalError("tall feature matched to the diagonal "
                                    "despite a smaller bottleneck value")
            q = other[p.cls].points[hit[0][1]]
            cost = max(abs(p.birth - q.birth), abs(p.death - q.death))
            survivors.append((p.birth, p.death, p.cls, q.birth, q.death, cost))

    return SimplificationReport(db_up, db_down, db_ext, bounds_ok,
                                tuple(contraction), tuple(fibers),
                                tuple(survivors))
