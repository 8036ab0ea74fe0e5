"""Persistence of the scalar field carried by a Reeb graph.

An ascending sweep pairs minima with the merge saddles that kill their
sublevel components (ordinary 0-dimensional pairs); the descending
direction is the same sweep on the mirrored graph and pairs maxima with
splitting saddles.  Saddle events whose two lower branches are already
connected create an independent cycle instead: the cycle's top is the
saddle, and its birth is found by a widest-path search below the saddle
(maximise the lowest point one must pass through).  These cycles, one
per event, form a thinnest basis of the cycle space, and their value
ranges are exactly the 1-dimensional extended pairs.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .errors import InternalError, NotACycle, SchemaError, UnknownNode
from .graph import ReebGraph, make_graph

CLASSES = ("ordinary0-up", "ordinary0-down", "essential0", "extended1")


@dataclass(frozen=True)
class DiagramPoint:
    birth: float
    death: float
    cls: str


@dataclass(frozen=True)
class PersistenceDiagram:
    points: tuple[DiagramPoint, ...]

    def restrict(self, cls: str) -> "PersistenceDiagram":
        if cls not in CLASSES:
            raise ValueError(f"unknown diagram class {cls!r}")
        return PersistenceDiagram(tuple(p for p in self.points if p.cls == cls))

    def pairs(self, cls: str | None = None) -> list[tuple[float, float]]:
        pts = self.points if cls is None else self.restrict(cls).points
        return sorted((p.birth, p.death) for p in pts)

    def __add__(self, other: "PersistenceDiagram") -> "PersistenceDiagram":
        return PersistenceDiagram(self.points + other.points)


@dataclass(frozen=True)
class Cycle:
    """A Z2 one-cycle given by its arc-id set, with its value range."""

    arcs: frozenset[int]
    lo: float
    hi: float

    @property
    def height(self) -> float:
        return self.hi - self.lo

    @property
    def range(self) -> tuple[float, float]:
        return (self.lo, self.hi)


@dataclass(frozen=True)
class CycleBasis:
    cycles: tuple[Cycle, ...]

    def heights(self) -> list[float]:
        return [c.height for c in self.cycles]

    def ranges(self) -> list[tuple[float, float]]:
        return sorted(c.range for c in self.cycles)

    def __len__(self):
        return len(self.cycles)


@dataclass(frozen=True)
class Decomposition:
    coefficients: tuple[int, ...]
    dominating: int | None


# ---------------------------------------------------------------------------
# sweep


@dataclass(frozen=True)
class OrdinaryEvent:
    extremum: int        # node whose component dies at the saddle
    saddle: int
    dying_arc: int       # lower arc attaching the dying side to the saddle
    surviving_arc: int   # lower arc attaching the surviving side
    survivor: int        # extremum of the surviving component at event time


@dataclass(frozen=True)
class EssentialEvent:
    saddle: int          # top of the new cycle
    birth_node: int      # lowest node on the canonical cycle
    new_arc: int
    partner_arc: int
    cycle_arcs: frozenset[int]


@dataclass(frozen=True)
class SweepResult:
    ordinary: tuple[OrdinaryEvent, ...]
    essential: tuple[EssentialEvent, ...]
    components: tuple[tuple[int, int], ...]  # (extremum, last node) per component


def _widest_below(r: ReebGraph, rank: dict[int, int], saddle_rank: int,
                  src: int, targets: set[int]):
    """Maximise the minimum rank along paths from src to any target, using
    only arcs strictly below the saddle.  Returns (best target, width,
    path arc ids) in rank terms; the search space always contains one of
    the targets when called on an essential event."""
    width = {src: rank[src]}
    parent: dict[int, tuple[int, int]] = {}
    heap = [(-rank[src], rank[src], src)]
    while heap:
        neg_w, _, node = heapq.heappop(heap)
        w = -neg_w
        if w < width.get(node, -1):
            continue
        for arc, other, _up in r.incident(node):
            if rank[arc.hi] >= saddle_rank:
                continue
            cand = min(w, rank[other])
            if cand > width.get(other, -1):
                width[other] = cand
                parent[other] = (node, arc.id)
                heapq.heappush(heap, (-cand, rank[other], other))
    best = None
    for t in sorted(targets, key=lambda t: rank[t]):
        if t in width and (best is None or width[t] > width[best]):
            best = t
    if best is None:
        raise InternalError("essential event with no path between its branches")
    path_arcs = []
    node = best
    while node != src:
        prev, arc_id = parent[node]
        path_arcs.append(arc_id)
        node = prev
    return best, width[best], path_arcs


def sweep(r: ReebGraph) -> SweepResult:
    """Ascending merge sweep producing ordinary and essential events."""
    asc = r.nodes_ascending()
    rank = {n: i for i, n in enumerate(asc)}
    parent = {n: n for n in asc}
    comp_min: dict[int, int] = {}
    comp_max: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ordinary: list[OrdinaryEvent] = []
    essential: list[EssentialEvent] = []

    for v in asc:
        comp_min[v] = v
        comp_max[v] = v
        atts = sorted(r.down_arcs(v), key=lambda a: (rank[comp_min[find(a.lo)]], a.id))
        if atts:
            acc = find(atts[0].lo)
            prev_arcs = [atts[0]]
            for a in atts[1:]:
                ra = find(a.lo)
                if ra != acc:
                    dying = comp_min[ra]
                    ordinary.append(OrdinaryEvent(
                        extremum=dying, saddle=v, dying_arc=a.id,
                        surviving_arc=prev_arcs[0].id, survivor=comp_min[acc]))
                    keep_min = comp_min[acc]
                    parent[ra] = acc
                    comp_min[acc] = keep_min
                else:
                    targets = {p.lo for p in prev_arcs}
                    best, _w, path_arcs = _widest_below(r, rank, rank[v], a.lo, targets)
                    cyc = frozenset(path_arcs) | {a.id}
                    partner = min(p.id for p in prev_arcs if p.lo == best)
                    cyc |= {partner}
                    low = a.lo if rank[a.lo] <= rank[best] else best
                    for arc_id in path_arcs:
                        lo = r.arc(arc_id).lo
                        if rank[lo] < rank[low]:
                            low = lo
                    essential.append(EssentialEvent(
                        saddle=v, birth_node=low, new_arc=a.id,
                        partner_arc=partner, cycle_arcs=cyc))
                prev_arcs.append(a)
            root = find(acc)
            parent[v] = root
            comp_max[root] = v
        # else: v opens a fresh component

    comps = []
    for n in asc:
        if find(n) == n:
            comps.append((comp_min[n], comp_max[n]))
    return SweepResult(tuple(ordinary), tuple(essential), tuple(comps))


def mirrored(r: ReebGraph) -> ReebGraph:
    """The same graph with the scalar field negated."""
    flipped = make_graph({n: -f for n, f in r.nodes.items()},
                         [(a.id, a.hi, a.lo) for a in r.arcs])
    return ReebGraph(flipped.nodes, flipped.arcs, regular=r.regular)


# ---------------------------------------------------------------------------
# diagrams


def ordinary0(r: ReebGraph, direction: str = "up") -> PersistenceDiagram:
    """0-dimensional pairs for the chosen sweep direction, plus one
    (component minimum, component maximum) point per component."""
    if direction not in ("up", "down"):
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    if direction == "up":
        res = sweep(r)
        pts = [DiagramPoint(r.nodes[e.extremum], r.nodes[e.saddle], "ordinary0-up")
               for e in res.ordinary]
        ess = [(r.nodes[mn], r.nodes[mx]) for mn, mx in res.components]
    else:
        m = mirrored(r)
        res = sweep(m)
        pts = [DiagramPoint(-m.nodes[e.extremum], -m.nodes[e.saddle], "ordinary0-down")
               for e in res.ordinary]
        ess = [(-m.nodes[mx], -m.nodes[mn]) for mn, mx in res.components]
    pts += [DiagramPoint(b, d, "essential0") for b, d in ess]
    return PersistenceDiagram(tuple(pts))


def extended1(r: ReebGraph) -> PersistenceDiagram:
    """Ranges of the independent cycles, one point per cycle."""
    res = sweep(r)
    pts = [DiagramPoint(r.nodes[e.birth_node], r.nodes[e.saddle], "extended1")
           for e in res.essential]
    if len(pts) != r.cycle_rank():
        raise InternalError("essential event count does not match the cycle rank")
    return PersistenceDiagram(tuple(pts))


def full_diagram(r: ReebGraph) -> PersistenceDiagram:
    up = ordinary0(r, "up")
    down = ordinary0(r, "down").restrict("ordinary0-down")
    return up + down + extended1(r)


# ---------------------------------------------------------------------------
# cycle bases


def cycle_from_arcs(r: ReebGraph, arcs) -> Cycle:
    """Check the even-degree condition and compute the value range."""
    arc_ids = frozenset(int(a) for a in arcs)
    degree: dict[int, int] = {}
    for aid in arc_ids:
        a = r.arc(aid)
        degree[a.lo] = degree.get(a.lo, 0) + 1
        degree[a.hi] = degree.get(a.hi, 0) + 1
    odd = [n for n, d in degree.items() if d % 2]
    if odd:
        raise NotACycle(f"arc set has odd degree at nodes {sorted(odd)}")
    if not arc_ids:
        return Cycle(arc_ids, 0.0, 0.0)
    lo = min(r.nodes[r.arc(a).lo] for a in arc_ids)
    hi = max(r.nodes[r.arc(a).hi] for a in arc_ids)
    return Cycle(arc_ids, lo, hi)


def thinnest_basis(r: ReebGraph) -> CycleBasis:
    """Basis whose nondecreasing height sequence is lexicographically
    minimal; one canonical cycle per essential event."""
    res = sweep(r)
    cycles = []
    for e in res.essential:
        c = cycle_from_arcs(r, e.cycle_arcs)
        if (c.lo, c.hi) != (r.nodes[e.birth_node], r.nodes[e.saddle]):
            raise InternalError("cycle range disagrees with its event span")
        cycles.append(c)
    cycles.sort(key=lambda c: (c.height, c.lo, sorted(c.arcs)))
    if len(cycles) != r.cycle_rank():
        raise InternalError("basis size does not match the cycle rank")
    if _z2_rank([c.arcs for c in cycles], r) != len(cycles):
        raise InternalError("basis cycles are not independent")
    return CycleBasis(tuple(cycles))


def _arc_positions(r: ReebGraph) -> dict[int, int]:
    return {a.id: i for i, a in enumerate(r.arcs)}

def _mask(arcs, pos) -> int:
    m = 0
    for a in arcs:
        m |= 1 << pos[a]
    return m


def _z2_rank(arc_sets, r: ReebGraph) -> int:
    pos = _arc_positions(r)
    pivots: dict[int, int] = {}
    rank = 0
    for arcs in arc_sets:
        m = _mask(arcs, pos)
        while m:
            p = m & -m
            if p not in pivots:
                pivots[p] = m
                rank += 1
                break
            m ^= pivots[p]
    return rank


def decompose(r: ReebGraph, basis: CycleBasis, c: Cycle) -> Decomposition:
    """Coefficients of c over the basis; XOR of the selected cycles is c."""
    cycle_from_arcs(r, c.arcs)  # raises NotACycle on bad input
    pos = _arc_positions(r)
    rows = []  # (reduced mask, combination mask over basis indices)
    for i, b in enumerate(basis.cycles):
        m, combo = _mask(b.arcs, pos), 1 << i
        for rm, rc in rows:
            if m & (rm & -rm):
                m ^= rm
                combo ^= rc
        if m == 0:
            raise ValueError("basis cycles are linearly dependent")
        rows.append((m, combo))
    rows.sort(key=lambda row: row[0] & -row[0])

    m, combo = _mask(c.arcs, pos), 0
    for rm, rc in rows:
        if m & (rm & -rm):
            m ^= rm
            combo ^= rc
    if m != 0:
        raise ValueError("cycle is outside the span of the basis")
    coeffs = tuple((combo >> i) & 1 for i in range(len(basis.cycles)))
    dominating = None
    best = -math.inf
    for i, bit in enumerate(coeffs):
        if bit and basis.cycles[i].height > best:
            best = basis.cycles[i].height
            dominating = i
    return Decomposition(coeffs, dominating)


def is_alpha_matching(basis_f: CycleBasis, basis_g: CycleBasis,
                      pairs, alpha: float) -> bool:
    """True iff paired ranges are alpha-close in the Hausdorff sense and
    every cycle taller than 2*alpha appears in exactly one pair."""
    pairs = [(int(i), int(j)) for i, j in pairs]
    for i, j in pairs:
        if not (0 <= i < len(basis_f.cycles) and 0 <= j < len(basis_g.cycles)):
            raise ValueError(f"pair ({i},{j}) references a missing basis cycle")
        cf, cg = basis_f.cycles[i], basis_g.cycles[j]
        if abs(cf.lo - cg.lo) > alpha or abs(cf.hi - cg.hi) > alpha:
            return False
    for side, basis in ((0, basis_f), (1, basis_g)):
        for idx, c in enumerate(basis.cycles):
            if c.height > 2 * alpha:
                uses = sum(1 for p in pairs if p[side] == idx)
                if uses != 1:
                    return False
    return True


# ---------------------------------------------------------------------------
# serialization


def diagram_to_json(d: PersistenceDiagram) -> dict:
    pts = []
    for p in sorted(d.points, key=lambda p: (p.cls, p.birth, p.death)):
        death = "inf" if math.isinf(p.death) else p.death
        pts.append({"b": p.birth, "d": death, "class": p.cls})
    return {"points": pts}


def diagram_from_json(doc) -> PersistenceDiagram:
    if not isinstance(doc, dict) or "points" not in doc or not isinstance(doc["points"], list):
        raise SchemaError("diagram document must be {'points': [...]}")
    pts = []
    for entry in doc["points"]:
        if not isinstance(entry, dict) or any(k not in entry for k in ("b", "d", "class")):
            raise SchemaError(f"bad diagram point {entry!r}")
        b, d, cls = entry["b"], entry["d"], entry["class"]
        if not isinstance(b, (int, float)) or isinstance(b, bool):
            raise SchemaError(f"birth must be a number, got {b!r}")
        if d == "inf":
            d = math.inf
        elif not isinstance(d, (int, float)) or isinstance(d, bool):
            raise SchemaError(f"death must be a number or 'inf', got {d!r}")
        if cls not in CLASSES:
            raise SchemaError(f"unknown diagram class {cls!r}")
        pts.append(DiagramPoint(float(b), float(d), cls))
    return PersistenceDiagram(tuple(pts))


def cycle_to_json(c: Cycle) -> dict:
    return {"arcs": sorted(c.arcs)}


def cycle_from_json(doc, r: ReebGraph) -> Cycle:
    if not isinstance(doc, dict) or "arcs" not in doc or not isinstance(doc["arcs"], list):
        raise SchemaError("cycle document must be {'arcs': [...]}")
    for a in doc["arcs"]:
        if not isinstance(a, int) or isinstance(a, bool):
            raise SchemaError(f"arc ids must be integers, got {a!r}")
    return cycle_from_arcs(r, doc["arcs"])


def basis_to_json(b: CycleBasis) -> dict:
    return {"cycles": [{"arcs": sorted(c.arcs), "range": [c.lo, c.hi]} for c in b.cycles]}
