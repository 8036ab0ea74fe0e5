"""Reeb graphs as multigraphs of critical nodes with monotone arcs.

Nodes carry raw scalar values; all comparisons go through the strict
total order (value, id), so equal raw values are still strictly ordered.
Every arc runs from its order-lower endpoint ``lo`` to ``hi``.  Nodes of
degree (1,1) are forbidden unless explicitly marked as subdivision
points (the ``regular`` set), mirroring the suppression of regular
points into arc interiors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InternalError, NonMonotoneArc, SchemaError, UnknownNode


@dataclass(frozen=True)
class Arc:
    id: int
    lo: int
    hi: int


@dataclass(frozen=True)
class ReebPoint:
    """A point of a Reeb graph: either a node or an arc-interior point."""

    node: int | None = None
    arc: int | None = None
    t: float | None = None

    def __post_init__(self):
        if (self.node is None) == (self.arc is None):
            raise ValueError("a ReebPoint is either a node or an arc point")
        if self.arc is not None and self.t is None:
            raise ValueError("arc points need a value")

    @staticmethod
    def at_node(node: int) -> "ReebPoint":
        return ReebPoint(node=node)

    @staticmethod
    def on_arc(arc: int, t: float) -> "ReebPoint":
        return ReebPoint(arc=arc, t=float(t))


@dataclass(frozen=True)
class NodeClass:
    up_degree: int
    down_degree: int
    tags: frozenset[str]


class ReebGraph:
    """Immutable multigraph; construct via module helpers, then only read."""

    def __init__(self, nodes: Mapping[int, float], arcs: Iterable, regular=(),
                 provenance: dict | None = None, check: bool = True):
        self.nodes: dict[int, float] = {int(n): float(f) for n, f in dict(nodes).items()}
        built = []
        for a in arcs:
            if isinstance(a, Arc):
                built.append(a)
            else:
                i, lo, hi = a
                built.append(Arc(int(i), int(lo), int(hi)))
        self.arcs: tuple[Arc, ...] = tuple(sorted(built, key=lambda a: a.id))
        self.regular: frozenset[int] = frozenset(regular)
        # provenance: complex vertex id -> ReebPoint (set by build_reeb)
        self.provenance = provenance

        self._adj: dict[int, list[tuple[Arc, int, bool]]] = {n: [] for n in self.nodes}
        for a in self.arcs:
            self._adj[a.lo].append((a, a.hi, True))
            self._adj[a.hi].append((a, a.lo, False))
        for n in self._adj:
            self._adj[n].sort(key=lambda item: item[0].id)
        self._arc_by_id: dict[int, Arc] = {a.id: a for a in self.arcs}
        if check:
            self._check()

    # -- order ------------------------------------------------------------

    def key(self, node: int):
        """Tie-break order key: ascending (value, id)."""
        return (self.nodes[node], node)

    def value(self, node: int) -> float:
        try:
            return self.nodes[node]
        except KeyError:
            raise UnknownNode(f"node {node} not in graph") from None

    def nodes_ascending(self) -> list[int]:
        return sorted(self.nodes, key=self.key)

    # -- structure --------------------------------------------------------

    def arc(self, arc_id: int) -> Arc:
        try:
            return self._arc_by_id[arc_id]
        except KeyError:
            raise UnknownNode(f"arc {arc_id} not in graph") from None

    def incident(self, node: int) -> list[tuple[Arc, int, bool]]:
        """Incident arcs as (arc, other endpoint, goes_up), sorted by arc id."""
        if node not in self._adj:
            raise UnknownNode(f"node {node} not in graph")
        return list(self._adj[node])

    def up_arcs(self, node: int) -> list[Arc]:
        return [a for a, _, up in self.incident(node) if up]

    def down_arcs(self, node: int) -> list[Arc]:
        return [a for a, _, up in self.incident(node) if not up]

    def degrees(self, node: int) -> tuple[int, int]:
        ups = downs = 0
        for _, _, up in self.incident(node):
            if up:
                ups += 1
            else:
                downs += 1
        return ups, downs

    def components(self) -> list[frozenset[int]]:
        parent = {n: n for n in self.nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.arcs:
            ra, rb = find(a.lo), find(a.hi)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, set[int]] = {}
        for n in self.nodes:
            groups.setdefault(find(n), set()).add(n)
        return [frozenset(groups[r]) for r in sorted(groups)]

    def cycle_rank(self) -> int:
        return len(self.arcs) - len(self.nodes) + len(self.components())

    def arc_height(self, a: Arc) -> float:
        return self.nodes[a.hi] - self.nodes[a.lo]

    def point_value(self, p: ReebPoint) -> float:
        if p.node is not None:
            return self.value(p.node)
        a = self.arc(p.arc)
        lo, hi = self.nodes[a.lo], self.nodes[a.hi]
        if not (lo < p.t < hi):
            raise UnknownNode(f"value {p.t} is not interior to arc {p.arc} [{lo},{hi}]")
        return p.t

    # -- invariants --------------------------------------------------------

    def _check(self):
        for a in self.arcs:
            if a.lo not in self.nodes or a.hi not in self.nodes:
                raise InternalError(f"arc {a} references a missing node")
            if a.lo == a.hi:
                raise NonMonotoneArc(f"arc {a.id} is a self-loop")
            if not self.key(a.lo) < self.key(a.hi):
                raise InternalError(f"arc {a} is not oriented by the order")
        if len(self._arc_by_id) != len(self.arcs):
            raise InternalError("duplicate arc ids")
        for n in self.regular:
            if n not in self.nodes:
                raise InternalError(f"regular mark on unknown node {n}")
        for n in self.nodes:
            ups, downs = self.degrees(n)
            if (ups, downs) == (1, 1) and n not in self.regular:
                raise InternalError(f"node {n} is regular but not marked")
            if n in self.regular and (ups, downs) != (1, 1):
                raise InternalError(f"marked node {n} has degrees {(ups, downs)}")

    # -- misc ---------------------------------------------------------------

    def structurally_equal(self, other: "ReebGraph") -> bool:
        return (self.nodes == other.nodes and self.arcs == other.arcs
                and self.regular == other.regular)

    def __repr__(self):
        return f"ReebGraph({len(self.nodes)} nodes, {len(self.arcs)} arcs)"


def classify(r: ReebGraph, node: int) -> NodeClass:
    """Criticality tags from up/down degrees."""
    ups, downs = r.degrees(node)
    tags = set()
    if downs == 0:
        tags.add("minimum")
    if ups == 0:
        tags.add("maximum")
    if downs >= 2:
        tags.add("down-fork")
    if ups >= 2:
        tags.add("up-fork")
    if len(tags) > 1:
        tags.add("degenerate")
    return NodeClass(ups, downs, frozenset(tags))


def suppress_regular(nodes: Mapping[int, float], arcs: Iterable[Arc],
                     keep: Iterable[int] = ()) -> tuple[dict[int, float], list[Arc]]:
    """Splice out degree-(1,1) nodes, merging their two arcs.

    Merged arcs take the smallest id among the absorbed ones, so ids stay
    unique and reproducible.  Nodes listed in ``keep`` survive.
    """
    nodes = dict(nodes)
    arc_map: dict[int, Arc] = {a.id: a for a in arcs}
    keep = set(keep)
    adj: dict[int, list[int]] = {n: [] for n in nodes}
    for a in arc_map.values():
        adj[a.lo].append(a.id)
        adj[a.hi].append(a.id)

    changed = True
    while changed:
        changed = False
        for n in sorted(nodes):
            if n in keep or len(adj[n]) != 2:
                continue
            i1, i2 = sorted(adj[n])
            if i1 == i2:
                continue  # both slots from one arc: degree-2 via a single arc is impossible
            a1, a2 = arc_map[i1], arc_map[i2]
            down = a1 if a1.hi == n else a2
            up = a2 if down is a1 else a1
            if not (down.hi == n and up.lo == n):
                continue  # not a pass-through point (double-min or double-max node)
            merged = Arc(min(i1, i2), down.lo, up.hi)
            del arc_map[i1], arc_map[i2], nodes[n], adj[n]
            arc_map[merged.id] = merged
            for end in (merged.lo, merged.hi):
                adj[end] = [i for i in adj[end] if i not in (i1, i2)] + [merged.id]
            changed = True
    return nodes, sorted(arc_map.values(), key=lambda a: a.id)


def _oriented_arcs(vals: dict[int, float], arcs) -> list[Arc]:
    out = []
    for entry in arcs:
        i, a, b = (entry.id, entry.lo, entry.hi) if isinstance(entry, Arc) else entry
        if a == b:
            raise NonMonotoneArc(f"arc {i} joins node {a} to itself")
        if (vals[a], a) < (vals[b], b):
            out.append(Arc(int(i), int(a), int(b)))
        else:
            out.append(Arc(int(i), int(b), int(a)))
    return out


def make_graph(nodes: Mapping[int, float], arcs, regular=()) -> ReebGraph:
    """Build a ReebGraph from loose (id, lo, hi) arcs, orienting by the order."""
    vals = {int(n): float(f) for n, f in dict(nodes).items()}
    return ReebGraph(vals, _oriented_arcs(vals, arcs), regular=regular)


def normalized(nodes: Mapping[int, float], arcs, keep=()) -> ReebGraph:
    """Orient, then suppress regular points not listed in ``keep``."""
    vals = {int(n): float(f) for n, f in dict(nodes).items()}
    nn, na = suppress_regular(vals, _oriented_arcs(vals, arcs), keep=keep)
    probe = ReebGraph(nn, na, check=False)
    marks = {n for n in frozenset(keep) & set(nn) if probe.degrees(n) == (1, 1)}
    return ReebGraph(nn, na, regular=marks)


# ---------------------------------------------------------------------------
# serialization


def graph_from_json(doc) -> ReebGraph:
    """Parse {"nodes":[{"id","f"}...],"arcs":[{"id","lo","hi"}...]}.

    Interior degree-(1,1) nodes are suppressed; arcs are oriented by the
    tie-break order.  Self-loop arcs raise NonMonotoneArc.
    """
    if not isinstance(doc, dict):
        raise SchemaError("graph document must be an object")
    if "nodes" not in doc:
        raise SchemaError("graph document lacks 'nodes'")
    raw_nodes = doc["nodes"]
    raw_arcs = doc.get("arcs", [])
    if not isinstance(raw_nodes, list) or not isinstance(raw_arcs, list):
        raise SchemaError("'nodes' and 'arcs' must be lists")
    nodes: dict[int, float] = {}
    for entry in raw_nodes:
        if not isinstance(entry, dict) or "id" not in entry or "f" not in entry:
            raise SchemaError(f"bad node entry {entry!r}")
        nid, f = entry["id"], entry["f"]
        if not isinstance(nid, int) or isinstance(nid, bool):
            raise SchemaError(f"node id must be an integer, got {nid!r}")
        if not isinstance(f, (int, float)) or isinstance(f, bool):
            raise SchemaError(f"node value must be a number, got {f!r}")
        if nid in nodes:
            raise SchemaError(f"duplicate node id {nid}")
        nodes[nid] = float(f)
    arcs = []
    seen_ids = set()
    for entry in raw_arcs:
        if not isinstance(entry, dict) or any(k not in entry for k in ("id", "lo", "hi")):
            raise SchemaError(f"bad arc entry {entry!r}")
        i, lo, hi = entry["id"], entry["lo"], entry["hi"]
        for v in (i, lo, hi):
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError(f"arc fields must be integers, got {entry!r}")
        if i in seen_ids:
            raise SchemaError(f"duplicate arc id {i}")
        seen_ids.add(i)
        if lo not in nodes or hi not in nodes:
            raise SchemaError(f"arc {i} references a missing node")
        arcs.append((i, lo, hi))
    return normalized(nodes, arcs)


def graph_to_json(r: ReebGraph) -> dict:
    return {
        "nodes": [{"id": n, "f": r.nodes[n]} for n in sorted(r.nodes)],
        "arcs": [{"id": a.id, "lo": a.lo, "hi": a.hi} for a in r.arcs],
    }
