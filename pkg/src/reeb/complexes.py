"""Scalar fields on simplicial 2-complexes.

A :class:`ScalarComplex` stores a finite simplicial complex (vertices,
edges, triangles) together with one scalar value per vertex.  Downstream
code never compares raw values directly: it uses the strict total order
produced by :func:`tie_break`, which breaks value ties by vertex id.
Reported coordinates always stay in raw values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import SchemaError


@dataclass(frozen=True)
class ScalarComplex:
    """A simplicial 2-complex with one finite scalar per vertex."""

    vertices: tuple[tuple[int, float], ...]
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]

    def value(self, vid: int) -> float:
        return dict(self.vertices)[vid]


@dataclass(frozen=True)
class TotalOrder:
    """Strict total order on vertex ids: ascending (value, id)."""

    order: tuple[int, ...]
    rank: dict[int, int] = field(compare=False)

    def key(self, vid: int) -> int:
        return self.rank[vid]


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.problems


def make_complex(vertices, edges=(), triangles=()) -> ScalarComplex:
    """Build a ScalarComplex from plain sequences.

    ``vertices`` is an iterable of (id, value); edges and triangles are
    id tuples.  No validation happens here; call :func:`validate`.
    """
    vs = tuple((int(v), float(f)) for v, f in vertices)
    es = tuple((int(a), int(b)) for a, b in edges)
    ts = tuple((int(a), int(b), int(c)) for a, b, c in triangles)
    return ScalarComplex(vs, es, ts)


def validate(c: ScalarComplex) -> ValidationReport:
    """Report dangling references, duplicate simplices, missing faces and
    non-finite values.  The complex is valid iff the report is empty."""
    problems: list[str] = []
    ids = [v for v, _ in c.vertices]
    known = set(ids)
    if len(known) != len(ids):
        seen: set[int] = set()
        for v in ids:
            if v in seen:
                problems.append(f"duplicate vertex id {v}")
            seen.add(v)
    for v, f in c.vertices:
        if not math.isfinite(f):
            problems.append(f"non-finite value {f!r} at vertex {v}")

    edge_keys: set[frozenset[int]] = set()
    for a, b in c.edges:
        if a == b:
            problems.append(f"degenerate edge ({a},{b})")
            continue
        for v in (a, b):
            if v not in known:
                problems.append(f"edge ({a},{b}) references missing vertex {v}")
        key = frozenset((a, b))
        if key in edge_keys:
            problems.append(f"duplicate edge ({a},{b})")
        edge_keys.add(key)

    tri_keys: set[frozenset[int]] = set()
    for a, b, t in c.triangles:
        tri = (a, b, t)
        if len(set(tri)) != 3:
            problems.append(f"degenerate triangle {tri}")
            continue
        missing = [v for v in tri if v not in known]
        for v in missing:
            problems.append(f"triangle {tri} references missing vertex {v}")
        key = frozenset(tri)
        if key in tri_keys:
            problems.append(f"duplicate triangle {tri}")
        tri_keys.add(key)
        if missing:
            continue
        for u, w in ((a, b), (a, t), (b, t)):
            if frozenset((u, w)) not in edge_keys:
                problems.append(f"triangle {tri} is missing face ({u},{w})")
    return ValidationReport(tuple(problems))


def tie_break(c: ScalarComplex) -> TotalOrder:
    """Strict total order on vertices: by scalar value, ties by id."""
    vals = dict(c.vertices)
    order = tuple(sorted(vals, key=lambda v: (vals[v], v)))
    return TotalOrder(order, {v: i for i, v in enumerate(order)})


# ---------------------------------------------------------------------------
# serialization


def complex_from_json(doc) -> ScalarComplex:
    """Parse {"vertices":[{"id","f"}...],"edges":[[a,b]...],"triangles":[[a,b,c]...]}."""
    if not isinstance(doc, dict):
        raise SchemaError("complex document must be an object")
    try:
        raw_vs = doc["vertices"]
    except KeyError:
        raise SchemaError("complex document lacks 'vertices'") from None
    if not isinstance(raw_vs, list):
        raise SchemaError("'vertices' must be a list")
    vertices = []
    for entry in raw_vs:
        if not isinstance(entry, dict) or "id" not in entry or "f" not in entry:
            raise SchemaError(f"bad vertex entry {entry!r}")
        if not isinstance(entry["id"], int) or isinstance(entry["id"], bool):
            raise SchemaError(f"vertex id must be an integer, got {entry['id']!r}")
        if not isinstance(entry["f"], (int, float)) or isinstance(entry["f"], bool):
            raise SchemaError(f"vertex value must be a number, got {entry['f']!r}")
        vertices.append((entry["id"], float(entry["f"])))

    def id_list(name, arity):
        raw = doc.get(name, [])
        if not isinstance(raw, list):
            raise SchemaError(f"'{name}' must be a list")
        out = []
        for entry in raw:
            if (not isinstance(entry, list) or len(entry) != arity
                    or any(not isinstance(v, int) or isinstance(v, bool) for v in entry)):
                raise SchemaError(f"bad {name} entry {entry!r}")
            out.append(tuple(entry))
        return tuple(out)

    return ScalarComplex(tuple(vertices), id_list("edges", 2), id_list("triangles", 3))


def complex_to_json(c: ScalarComplex) -> dict:
    return {
        "vertices": [{"id": v, "f": f} for v, f in c.vertices],
        "edges": [list(e) for e in c.edges],
        "triangles": [list(t) for t in c.triangles],
    }


def complex_from_off(off_text: str, scalars_text: str) -> ScalarComplex:
    """Parse an OFF mesh plus a per-vertex scalar file (one number per line).

    Only triangular faces are accepted; edges are the faces' edges.
    Vertex ids follow the OFF file order, starting at 0.
    """
    tokens: list[str] = []
    for line in off_text.splitlines():
        body = line.split("#", 1)[0].strip()
        if body:
            tokens.extend(body.split())
    if not tokens or tokens[0].upper() != "OFF":
        raise SchemaError("not an OFF file (missing OFF header)")
    tokens = tokens[1:]
    try:
        nv, nf = int(tokens[0]), int(tokens[1])
        int(tokens[2])  # edge count, unused
    except (IndexError, ValueError):
        raise SchemaError("OFF header lacks vertex/face/edge counts") from None
    pos = 3
    if len(tokens) < pos + 3 * nv:
        raise SchemaError("OFF file: vertex section truncated")
    pos += 3 * nv  # coordinates are irrelevant to the scalar field

    triangles = []
    for _ in range(nf):
        try:
            k = int(tokens[pos])
        except (IndexError, ValueError):
            raise SchemaError("OFF file: face section truncated") from None
        if k != 3:
            raise SchemaError(f"only triangular faces are supported, got a {k}-gon")
        face = tuple(int(t) for t in tokens[pos + 1:pos + 4])
        if any(v < 0 or v >= nv for v in face):
            raise SchemaError(f"face {face} references a vertex out of range")
        triangles.append(face)
        pos += 4

    scalars = [s for s in (line.strip() for line in scalars_text.splitlines()) if s]
    if len(scalars) != nv:
        raise SchemaError(f"scalar file has {len(scalars)} values for {nv} vertices")
    try:
        values = [float(s) for s in scalars]
    except ValueError as exc:
        raise SchemaError(f"bad scalar value: {exc}") from None

    edge_keys: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for a, b, t in triangles:
        for u, w in ((a, b), (a, t), (b, t)):
            key = (min(u, w), max(u, w))
            if key not in seen:
                seen.add(key)
                edge_keys.append(key)
    vertices = tuple((i, values[i]) for i in range(nv))
    return ScalarComplex(vertices, tuple(edge_keys), tuple(triangles))
