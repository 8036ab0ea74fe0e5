"""Bottleneck distance between persistence diagrams.

Exact computation: the optimal value is one of finitely many candidate
costs (pairwise L-infinity distances and diagonal costs), so a binary
search over the sorted candidates with a bipartite-matching feasibility
test finds it.  Points may match the diagonal at half their lifetime.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfiniteMismatch
from .graph import ReebGraph
from .persistence import PersistenceDiagram, extended1, ordinary0


@dataclass(frozen=True)
class Matching:
    """Pairs of point indices; None stands for the diagonal."""

    pairs: tuple[tuple[int | None, int | None], ...]
    cost: float


def _points(d) -> list[tuple[float, float]]:
    if isinstance(d, PersistenceDiagram):
        return [(p.birth, p.death) for p in d.points]
    return [(float(b), float(dd)) for b, dd in d]


def _linf(p, q) -> float:
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _diag(p) -> float:
    return abs(p[1] - p[0]) / 2


def _max_matching(n_left: int, n_right: int, adjacency) -> list[int]:
    """Kuhn's augmenting-path matching; returns right-to-left assignment."""
    match_right = [-1] * n_right
    match_left = [-1] * n_left

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adjacency(u):
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                match_left[u] = v
                return True
        return False

    for u in range(n_left):
        augment(u, [False] * n_right)
    return match_right


def bottleneck(d1, d2) -> tuple[float, Matching]:
    """Exact bottleneck distance and an optimal matching.

    Accepts diagrams or plain (birth, death) sequences; the caller is
    expected to restrict diagrams to a single class first.  Points with
    infinite death must be in bijection by count; they are paired in
    birth order at cost |birth difference|.
    """
    p1, p2 = _points(d1), _points(d2)
    fin1 = [i for i, p in enumerate(p1) if math.isfinite(p[1])]
    fin2 = [i for i, p in enumerate(p2) if math.isfinite(p[1])]
    inf1 = [i for i in range(len(p1)) if i not in fin1]
    inf2 = [i for i in range(len(p2)) if i not in fin2]
    if len(inf1) != len(inf2):
        raise InfiniteMismatch(
            f"{len(inf1)} vs {len(inf2)} infinite points cannot be matched")
    inf1.sort(key=lambda i: p1[i][0])
    inf2.sort(key=lambda i: p2[i][0])
    inf_pairs = list(zip(inf1, inf2))
    inf_cost = max((abs(p1[i][0] - p2[j][0]) for i, j in inf_pairs), default=0.0)

    a = [p1[i] for i in fin1]
    b = [p2[j] for j in fin2]
    n1, n2 = len(a), len(b)
    diag1 = [_diag(p) for p in a]
    diag2 = [_diag(q) for q in b]

    candidates = {0.0}
    candidates.update(diag1)
    candidates.update(diag2)
    for p in a:
        for q in b:
            candidates.add(_linf(p, q))
    cand = sorted(candidates)

    # left: D1 points then proxies of D2 points; right: D2 points then
    # proxies of D1 points.  A proxy stands for the diagonal.
    def solve(lam: float) -> list[int]:
        def adjacency(u: int):
            out = []
            if u < n1:
                for j in range(n2):
                    if _linf(a[u], b[j]) <= lam:
                        out.append(j)
                if diag1[u] <= lam:
                    out.append(n2 + u)
            else:
                j = u - n1
                if diag2[j] <= lam:
                    out.append(j)
                out.extend(range(n2, n2 + n1))
            return out
        return _max_matching(n1 + n2, n2 + n1, adjacency)

    def feasible(match_right) -> bool:
        return all(m != -1 for m in match_right[:n2]) and \
            sum(1 for m in match_right if m != -1) == n1 + n2

    lo, hi = 0, len(cand) - 1
    best = None
    while lo <= hi:
        mid = (lo + hi) // 2
        m = solve(cand[mid])
        if feasible(m):
            best = (cand[mid], m)
            hi = mid - 1
        else:
            lo = mid + 1
    if best is None:
        # only possible when both finite sets are empty
        assert n1 == 0 and n2 == 0
        best = (0.0, [])
    lam, match_right = best

    pairs: list[tuple[int | None, int | None]] = []
    for v, u in enumerate(match_right):
        if u == -1:
            continue
        if v < n2 and u < n1:
            pairs.append((fin1[u], fin2[v]))
        elif v < n2:
            pairs.append((None, fin2[v]))
        elif u < n1:
            pairs.append((fin1[u], None))
    pairs.extend(inf_pairs)
    value = max(lam, inf_cost)
    return value, Matching(tuple(sorted(pairs, key=lambda t: (t[0] is None, t[0] or 0, t[1] is None, t[1] or 0))), value)


def bottleneck_all_classes(rf: ReebGraph, rg: ReebGraph) -> dict[str, float]:
    """Per-class bottleneck values between the diagrams of two graphs."""
    out = {}
    for cls, dig in (
        ("ordinary0-up", lambda r: ordinary0(r, "up").restrict("ordinary0-up")),
        ("ordinary0-down", lambda r: ordinary0(r, "down").restrict("ordinary0-down")),
        ("extended1", extended1),
    ):
        value, _ = bottleneck(dig(rf), dig(rg))
        out[cls] = value
    return out
