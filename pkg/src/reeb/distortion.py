"""Bounds on the functional-distortion distance between two Reeb graphs.

The exact distance is an infimum over pairs of continuous maps and has
no known algorithm, so this module brackets it: a lower bound from
bottleneck distances of the diagrams (the 0-dimensional ones directly,
the 1-dimensional extended one divided by three), and an upper bound
from a branch-and-bound search over discrete map pairs on epsilon
subdivisions.  A discrete witness induces a continuous map pair by
sending each arc homeomorphically onto an interpolation path; its exact
cost over arc interiors is a one-dimensional time-warp optimum with a
closed form.  A brute-force correspondence search for the
Gromov-Hausdorff-style variant of the distance is included as an
independent desk-scale oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .bottleneck import bottleneck
from .errors import BudgetExceeded, InvalidWitness
from .graph import ReebGraph, ReebPoint
from .metric import all_pairs_df, df, subdivide
from .persistence import DiagramPoint, PersistenceDiagram, extended1, ordinary0


@dataclass(frozen=True)
class DiscreteMapPair:
    """Node maps between two subdivided graphs plus, per arc of either
    graph, the interpolation path its image follows in the other."""

    phi: dict[int, int]
    psi: dict[int, int]
    phi_paths: dict[int, tuple[int, ...]]
    psi_paths: dict[int, tuple[int, ...]]


@dataclass(frozen=True)
class DistortionReport:
    lower: float
    value: float          # best witness cost found (max of the four terms)
    slack: float          # additive discretization allowance
    upper: float          # value + slack: sound upper bound
    terms: dict[str, float]
    witness: DiscreteMapPair | None
    complete: bool        # search ran to exhaustion


@dataclass(frozen=True)
class FghReport:
    value: float
    slack: float
    pairs: tuple[tuple[int, int], ...]
    complete: bool


# ---------------------------------------------------------------------------
# helpers


def _walk(g: ReebGraph, start: int, arcs, end: int) -> list[int]:
    """Node sequence of a path given by consecutive arc ids."""
    nodes = [start]
    cur = start
    for aid in arcs:
        a = g.arc(aid)
        if a.lo == cur:
            cur = a.hi
        elif a.hi == cur:
            cur = a.lo
        else:
            raise InvalidWitness(f"arc {aid} does not continue the path at node {cur}")
    # re-walk to collect nodes (two passes keep the error message above simple)
    cur = start
    for aid in arcs:
        a = g.arc(aid)
        cur = a.hi if a.lo == cur else a.lo
        nodes.append(cur)
    if cur != end:
        raise InvalidWitness(f"path ends at node {cur}, expected {end}")
    return nodes


def _node_matrix(g: ReebGraph):
    ids = sorted(g.nodes)
    index = {n: i for i, n in enumerate(ids)}
    mat = all_pairs_df(g, [ReebPoint.at_node(n) for n in ids])
    return index, mat


def _warp_cost(s0: float, s1: float, profile: list[float]) -> float:
    """Least possible sup-distance between a monotone ramp from s0 to s1
    and a polyline forced through ``profile``, under synchronized
    traversal with fixed endpoints."""
    if s1 < s0:
        s0, s1 = -s0, -s1
        profile = [-x for x in profile]
    r = max(abs(s0 - profile[0]), abs(s1 - profile[-1]))
    runmax = -math.inf
    for x in profile:
        r = max(r, x - s1, s0 - x)
        if runmax - x > 2 * r:
            r = (runmax - x) / 2
        runmax = max(runmax, x)
    return r


def _min_height_path(g: ReebGraph, memo: dict, s: int, t: int):
    """Arc-id sequence of a path of minimal height from s to t, or None."""
    key = (s, t)
    if key in memo:
        return memo[key]
    if s == t:
        memo[key] = ()
        return ()
    ph = df(g, ReebPoint.at_node(s), ReebPoint.at_node(t))
    if ph.witness is None:
        memo[key] = None
        return None
    arcs = tuple(step for step in ph.witness if isinstance(step, int))
    memo[key] = arcs
    memo[(t, s)] = tuple(reversed(arcs))
    return arcs


def _profile_span(g: ReebGraph, start: int, arcs) -> tuple[float, float]:
    lo = hi = g.nodes[start]
    cur = start
    for aid in arcs:
        a = g.arc(aid)
        cur = a.hi if a.lo == cur else a.lo
        lo, hi = min(lo, g.nodes[cur]), max(hi, g.nodes[cur])
    return lo, hi


# ---------------------------------------------------------------------------
# evaluation


def eval_map_pair(rf: ReebGraph, rg: ReebGraph, m: DiscreteMapPair,
                  matf=None, matg=None):
    """The four cost terms of a discrete map pair, its value, and the
    discretization slack that makes value + slack a sound upper bound.

    Function-distortion terms are exact for the induced maps (per-arc
    time-warp optimum); round-trip terms are sampled at nodes, and the
    slack covers arc interiors: a point is within one arc height of a
    node, and its round-trip image stays on the image of the arc's
    interpolation path.
    """
    for n in rf.nodes:
        if n not in m.phi or m.phi[n] not in rg.nodes:
            raise InvalidWitness(f"phi is not defined on node {n} (into the other graph)")
    for n in rg.nodes:
        if n not in m.psi or m.psi[n] not in rf.nodes:
            raise InvalidWitness(f"psi is not defined on node {n} (into the other graph)")
    if matf is None:
        fidx, fmat = _node_matrix(rf)
    else:
        fidx, fmat = matf
    if matg is None:
        gidx, gmat = _node_matrix(rg)
    else:
        gidx, gmat = matg

    func_f = max((abs(rf.nodes[n] - rg.nodes[m.phi[n]]) for n in rf.nodes), default=0.0)
    for a in rf.arcs:
        if a.id not in m.phi_paths:
            raise InvalidWitness(f"no interpolation path for arc {a.id}")
        walk = _walk(rg, m.phi[a.lo], m.phi_paths[a.id], m.phi[a.hi])
        func_f = max(func_f, _warp_cost(rf.nodes[a.lo], rf.nodes[a.hi],
                                        [rg.nodes[w] for w in walk]))
    func_g = max((abs(rg.nodes[n] - rf.nodes[m.psi[n]]) for n in rg.nodes), default=0.0)
    for b in rg.arcs:
        if b.id not in m.psi_paths:
            raise InvalidWitness(f"no interpolation path for arc {b.id}")
        walk = _walk(rf, m.psi[b.lo], m.psi_paths[b.id], m.psi[b.hi])
        func_g = max(func_g, _warp_cost(rg.nodes[b.lo], rg.nodes[b.hi],
                                        [rf.nodes[w] for w in walk]))

    round_f = max((fmat[fidx[n]][fidx[m.psi[m.phi[n]]]] for n in rf.nodes), default=0.0)
    round_g = max((gmat[gidx[n]][gidx[m.phi[m.psi[n]]]] for n in rg.nodes), default=0.0)

    eps_f = max((rf.arc_height(a) for a in rf.arcs), default=0.0)
    eps_g = max((rg.arc_height(b) for b in rg.arcs), default=0.0)
    img_f = 0.0  # tallest pulled-back image of an interpolation path, f side
    for a in rf.arcs:
        lo = hi = rf.nodes[m.psi[m.phi[a.lo]]]
        cur = m.phi[a.lo]
        for bid in m.phi_paths[a.id]:
            b = rg.arc(bid)
            cur = b.hi if b.lo == cur else b.lo
            s, t = _profile_span(rf, m.psi[b.lo], m.psi_paths[bid])
            lo, hi = min(lo, s), max(hi, t)
        img_f = max(img_f, hi - lo)
    img_g = 0.0
    for b in rg.arcs:
        lo = hi = rg.nodes[m.phi[m.psi[b.lo]]]
        cur = m.psi[b.lo]
        for aid in m.psi_paths[b.id]:
            a = rf.arc(aid)
            cur = a.hi if a.lo == cur else a.lo
            s, t = _profile_span(rg, m.phi[a.lo], m.phi_paths[aid])
            lo, hi = min(lo, s), max(hi, t)
        img_g = max(img_g, hi - lo)

    terms = {
        "function_f": func_f,
        "function_g": func_g,
        "roundtrip_f": round_f,
        "roundtrip_g": round_g,
    }
    value = max(terms.values())
    slack = max(eps_f + img_f, eps_g + img_g)
    return terms, value, slack


# ---------------------------------------------------------------------------
# lower bound


def lower_bound(rf: ReebGraph, rg: ReebGraph, exclude_essential0: bool = True) -> float:
    """max(d_B of the two 0-dimensional diagrams, d_B(extended1) / 3)."""
    up_f, up_g = ordinary0(rf, "up"), ordinary0(rg, "up")
    down_f, down_g = ordinary0(rf, "down"), ordinary0(rg, "down")

    def pick(d: PersistenceDiagram, cls: str, mirror: bool):
        pts = list(d.restrict(cls).points)
        if not exclude_essential0:
            for p in d.restrict("essential0").points:
                pts.append(DiagramPoint(p.death, p.birth, cls) if mirror else p)
        return [(p.birth, p.death) for p in pts]

    v_up, _ = bottleneck(pick(up_f, "ordinary0-up", False),
                         pick(up_g, "ordinary0-up", False))
    v_down, _ = bottleneck(pick(down_f, "ordinary0-down", True),
                           pick(down_g, "ordinary0-down", True))
    v_ext, _ = bottleneck(extended1(rf), extended1(rg))
    return max(v_up, v_down, v_ext / 3.0)


# ---------------------------------------------------------------------------
# brute-force upper bound


def _candidate_targets(src: ReebGraph, dst: ReebGraph):
    """For each source node, all target nodes sorted by value closeness."""
    dst_sorted = sorted(dst.nodes, key=dst.key)
    out = {}
    for u in src.nodes:
        out[u] = sorted(dst_sorted, key=lambda t: (abs(src.nodes[u] - dst.nodes[t]),
                                                   dst.key(t)))
    return out


def _greedy_map(src: ReebGraph, dst: ReebGraph) -> dict[int, int]:
    targets = _candidate_targets(src, dst)
    return {u: targets[u][0] for u in src.nodes}


def _structure_map(src: ReebGraph, dst: ReebGraph) -> dict[int, int] | None:
    """Arc-by-arc nearest-value assignment when both sides subdivide
    graphs with identical node and arc id sets (e.g. a jittered copy)."""
    so = getattr(src, "arc_origin", None)
    do = getattr(dst, "arc_origin", None)
    if so is None or do is None:
        return None
    src_orig = {n for n in src.nodes if n not in src.regular}
    dst_orig = {n for n in dst.nodes if n not in dst.regular}
    if src_orig != dst_orig or set(so.values()) != set(do.values()):
        return None
    chains: dict[int, list[int]] = {}
    for sub_id, orig in do.items():
        a = dst.arc(sub_id)
        for n in (a.lo, a.hi):
            chains.setdefault(orig, []).append(n)
    phi = {}
    for u in src.nodes:
        if u in dst.nodes and (u in src_orig or u in dst_orig):
            phi[u] = u
            continue
        orig = None
        for sub_id, o in so.items():
            a = src.arc(sub_id)
            if u in (a.lo, a.hi):
                orig = o
                break
        pool = chains.get(orig, sorted(dst.nodes))
        phi[u] = min(pool, key=lambda t: (abs(src.nodes[u] - dst.nodes[t]), dst.key(t)))
    return phi


def _assemble(rf, rg, phi, psi, memo_g, memo_f) -> DiscreteMapPair | None:
    phi_paths = {}
    for a in rf.arcs:
        p = _min_height_path(rg, memo_g, phi[a.lo], phi[a.hi])
        if p is None:
            return None
        phi_paths[a.id] = p
    psi_paths = {}
    for b in rg.arcs:
        p = _min_height_path(rf, memo_f, psi[b.lo], psi[b.hi])
        if p is None:
            return None
        psi_paths[b.id] = p
    return DiscreteMapPair(phi, psi, phi_paths, psi_paths)


class _SearchBudget:
    def __init__(self, cap):
        self.cap = cap
        self.steps = 0
        self.exhausted = False

    def tick(self) -> bool:
        self.steps += 1
        if self.cap is not None and self.steps > self.cap:
            self.exhausted = True
        return not self.exhausted


def upper_bound_bruteforce(rf: ReebGraph, rg: ReebGraph, eps: float,
                           budget: int, search_cap: int | None = 500_000) -> DistortionReport:
    """Search discrete map pairs on eps-subdivisions for the cheapest
    witness.  The search enumerates node assignments in value order and
    prunes on the incumbent; interpolation paths are minimal-height
    paths between the assigned endpoints.  The reported ``upper`` is the
    witness cost plus the discretization slack, so it bounds the true
    distance even when the search is capped."""
    sub_f = subdivide(rf, eps)
    sub_g = subdivide(rg, eps)
    if len(sub_f.nodes) > budget or len(sub_g.nodes) > budget:
        raise BudgetExceeded(
            f"subdivision has {len(sub_f.nodes)}/{len(sub_g.nodes)} nodes, budget {budget}")
    fidx_mat = _node_matrix(sub_f)
    gidx_mat = _node_matrix(sub_g)
    fidx, fmat = fidx_mat
    gidx, gmat = gidx_mat
    memo_f: dict = {}
    memo_g: dict = {}

    best: list = [math.inf, None, None, None]  # value, terms, slack, witness

    def consider(phi, psi):
        m = _assemble(sub_f, sub_g, dict(phi), dict(psi), memo_g, memo_f)
        if m is None:
            return
        terms, value, slack = eval_map_pair(sub_f, sub_g, m, fidx_mat, gidx_mat)
        if value < best[0]:
            best[:] = [value, terms, slack, m]

    seeds = [( _greedy_map(sub_f, sub_g), _greedy_map(sub_g, sub_f) )]
    sm_f, sm_g = _structure_map(sub_f, sub_g), _structure_map(sub_g, sub_f)
    if sm_f is not None and sm_g is not None:
        seeds.append((sm_f, sm_g))
    for phi, psi in seeds:
        consider(phi, psi)

    nodes_f = sub_f.nodes_ascending()
    nodes_g = sub_g.nodes_ascending()
    targets_f = _candidate_targets(sub_f, sub_g)
    targets_g = _candidate_targets(sub_g, sub_f)
    clock = _SearchBudget(search_cap)

    def psi_phase(phi, i, psi, cost):
        if cost >= best[0] or not clock.tick():
            return
        if i == len(nodes_g):
            consider(phi, psi)
            return
        w = nodes_g[i]
        for t in targets_g[w]:
            c = abs(sub_g.nodes[w] - sub_f.nodes[t])
            if c >= best[0]:
                break  # targets are sorted by value gap
            c = max(c, gmat[gidx[w]][gidx[phi[t]]])
            for u, pu in phi.items():
                if pu == w:
                    c = max(c, fmat[fidx[u]][fidx[t]])
            arc_ok = True
            for b in sub_g.down_arcs(w):
                p = _min_height_path(sub_f, memo_f, psi[b.lo], t)
                if p is None:
                    arc_ok = False
                    break
                walk = _walk(sub_f, psi[b.lo], p, t)
                c = max(c, _warp_cost(sub_g.nodes[b.lo], sub_g.nodes[w],
                                      [sub_f.nodes[x] for x in walk]))
                if c >= best[0]:
                    break
            if not arc_ok or max(c, cost) >= best[0]:
                continue
            psi[w] = t
            psi_phase(phi, i + 1, psi, max(cost, c))
            del psi[w]

    def phi_phase(i, phi, cost):
        if cost >= best[0] or not clock.tick():
            return
        if i == len(nodes_f):
            psi_phase(phi, 0, {}, cost)
            return
        u = nodes_f[i]
        for t in targets_f[u]:
            c = abs(sub_f.nodes[u] - sub_g.nodes[t])
            if c >= best[0]:
                break
            arc_ok = True
            for a in sub_f.down_arcs(u):
                p = _min_height_path(sub_g, memo_g, phi[a.lo], t)
                if p is None:
                    arc_ok = False
                    break
                walk = _walk(sub_g, phi[a.lo], p, t)
                c = max(c, _warp_cost(sub_f.nodes[a.lo], sub_f.nodes[u],
                                      [sub_g.nodes[x] for x in walk]))
                if c >= best[0]:
                    break
            if not arc_ok or max(c, cost) >= best[0]:
                continue
            phi[u] = t
            phi_phase(i + 1, phi, max(cost, c))
            del phi[u]

    phi_phase(0, {}, 0.0)

    value, terms, slack, witness = best
    if witness is None:
        return DistortionReport(lower_bound(rf, rg), math.inf, 0.0, math.inf,
                                {}, None, not clock.exhausted)
    return DistortionReport(lower_bound(rf, rg), value, slack, value + slack,
                            terms, witness, not clock.exhausted)


def fgh_bruteforce(rf: ReebGraph, rg: ReebGraph, eps: float, budget: int,
                   search_cap: int | None = 500_000) -> FghReport:
    """Correspondence search for the Gromov-Hausdorff-style distance on
    eps-subdivision nodes: minimize the larger of the worst function gap
    and the worst metric distortion over all node correspondences.  The
    minimum over correspondences is attained on ones induced by a pair
    of maps, which is what the search enumerates."""
    sub_f = subdivide(rf, eps)
    sub_g = subdivide(rg, eps)
    if len(sub_f.nodes) > budget or len(sub_g.nodes) > budget:
        raise BudgetExceeded(
            f"subdivision has {len(sub_f.nodes)}/{len(sub_g.nodes)} nodes, budget {budget}")
    fidx, fmat = _node_matrix(sub_f)
    gidx, gmat = _node_matrix(sub_g)
    nodes_f = sub_f.nodes_ascending()
    nodes_g = sub_g.nodes_ascending()
    targets_f = _candidate_targets(sub_f, sub_g)
    targets_g = _candidate_targets(sub_g, sub_f)
    eps_eff = max([sub_f.arc_height(a) for a in sub_f.arcs] +
                  [sub_g.arc_height(b) for b in sub_g.arcs] + [0.0])

    def corr_cost(pairs) -> float:
        c = 0.0
        for x, y in pairs:
            c = max(c, abs(sub_f.nodes[x] - sub_g.nodes[y]))
        for i in range(len(pairs)):
            xi, yi = pairs[i]
            for j in range(i):
                xj, yj = pairs[j]
                c = max(c, abs(fmat[fidx[xi]][fidx[xj]] - gmat[gidx[yi]][gidx[yj]]))
        return c

    best: list = [math.inf, None]
    gf, gg = _greedy_map(sub_f, sub_g), _greedy_map(sub_g, sub_f)
    seed = [(u, gf[u]) for u in nodes_f] + [(gg[w], w) for w in nodes_g]
    c = corr_cost(seed)
    if c < best[0]:
        best[:] = [c, tuple(seed)]

    clock = _SearchBudget(search_cap)

    def extend(i, side, pairs, cost):
        if cost >= best[0] or not clock.tick():
            return
        if side == 0 and i == len(nodes_f):
            extend(0, 1, pairs, cost)
            return
        if side == 1 and i == len(nodes_g):
            if cost < best[0]:
                best[:] = [cost, tuple(pairs)]
            return
        src = nodes_f[i] if side == 0 else nodes_g[i]
        cands = targets_f[src] if side == 0 else targets_g[src]
        for t in cands:
            pair = (src, t) if side == 0 else (t, src)
            c = abs(sub_f.nodes[pair[0]] - sub_g.nodes[pair[1]])
            if c >= best[0]:
                break
            for x, y in pairs:
                c = max(c, abs(fmat[fidx[pair[0]]][fidx[x]] - gmat[gidx[pair[1]]][gidx[y]]))
                if c >= best[0]:
                    break
            if max(c, cost) >= best[0]:
                continue
            pairs.append(pair)
            extend(i + 1, side, pairs, max(cost, c))
            pairs.pop()

    extend(0, 0, [], 0.0)
    value, pairs = best
    return FghReport(value, 2 * eps_eff, pairs if pairs else (), not clock.exhausted)
