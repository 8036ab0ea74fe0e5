"""Command-line front end.

Machine-readable JSON goes to stdout (CSV for the metric matrix), a one
line human summary to stderr.  Exit codes: 0 success, 1 input/schema
problems, 2 budget exceeded, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import errors
from .bottleneck import bottleneck
from .build import build_reeb
from .complexes import complex_from_json, complex_from_off, complex_to_json, validate
from .distortion import fgh_bruteforce, lower_bound, upper_bound_bruteforce
from .gen import random_complex, random_diagram, random_graph, random_tree
from .graph import ReebPoint, graph_from_json, graph_to_json
from .metric import all_pairs_df
from .persistence import (CLASSES, basis_to_json, diagram_from_json,
                          diagram_to_json, extended1, full_diagram, ordinary0,
                          thinnest_basis)
from .plot import export_plot
from .simplify import simplify, verify_simplification


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise errors.SchemaError(f"{path}: {exc}") from None


def _load_graph(path: str):
    return graph_from_json(_load_json(path))


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc) + "\n")


def _note(msg: str) -> None:
    sys.stderr.write(msg + "\n")


# -- commands ----------------------------------------------------------------


def _cmd_build(args) -> int:
    if args.format == "off" or (args.format == "auto" and args.input.endswith(".off")):
        if not args.scalars:
            raise errors.SchemaError("OFF input needs --scalars FILE")
        with open(args.input, "r", encoding="utf-8") as fh:
            off_text = fh.read()
        with open(args.scalars, "r", encoding="utf-8") as fh:
            scalars = fh.read()
        c = complex_from_off(off_text, scalars)
    else:
        c = complex_from_json(_load_json(args.input))
    rep = validate(c)
    if not rep.valid:
        raise errors.InvalidComplex("; ".join(rep.problems))
    r = build_reeb(c)
    _emit(graph_to_json(r))
    _note(f"built Reeb graph: {len(r.nodes)} nodes, {len(r.arcs)} arcs, "
          f"cycle rank {r.cycle_rank()}")
    return 0


def _cmd_diagram(args) -> int:
    r = _load_graph(args.graph)
    d = full_diagram(r)
    if args.diagram_class != "all":
        d = d.restrict(args.diagram_class)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(export_plot(d))
    _emit(diagram_to_json(d))
    _note(f"{len(d.points)} diagram points")
    return 0


def _cmd_basis(args) -> int:
    r = _load_graph(args.graph)
    b = thinnest_basis(r)
    _emit(basis_to_json(b))
    _note(f"thinnest basis with {len(b)} cycles")
    return 0


def _cmd_bottleneck(args) -> int:
    d1 = diagram_from_json(_load_json(args.d1)).restrict(args.diagram_class)
    d2 = diagram_from_json(_load_json(args.d2)).restrict(args.diagram_class)
    value, matching = bottleneck(d1, d2)
    doc = {"value": value}
    if args.matching:
        doc["matching"] = [[a, b] for a, b in matching.pairs]
    _emit(doc)
    _note(f"bottleneck distance {value}")
    return 0


def _cmd_distance(args) -> int:
    rf, rg = _load_graph(args.f), _load_graph(args.g)
    exclude = not args.include_essential0
    lower = lower_bound(rf, rg, exclude_essential0=exclude)
    doc = {"lower": lower}
    if not args.lower_only:
        rep = upper_bound_bruteforce(rf, rg, eps=args.eps, budget=args.budget,
                                     search_cap=args.search_cap)
        doc.update({
            "value": rep.value, "slack": rep.slack, "upper": rep.upper,
            "terms": rep.terms, "complete": rep.complete,
        })
        if rep.witness is not None and args.witness:
            w = rep.witness
            doc["witness"] = {
                "phi": {str(k): v for k, v in sorted(w.phi.items())},
                "psi": {str(k): v for k, v in sorted(w.psi.items())},
                "phi_paths": {str(k): list(v) for k, v in sorted(w.phi_paths.items())},
                "psi_paths": {str(k): list(v) for k, v in sorted(w.psi_paths.items())},
            }
    if args.fgh:
        rep = fgh_bruteforce(rf, rg, eps=args.eps, budget=args.budget,
                             search_cap=args.search_cap)
        doc["fgh"] = {"value": rep.value, "slack": rep.slack,
                      "complete": rep.complete}
    _emit(doc)
    _note(f"distance bracket: [{doc['lower']}, {doc.get('upper', 'n/a')}]")
    return 0


def _cmd_metric(args) -> int:
    r = _load_graph(args.graph)
    if args.points:
        raw = _load_json(args.points)
        pts, labels = [], []
        for entry in raw:
            if "node" in entry:
                pts.append(ReebPoint.at_node(entry["node"]))
                labels.append(f"n{entry['node']}")
            else:
                pts.append(ReebPoint.on_arc(entry["arc"], float(entry["t"])))
                labels.append(f"a{entry['arc']}@{entry['t']}")
    else:
        ids = sorted(r.nodes)
        pts = [ReebPoint.at_node(n) for n in ids]
        labels = [f"n{n}" for n in ids]
    mat = all_pairs_df(r, pts)
    out = ["," + ",".join(labels)]
    for lab, row in zip(labels, mat):
        out.append(lab + "," + ",".join(str(v) for v in row))
    sys.stdout.write("\n".join(out) + "\n")
    _note(f"{len(pts)}x{len(pts)} distance matrix")
    return 0


def _cmd_simplify(args) -> int:
    r = _load_graph(args.graph)
    simplified, quotient = simplify(r, delta=args.delta,
                                    fixed_point=args.fixed_point)
    gdoc = graph_to_json(simplified)
    if args.verify:
        rep = verify_simplification(r, simplified, args.delta, quotient,
                                    seed=args.seed)
        _emit({"graph": gdoc, "verify": {
            "bottleneck": {"ordinary0-up": rep.db_up,
                           "ordinary0-down": rep.db_down,
                           "extended1": rep.db_ext},
            "bounds_ok": rep.bounds_ok,
            "contraction_violations": len(rep.contraction_violations),
            "fiber_violations": len(rep.fiber_violations),
            "survivors": [list(s) for s in rep.survivors],
        }})
    else:
        _emit(gdoc)
    _note(f"simplified to {len(simplified.nodes)} nodes, "
          f"{len(simplified.arcs)} arcs")
    return 0


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.kind == "tree":
        doc = graph_to_json(random_tree(rng, args.nodes))
    elif args.kind == "graph":
        doc = graph_to_json(random_graph(rng, args.nodes, args.cycle_rank))
    elif args.kind == "complex":
        c = random_complex(rng, args.nodes, 2 * args.nodes, args.nodes // 2)
        doc = complex_to_json(c)
    else:
        doc = diagram_to_json(random_diagram(rng, args.nodes))
    _emit(doc)
    _note(f"generated {args.kind} (seed {args.seed})")
    return 0


# -- wiring -------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reeb", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="Reeb graph of a scalar complex")
    b.add_argument("input")
    b.add_argument("--format", choices=("auto", "json", "off"), default="auto")
    b.add_argument("--scalars", help="per-vertex scalar file for OFF input")
    b.set_defaults(fn=_cmd_build)

    d = sub.add_parser("diagram", help="persistence diagram of a Reeb graph")
    d.add_argument("graph")
    d.add_argument("--class", dest="diagram_class", default="all",
                   choices=("all",) + CLASSES)
    d.add_argument("--svg", help="also write an SVG plot to this path")
    d.set_defaults(fn=_cmd_diagram)

    s = sub.add_parser("basis", help="thinnest cycle basis")
    s.add_argument("graph")
    s.set_defaults(fn=_cmd_basis)

    bn = sub.add_parser("bottleneck", help="bottleneck distance of two diagrams")
    bn.add_argument("d1")
    bn.add_argument("d2")
    bn.add_argument("--class", dest="diagram_class", default="extended1",
                    choices=CLASSES)
    bn.add_argument("--matching", action="store_true")
    bn.set_defaults(fn=_cmd_bottleneck)

    di = sub.add_parser("distance", help="functional-distortion bounds")
    di.add_argument("f")
    di.add_argument("g")
    di.add_argument("--eps", type=float, default=0.5)
    di.add_argument("--budget", type=int, default=14)
    di.add_argument("--search-cap", type=int, default=500_000)
    di.add_argument("--lower-only", action="store_true")
    di.add_argument("--include-essential0", action="store_true")
    di.add_argument("--fgh", action="store_true")
    di.add_argument("--witness", action="store_true")
    di.set_defaults(fn=_cmd_distance)

    mt = sub.add_parser("metric", help="pairwise path-height distances as CSV")
    mt.add_argument("graph")
    mt.add_argument("--points", help="JSON list of {'node':id} or {'arc':id,'t':v}")
    mt.set_defaults(fn=_cmd_metric)

    si = sub.add_parser("simplify", help="persistence-guided simplification")
    si.add_argument("graph")
    si.add_argument("--delta", type=float, required=True)
    si.add_argument("--verify", action="store_true")
    si.add_argument("--fixed-point", action="store_true")
    si.add_argument("--seed", type=int, default=0)
    si.set_defaults(fn=_cmd_simplify)

    g = sub.add_parser("gen", help="random test data")
    g.add_argument("--kind", choices=("tree", "graph", "complex", "diagram"),
                   default="graph")
    g.add_argument("--nodes", type=int, default=8)
    g.add_argument("--cycle-rank", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(fn=_cmd_gen)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except errors.BudgetExceeded as exc:
        _note(f"budget exceeded: {exc}")
        return 2
    except (errors.InternalError, AssertionError) as exc:
        _note(f"internal invariant violation: {exc}")
        return 3
    except (errors.ReebError, ValueError, OSError) as exc:
        _note(f"error: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
