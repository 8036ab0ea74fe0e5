"""Reeb graphs of piecewise-linear scalar fields.

Construction from simplicial 2-complexes, the path-height metric,
ordinary and extended persistence diagrams, thinnest cycle bases,
bottleneck distances, functional-distortion bounds, and
persistence-guided simplification with verified stability.
"""
from .complexes import (ScalarComplex, TotalOrder, ValidationReport,
                        complex_from_json, complex_from_off, complex_to_json,
                        make_complex, tie_break, validate)
from .build import build_reeb
from .graph import (Arc, NodeClass, ReebGraph, ReebPoint, classify,
                    graph_from_json, graph_to_json, make_graph, normalized)
from .metric import PathHeight, all_pairs_df, df, subdivide
from .persistence import (Cycle, CycleBasis, Decomposition, DiagramPoint,
                          PersistenceDiagram, cycle_from_arcs, decompose,
                          diagram_from_json, diagram_to_json, extended1,
                          full_diagram, is_alpha_matching, ordinary0,
                          thinnest_basis)
from .bottleneck import Matching, bottleneck, bottleneck_all_classes
from .distortion import (DiscreteMapPair, DistortionReport, FghReport,
                         eval_map_pair, fgh_bruteforce, lower_bound,
                         upper_bound_bruteforce)
from .simplify import (FeaturePair, MergingPath, QuotientMap,
                       SimplificationReport, feature_pairs, merging_path,
                       simplify, verify_simplification)
from .plot import export_plot

__all__ = [
    "Arc", "Cycle", "CycleBasis", "Decomposition", "DiagramPoint",
    "DiscreteMapPair", "DistortionReport", "FeaturePair", "FghReport",
    "Matching", "MergingPath", "NodeClass", "PathHeight",
    "PersistenceDiagram", "QuotientMap", "ReebGraph", "ReebPoint",
    "ScalarComplex", "SimplificationReport", "TotalOrder",
    "ValidationReport", "all_pairs_df", "bottleneck",
    "bottleneck_all_classes", "build_reeb", "classify", "complex_from_json",
    "complex_from_off", "complex_to_json", "cycle_from_arcs", "decompose",
    "df", "diagram_from_json", "diagram_to_json", "eval_map_pair",
    "export_plot", "extended1", "feature_pairs", "fgh_bruteforce",
    "full_diagram", "graph_from_json", "graph_to_json", "is_alpha_matching",
    "lower_bound", "make_complex", "make_graph", "merging_path",
    "normalized", "ordinary0", "simplify", "subdivide", "thinnest_basis",
    "tie_break", "upper_bound_bruteforce", "validate",
    "verify_simplification",
]
