"""Exact optimization toolkit for linear graph reassembling.

A reassembling of a graph is a binary tree of vertex clusters built from
singletons up to the whole vertex set; its alpha measure is the largest
edge-boundary degree over all clusters and its beta measure is their sum.
This package evaluates both measures, converts between linear reassemblings
and linear arrangements, solves small instances exactly (subset DP and
brute-force references), and runs the auxiliary-graph reductions between
the two linear beta problems and the degree-3 alpha pipeline.
"""

from .errors import LimitError, ValidationError
from .graph import (Deg3Report, Graph, classify_deg3, complete_graph,
                    cycle_graph, format_graph, generate, parse_graph,
                    path_graph, qcube3_graph, ring_tree_graph, star_graph)
from .layout import (Arrangement, ArrangementReport, edge_length,
                     evaluate_arrangement, format_arrangement,
                     induce_arrangement, induce_reassembling,
                     is_anchored_arrangement, is_anchored_reassembling,
                     parse_arrangement, restrict_arrangement, restrict_tree)
from .reduction import (A2R, R2A, AlphaReductionReport, AuxiliaryGraph,
                        ReductionReport, VCSequence,
                        alpha_reassembling_from_arrangement, build_auxiliary,
                        descatter_move, normalize_sequence, rebalance_move,
                        reduce_alpha, reduce_beta, scatter, unbalance,
                        vc_sequence)
from .sequential import (MergeStep, SeqTrace, block_tree, canonical_ordering,
                         chain_to_ordering, format_ordering, parse_ordering,
                         seq_reassemble)
from .solvers import (SolveResult, brute_force_arrangement,
                      brute_force_binary_reassembling, count_binary_trees,
                      exact_arrangement, exact_linear_reassembling)
from .tree import (MeasureReport, ReassemblyTree, cross_sections, is_strict,
                   first_nonstrict_pair, measures, parse_tree, print_tree,
                   validate_tree)

__version__ = "0.1.0"

__all__ = [
    "A2R", "R2A", "AlphaReductionReport", "Arrangement", "ArrangementReport",
    "AuxiliaryGraph", "Deg3Report", "Graph", "LimitError", "MeasureReport",
    "MergeStep", "ReassemblyTree", "ReductionReport", "SeqTrace",
    "SolveResult", "VCSequence", "ValidationError",
    "alpha_reassembling_from_arrangement", "block_tree", "build_auxiliary",
    "canonical_ordering", "chain_to_ordering", "classify_deg3",
    "complete_graph", "count_binary_trees", "cross_sections", "cycle_graph",
    "descatter_move", "edge_length", "evaluate_arrangement",
    "exact_arrangement", "exact_linear_reassembling", "first_nonstrict_pair",
    "format_arrangement", "format_graph", "format_ordering", "generate",
    "induce_arrangement", "induce_reassembling", "is_anchored_arrangement",
    "is_anchored_reassembling", "is_strict", "measures",
    "brute_force_arrangement", "brute_force_binary_reassembling",
    "normalize_sequence", "parse_arrangement", "parse_graph",
    "parse_ordering", "parse_tree", "path_graph", "print_tree",
    "qcube3_graph", "rebalance_move", "reduce_alpha", "reduce_beta",
    "restrict_arrangement", "restrict_tree", "ring_tree_graph", "scatter",
    "seq_reassemble", "star_graph", "unbalance", "validate_tree",
    "vc_sequence",
]
