"""Chromatic bounds for digraphs without subdivisions of two-blocks cycles and bispindles.

Colorers return either a proper coloring within their bound or an explicit,
checkable subdivision. Supporting pieces: exact subdivision detectors,
secant-edge machinery for orderings and normal trees, coloring combinators,
tournament constructions, seeded generators and experiment runners.
"""

from .digraph import Coloring, Digraph, Graph, chromatic_number_exact, is_proper, underlying_graph
from .secancy import VertexOrdering, color_no_secant, degeneracy, secant_pairs
from .star_trees import (
    CounterexampleReport,
    color_normal_nosecant_general,
    color_star0,
    color_star1,
    color_whip,
    flatten_to_star_like,
)
from .structural import (
    ColorOrCertificate,
    color_hamcycle_b1free,
    color_hamcycle_bispindlefree,
    color_hamdipath_c2free,
    color_outtree_c2free,
    color_pathcover_c2free,
)
from .subdivisions import (
    PatternSpec,
    SubdivisionCertificate,
    dilation_report,
    find_bispindle,
    find_subdivision,
    find_two_blocks_cycle,
    validate_certificate,
)
from .tournaments import build_cycle_subdivision, find_two_blocks_path
from .trees import RootedTree, classify_star, make_maximal_out_tree, saturate

__version__ = "0.1.0"
