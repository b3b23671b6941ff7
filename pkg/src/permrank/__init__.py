"""Weighted Kendall tau distance on permutations, with exact rational arithmetic.

The submodules mirror the mathematics: ``perm`` (permutations and
discordance sets), ``weights`` (weight matrices and the distance),
``graph`` (the labeled permutohedron and betweenness), ``quadruples``
(pseudolinear quadruples) and ``conjecture`` (structure conditions on
finite metric tables).
"""
from .errors import *  # noqa: F401,F403
from .perm import (
    IndexPair,
    PairSet,
    Permutation,
    adjacent_transposition,
    all_permutations,
    discordance_indicator,
    discordance_set,
    identity,
    inversion_set,
    make_permutation,
    ordinal_inverse,
)
from .weights import (
    WeightMatrix,
    discordant_weight,
    distance,
    generic_weights,
    is_metric,
    kendall_correlation,
    kendall_tau_weights,
    make_weight_matrix,
    normalized_kendall,
    product_weights,
    zero_distance_witness,
)
from .graph import (
    Cycle,
    LabeledGraph,
    Path,
    build_graph,
    graph_distance,
    is_shortest_path,
    is_vertex_transitive_check,
    lies_between_dsc,
    lies_between_metric,
    shortest_paths,
    to_dot,
)
from .quadruples import (
    QuadrupleCertificate,
    antipodal_quadruple,
    generic_diametrical_criterion,
    is_pseudolinear,
    is_symmetric_labeling,
    label_multiplicity_condition,
    opposite_vertex,
    quadruples_from_cycle,
)
from .conjecture import (
    ConditionReport,
    MetricTable,
    check_conditions,
    embed_sn,
    isometry_search_n3,
    make_metric_table,
)

__version__ = "0.1.0"
