"""gedkit: exact graph edit distance with beam-stack search and similarity search."""

from .bounds import delta_bounds, h_estimate, lb_graph, node_split
from .engine import DEFAULT_BEAM_WIDTH, GedResult, SearchRun, bss_ged
from .graphs import (
    DUMMY_LABEL,
    GraphFormatError,
    LabelTable,
    LabeledGraph,
    VertexPartition,
    degree_sequence,
    label_multiset,
    neighborhood,
    parse_graph_db,
    serialize_graph_db,
    vertex_partition,
)
from .mapping import (
    GraphMapping,
    EditCostBreakdown,
    canonical_code,
    code_compare,
    edit_cost,
    induced_structure,
    realize_edit_path,
)
from .oracle import (
    OracleLimits,
    check_edit_path,
    exhaustive_ged,
    is_isomorphic,
)
from .simsearch import GraphDatabase, filter_candidates, range_query, verify_within
from .successors import (
    SearchNode,
    basic_gen_succr,
    determine_order,
    enumerate_search_tree,
    gen_succr,
    predicted_layer_count,
)

__all__ = [
    "DEFAULT_BEAM_WIDTH",
    "DUMMY_LABEL",
    "EditCostBreakdown",
    "GedResult",
    "GraphDatabase",
    "GraphFormatError",
    "GraphMapping",
    "LabelTable",
    "LabeledGraph",
    "OracleLimits",
    "SearchNode",
    "SearchRun",
    "VertexPartition",
    "basic_gen_succr",
    "bss_ged",
    "canonical_code",
    "check_edit_path",
    "code_compare",
    "degree_sequence",
    "delta_bounds",
    "determine_order",
    "edit_cost",
    "enumerate_search_tree",
    "exhaustive_ged",
    "filter_candidates",
    "gen_succr",
    "h_estimate",
    "induced_structure",
    "is_isomorphic",
    "label_multiset",
    "lb_graph",
    "neighborhood",
    "node_split",
    "parse_graph_db",
    "predicted_layer_count",
    "range_query",
    "realize_edit_path",
    "serialize_graph_db",
    "vertex_partition",
    "verify_within",
]
