"""Approximating long cycles and (s,t)-paths above the minimum-degree guarantees."""

from .dirac import (
    CycleOutcome,
    DiracDecomposition,
    approximate_long_cycle,
    approximate_long_path,
    enlarge_or_decompose_cycle,
    validate_dirac_decomposition,
)
from .eg import (
    EGDecomposition,
    NestedEGDecomposition,
    ViolationReport,
    boost_non_entering_path,
    build_nested_decomposition,
    eg_component_to_instance,
    long_path_in_separable,
    long_path_or_eg_decomposition,
    validate_eg_decomposition,
)
from .graph import (
    BlockTree,
    ContractionLog,
    CycleWitness,
    Graph,
    GraphError,
    PathWitness,
    block_cut_tree,
    connectivity_profile,
    contract_edges,
    min_degree,
    reverse,
    validate_witness,
)
from .oracles import (
    ApproximatorHandle,
    OracleReport,
    eg_long_st_path,
    exact_longest_cycle,
    exact_longest_st_path,
    get_oracle,
    path_between_via_cycle,
    st_path_from_cycle_oracle,
    two_disjoint_paths_min_total,
)
from .stpath import (
    CompressedGraph,
    approximate_long_st_path,
    long_nested_st_path,
    nested_compress,
    nested_decompress,
)

__all__ = [
    "ApproximatorHandle",
    "BlockTree",
    "CompressedGraph",
    "ContractionLog",
    "CycleOutcome",
    "CycleWitness",
    "DiracDecomposition",
    "EGDecomposition",
    "Graph",
    "GraphError",
    "NestedEGDecomposition",
    "OracleReport",
    "PathWitness",
    "ViolationReport",
    "approximate_long_cycle",
    "approximate_long_path",
    "approximate_long_st_path",
    "block_cut_tree",
    "boost_non_entering_path",
    "build_nested_decomposition",
    "connectivity_profile",
    "contract_edges",
    "eg_component_to_instance",
    "eg_long_st_path",
    "enlarge_or_decompose_cycle",
    "exact_longest_cycle",
    "exact_longest_st_path",
    "get_oracle",
    "long_nested_st_path",
    "long_path_in_separable",
    "long_path_or_eg_decomposition",
    "min_degree",
    "nested_compress",
    "nested_decompress",
    "path_between_via_cycle",
    "reverse",
    "st_path_from_cycle_oracle",
    "two_disjoint_paths_min_total",
    "validate_dirac_decomposition",
    "validate_eg_decomposition",
    "validate_witness",
]
