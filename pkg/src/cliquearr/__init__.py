"""Clique arrangements of chordal graphs: structure, cycle defects,
forbidden-fixture extraction, and leaf-root search."""

from .arrangement import (
    CliqueArrangement,
    EmbeddingMap,
    arrangement_dot,
    arrangement_problems,
    build_arrangement,
    embed_arrangement,
    embedding_problems,
    reaches,
    sink_pair_for_intersection,
    two_clique_cover,
    witness_nonadjacent_vertex,
)
from .chordal import (
    EliminationOrder,
    HoleWitness,
    SunWitness,
    find_sun,
    hole_problems,
    is_chordal,
    is_ptolemaic,
    is_strongly_chordal,
    lex_bfs,
    maximal_cliques,
    simple_elimination_order,
    sun_problems,
)
from .cycles import (
    Bad2CycleWitness,
    BadKCycleWitness,
    ObstructionState,
    bad_2_cycle_problems,
    bad_k_cycle_problems,
    extract_obstruction,
    extract_obstruction_state,
    find_bad_2_cycle,
    find_bad_k_cycle,
    has_bad_cycle_k_ge_3,
    obstruction_state_problems,
)
from .errors import InvariantViolation, SearchBudgetExceeded
from .gen import (
    GenConfig,
    enumerate_graphs,
    random_chordal,
    random_leaf_power,
    random_ptolemaic,
    random_strongly_chordal,
)
from .graphs import (
    Graph,
    GraphFormatError,
    bits,
    induced_subgraph,
    mask_of,
    neighborhood,
    parse_graph,
    serialize_graph,
)
from .leafroot import (
    LeafRootModel,
    LeafRootSearch,
    LeafRootViolation,
    expand_model,
    model_dot,
    parse_model,
    search_leaf_root,
    serialize_model,
    verify_leaf_root,
)
from .patterns import (
    NonLeafPowerCertificate,
    PatternMatch,
    SeparationWitness,
    certificate_problems,
    edge_pair_separation,
    find_induced_pattern,
    iter_induced_patterns,
    non_leaf_power_certificate,
    pattern_graph,
    pattern_match_problems,
    pattern_roles,
    separation_problems,
)

__version__ = "0.1.0"

__all__ = [
    "Bad2CycleWitness",
    "BadKCycleWitness",
    "CliqueArrangement",
    "EliminationOrder",
    "EmbeddingMap",
    "GenConfig",
    "Graph",
    "GraphFormatError",
    "HoleWitness",
    "InvariantViolation",
    "LeafRootModel",
    "LeafRootSearch",
    "LeafRootViolation",
    "NonLeafPowerCertificate",
    "ObstructionState",
    "PatternMatch",
    "SearchBudgetExceeded",
    "SeparationWitness",
    "SunWitness",
    "arrangement_dot",
    "arrangement_problems",
    "bad_2_cycle_problems",
    "bad_k_cycle_problems",
    "bits",
    "build_arrangement",
    "certificate_problems",
    "edge_pair_separation",
    "embed_arrangement",
    "embedding_problems",
    "enumerate_graphs",
    "expand_model",
    "extract_obstruction",
    "extract_obstruction_state",
    "find_bad_2_cycle",
    "find_bad_k_cycle",
    "find_induced_pattern",
    "find_sun",
    "has_bad_cycle_k_ge_3",
    "hole_problems",
    "induced_subgraph",
    "is_chordal",
    "is_ptolemaic",
    "is_strongly_chordal",
    "iter_induced_patterns",
    "lex_bfs",
    "mask_of",
    "maximal_cliques",
    "model_dot",
    "neighborhood",
    "non_leaf_power_certificate",
    "obstruction_state_problems",
    "parse_graph",
    "parse_model",
    "pattern_graph",
    "pattern_match_problems",
    "pattern_roles",
    "random_chordal",
    "random_leaf_power",
    "random_ptolemaic",
    "random_strongly_chordal",
    "reaches",
    "search_leaf_root",
    "separation_problems",
    "serialize_graph",
    "serialize_model",
    "simple_elimination_order",
    "sink_pair_for_intersection",
    "sun_problems",
    "two_clique_cover",
    "verify_leaf_root",
    "witness_nonadjacent_vertex",
]
