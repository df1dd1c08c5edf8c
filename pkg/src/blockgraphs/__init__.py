"""Spectral radius of block graphs with a prescribed dissociation number.

The package builds the extremal graph ``B(k, phi)`` (a centre carrying one
large clique, triangles and possibly one pendant edge), computes spectral
radii and maximum dissociation sets, applies the local graph rewrites used
to show that ``B(k, phi)`` is the unique maximiser, and checks that claim by
exhaustive enumeration for small ``k``.
"""

from .constructions import (
    BlockSpec,
    SpecError,
    build_central,
    build_extremal,
    extremal_spec,
    feasible_phi_range,
    parse_block_spec,
)
from .dissociation import (
    CoverReport,
    DissociationCertificate,
    cover_report,
    dissociation_brute,
    dissociation_dp,
    independence_number,
    is_dissociation_set,
    maximum_dissociation_sets,
    min_three_path_cover,
    repair_pendant,
)
from .graph import (
    BlockDecomposition,
    Graph,
    GraphError,
    block_decomposition,
    canonical_code,
    check_automorphism,
    complete_graph,
    cycle_graph,
    from_edge_list,
    is_block_graph,
    is_isomorphic,
    parse_edge_list,
    path_graph,
    permutation_matrix,
    read_edge_list,
    star_graph,
    to_dot,
    write_edge_list,
)
from .spectral import (
    ConvergenceError,
    Ordering,
    SpectralResult,
    compare_spectral_radii,
    spectral_radius,
    verify_eigenpair,
)

__version__ = "0.1.0"

__all__ = [
    "BlockSpec",
    "SpecError",
    "build_central",
    "build_extremal",
    "extremal_spec",
    "feasible_phi_range",
    "parse_block_spec",
    "CoverReport",
    "DissociationCertificate",
    "cover_report",
    "dissociation_brute",
    "dissociation_dp",
    "independence_number",
    "is_dissociation_set",
    "maximum_dissociation_sets",
    "min_three_path_cover",
    "repair_pendant",
    "BlockDecomposition",
    "Graph",
    "GraphError",
    "block_decomposition",
    "canonical_code",
    "check_automorphism",
    "complete_graph",
    "cycle_graph",
    "from_edge_list",
    "is_block_graph",
    "is_isomorphic",
    "parse_edge_list",
    "path_graph",
    "permutation_matrix",
    "read_edge_list",
    "star_graph",
    "to_dot",
    "write_edge_list",
    "ConvergenceError",
    "Ordering",
    "SpectralResult",
    "compare_spectral_radii",
    "spectral_radius",
    "verify_eigenpair",
]
