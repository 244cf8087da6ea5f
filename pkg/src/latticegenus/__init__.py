"""Subgroup lattices of finite abelian groups and their orientable genus.

The package splits into five layers: group parsing and subgroup
enumeration (groups), the graph type with lattice constructors and
minor search (graphs), closed-form genus formulas and the
classification tables (formulas), embedding certificates and the
certificate families (embeddings), and rotation-system genus search
(search).  The cli module ties them together behind one command.
"""

from .embeddings import (
    CertificateError,
    EmbeddingCertificate,
    RotationSystem,
    VerifiedGenus,
    fan_expansion,
    gn_certificate,
    hn_certificate,
    lift_certificate_to_lattice,
    rotation_from_certificate,
    trace_faces,
    verify_certificate,
    zppq_certificate,
)
from .formulas import (
    AbelianClass,
    CyclicClass,
    FormulaError,
    GenusEstimate,
    block_additive_genus,
    classify_abelian,
    classify_cyclic,
    estimate_grid_genus,
    euler_lower_bound,
    euler_lower_bound_int,
    family_genus,
    genus_complete_bipartite,
    genus_grid_e1_2_2,
    genus_grid_e1_e2_1,
    genus_hypercube,
    genus_n111,
    grid_lower_bound,
    grid_upper_bound,
    white_genus,
)
from .graphs import (
    BlockDecomposition,
    Graph,
    GraphError,
    MinorOp,
    MinorScript,
    MinorSearchResult,
    MinorWitness,
    apply_minor_script,
    block_decomposition,
    cartesian_product,
    complete_bipartite,
    cycle_graph,
    double_k33_pattern,
    find_minor,
    girth,
    gn_graph,
    grid_edge_count,
    grid_graph,
    grid_vertex_count,
    hn_graph,
    is_isomorphic,
    is_planar,
    path_graph,
    validate_minor_witness,
    zppq_graph,
)
from .groups import (
    DEFAULT_ORDER_CAP,
    GroupError,
    GroupSpec,
    Subgroup,
    SubgroupSet,
    build_lattice,
    enumerate_subgroups,
    lattice_for,
    parse_group_spec,
    subgroup_census,
)
from .search import (
    SearchConfig,
    SearchError,
    SearchOutcome,
    exact_genus_exhaustive,
    exact_genus_small,
    rotation_count,
    search_embedding,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianClass",
    "BlockDecomposition",
    "CertificateError",
    "CyclicClass",
    "DEFAULT_ORDER_CAP",
    "EmbeddingCertificate",
    "FormulaError",
    "GenusEstimate",
    "Graph",
    "GraphError",
    "GroupError",
    "GroupSpec",
    "MinorOp",
    "MinorScript",
    "MinorSearchResult",
    "MinorWitness",
    "RotationSystem",
    "SearchConfig",
    "SearchError",
    "SearchOutcome",
    "Subgroup",
    "SubgroupSet",
    "VerifiedGenus",
    "apply_minor_script",
    "block_additive_genus",
    "block_decomposition",
    "build_lattice",
    "cartesian_product",
    "classify_abelian",
    "classify_cyclic",
    "complete_bipartite",
    "cycle_graph",
    "double_k33_pattern",
    "enumerate_subgroups",
    "estimate_grid_genus",
    "euler_lower_bound",
    "euler_lower_bound_int",
    "exact_genus_exhaustive",
    "exact_genus_small",
    "family_genus",
    "fan_expansion",
    "find_minor",
    "genus_complete_bipartite",
    "genus_grid_e1_2_2",
    "genus_grid_e1_e2_1",
    "genus_hypercube",
    "genus_n111",
    "girth",
    "gn_certificate",
    "gn_graph",
    "grid_edge_count",
    "grid_graph",
    "grid_lower_bound",
    "grid_upper_bound",
    "grid_vertex_count",
    "hn_certificate",
    "hn_graph",
    "is_isomorphic",
    "is_planar",
    "lattice_for",
    "lift_certificate_to_lattice",
    "parse_group_spec",
    "path_graph",
    "rotation_count",
    "rotation_from_certificate",
    "search_embedding",
    "subgroup_census",
    "trace_faces",
    "validate_minor_witness",
    "verify_certificate",
    "white_genus",
    "zppq_certificate",
    "zppq_graph",
]
