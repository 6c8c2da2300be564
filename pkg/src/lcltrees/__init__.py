"""Classify and solve locally checkable labelings on Delta-regular trees."""

from .problems import (
    EdgeConfig,
    HalfEdgeLabeling,
    Label,
    LclProblem,
    ProblemFormatError,
    ValidityReport,
    VertexConfig,
    is_valid_labeling,
    parse_labeling,
    parse_problem,
    serialize_labeling,
    serialize_problem,
)
from .trees import (
    PortTree,
    TreeBuilder,
    TreeFormatError,
    TreeGenSpec,
    ball,
    distance,
    distances_from,
    gen_tree,
    parse_tree,
    serialize_tree,
)
from .fixtures import perfect_matching, random_problem, three_coloring, two_coloring
from .pathstates import (
    ClassificationReport,
    PathStateGraph,
    PeriodicityCertificate,
    SubsetSearchResult,
    build_state_graph,
    classify,
    compute_periodicity,
    connects,
    extend_path,
    find_ell_full_set,
    is_ell_full,
    minimal_ell,
    parse_report,
    render_report,
    serialize_report,
    verify_periodicity,
)
from .oracle import (
    UNKNOWN,
    OracleBudget,
    OracleResult,
    brute_force_connects,
    brute_force_solve,
)
from .rakecompress import (
    LayeredDecomposition,
    RawDecomposition,
    check_layered_invariants,
    decompose,
    post_process,
    simulated_rounds,
)
from .solver import (
    NotEllFullError,
    RoundsReport,
    Toast,
    build_partner_table,
    build_toast,
    piece_boundary,
    round_report,
    solve_log,
    solve_on_decomposition,
    solve_toast,
    verify_toast,
)
from .equivalence import (
    CensusReport,
    EquivClass,
    HTable,
    PoledTree,
    check_replacement,
    class_census,
    concat_bipolar,
    h_table,
    pumping_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "EdgeConfig",
    "HalfEdgeLabeling",
    "Label",
    "LclProblem",
    "ProblemFormatError",
    "ValidityReport",
    "VertexConfig",
    "is_valid_labeling",
    "parse_labeling",
    "parse_problem",
    "serialize_labeling",
    "serialize_problem",
    "PortTree",
    "TreeBuilder",
    "TreeFormatError",
    "TreeGenSpec",
    "ball",
    "distance",
    "distances_from",
    "gen_tree",
    "parse_tree",
    "serialize_tree",
    "perfect_matching",
    "random_problem",
    "three_coloring",
    "two_coloring",
    "ClassificationReport",
    "PathStateGraph",
    "PeriodicityCertificate",
    "SubsetSearchResult",
    "build_state_graph",
    "classify",
    "compute_periodicity",
    "connects",
    "extend_path",
    "find_ell_full_set",
    "is_ell_full",
    "minimal_ell",
    "parse_report",
    "render_report",
    "serialize_report",
    "verify_periodicity",
    "UNKNOWN",
    "OracleBudget",
    "OracleResult",
    "brute_force_connects",
    "brute_force_solve",
    "LayeredDecomposition",
    "RawDecomposition",
    "check_layered_invariants",
    "decompose",
    "post_process",
    "simulated_rounds",
    "NotEllFullError",
    "RoundsReport",
    "Toast",
    "build_partner_table",
    "build_toast",
    "piece_boundary",
    "round_report",
    "solve_log",
    "solve_on_decomposition",
    "solve_toast",
    "verify_toast",
    "CensusReport",
    "EquivClass",
    "HTable",
    "PoledTree",
    "check_replacement",
    "class_census",
    "concat_bipolar",
    "h_table",
    "pumping_decompose",
    "__version__",
]
