"""Exact solver and analysis toolkit for generalized minimum 0-extension problems."""

from .blp import (
    LinearProgram,
    LPResult,
    TableInstance,
    blp_value,
    build_blp,
    extract_minimizer,
    simplex_solve,
)
from .complexes import (
    ExtendedComplex,
    Subdivision,
    boolean_pair_relation,
    build_complex,
    check_admissible_relation,
    product_complex,
)
from .errors import ZeroExtError
from .metric import (
    Metric,
    ModularityVerdict,
    OrbitPartition,
    WeightedGraph,
    is_modular,
    metric_from_graph,
    orbits,
    underlying_graph,
    validate_metric,
)
from .orientation import (
    Classification,
    HardnessCertificate,
    Orientation,
    OrientationConflict,
    admissible_orientation,
    check_certificate,
    classify,
    hardness_certificate,
    has_reversal_path,
    verify_orientation,
)
from .problemspec import ProblemSpec, parse_instance
from .rationals import INF
from .semilattice import (
    EnvelopeReport,
    ValuatedSemilattice,
    check_condition_1prime,
    check_lconvex,
    check_submodular,
    classify_pair,
    envelope,
    product_semilattice,
    validate_valuated_semilattice,
    vpq_coords,
)
from .solver import (
    Instance,
    PairwiseTerm,
    SolveReport,
    UnaryTerm,
    brute_force_min,
    default_start,
    dsda,
    iteration_count_expected,
    local_minimize,
    minimizer_set,
    sda,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Classification",
    "EnvelopeReport",
    "ExtendedComplex",
    "HardnessCertificate",
    "Instance",
    "LPResult",
    "LinearProgram",
    "Metric",
    "ModularityVerdict",
    "OrbitPartition",
    "Orientation",
    "OrientationConflict",
    "PairwiseTerm",
    "ProblemSpec",
    "SolveReport",
    "Subdivision",
    "TableInstance",
    "UnaryTerm",
    "ValuatedSemilattice",
    "WeightedGraph",
    "ZeroExtError",
    "admissible_orientation",
    "blp_value",
    "boolean_pair_relation",
    "brute_force_min",
    "build_blp",
    "build_complex",
    "check_admissible_relation",
    "check_certificate",
    "check_condition_1prime",
    "check_lconvex",
    "check_submodular",
    "classify",
    "classify_pair",
    "default_start",
    "dsda",
    "envelope",
    "extract_minimizer",
    "hardness_certificate",
    "has_reversal_path",
    "is_modular",
    "iteration_count_expected",
    "local_minimize",
    "metric_from_graph",
    "minimizer_set",
    "orbits",
    "parse_instance",
    "product_complex",
    "product_semilattice",
    "sda",
    "simplex_solve",
    "underlying_graph",
    "validate_metric",
    "validate_valuated_semilattice",
    "verify_orientation",
    "vpq_coords",
]
