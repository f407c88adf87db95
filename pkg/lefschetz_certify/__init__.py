from .base import (
    LefschetzError,
    InvalidPiece,
    EulerMismatch,
    BoundaryMismatch,
    Disconnected,
    EmptyCurveSet,
    HomologyInconsistent,
    IndexOutOfRange,
    DimensionMismatch,
    NonPrimitiveCurveClass,
    MatrixNotSymplectic,
    MissingHomologyData,
    InvalidCounts,
    ParityMismatch,
    NegativeBetti,
    InconsistentFlags,
    NotSemistable,
    TrivialPencil,
    UnknownInequalityId,
    ParameterOutOfRange,
    GenusTooSmall,
    InvalidPartition,
    BaseSphereNoCover,
    SchemaError,
    ValidationError,
)
from .surface_config import (
    Piece,
    Curve,
    FiberConfiguration,
    make_fiber,
    incidence_graph,
    validate_fiber_configuration,
    is_separating_curve,
    fiber_component_count,
    check_semistable,
    check_stable,
    fiber_euler_characteristic,
)
from .homology import (
    SymplecticLattice,
    MonodromyVerdict,
    HomologySummary,
    symplectic_pairing,
    transvection_matrix,
    is_symplectic_matrix,
    monodromy_product,
    monodromy_shadow_check,
    smith_normal_form,
    invariant_factors,
    integer_determinant,
    first_homology,
)
from .verdicts import Status, Overall, InequalityVerdict, CertificateReport
from .invariants import (
    FibrationDescription,
    RuledParameters,
    BettiRange,
    FiberCounts,
    InvariantReport,
    euler_characteristic,
    total_counts,
    b2_minus_lower_bound,
    component_bounds_check,
    betti_resolution,
    canonical_square,
    first_betti_range,
    canonical_square_upper_bound,
    validate_fibration,
    compute_invariants,
)
from .certifier import (
    certify,
    certify_report,
    certify_with_invariants,
    evaluate_inequality,
    k2_lower_bounds,
    k2_cross_checks,
    minimal_commutator_genus,
)
from .constructions import (
    CurveKind,
    CatalogEntry,
    parallel_twist_fiber,
    fiber_sum_trivial_bundle,
    pullback_cover,
    catalog,
    catalog_entry,
    degenerate_fiber,
    random_fibration,
)
from .cli import parse_fibration, serialize_fibration, run_command, emit_report

__all__ = [
    "LefschetzError",
    "InvalidPiece",
    "EulerMismatch",
    "BoundaryMismatch",
    "Disconnected",
    "EmptyCurveSet",
    "HomologyInconsistent",
    "IndexOutOfRange",
    "DimensionMismatch",
    "NonPrimitiveCurveClass",
    "MatrixNotSymplectic",
    "MissingHomologyData",
    "InvalidCounts",
    "ParityMismatch",
    "NegativeBetti",
    "InconsistentFlags",
    "NotSemistable",
    "TrivialPencil",
    "UnknownInequalityId",
    "ParameterOutOfRange",
    "GenusTooSmall",
    "InvalidPartition",
    "BaseSphereNoCover",
    "SchemaError",
    "ValidationError",
    "Piece",
    "Curve",
    "FiberConfiguration",
    "make_fiber",
    "incidence_graph",
    "validate_fiber_configuration",
    "is_separating_curve",
    "fiber_component_count",
    "check_semistable",
    "check_stable",
    "fiber_euler_characteristic",
    "SymplecticLattice",
    "MonodromyVerdict",
    "HomologySummary",
    "symplectic_pairing",
    "transvection_matrix",
    "is_symplectic_matrix",
    "monodromy_product",
    "monodromy_shadow_check",
    "smith_normal_form",
    "invariant_factors",
    "integer_determinant",
    "first_homology",
    "Status",
    "Overall",
    "InequalityVerdict",
    "CertificateReport",
    "FibrationDescription",
    "RuledParameters",
    "BettiRange",
    "FiberCounts",
    "InvariantReport",
    "euler_characteristic",
    "total_counts",
    "b2_minus_lower_bound",
    "component_bounds_check",
    "betti_resolution",
    "canonical_square",
    "first_betti_range",
    "canonical_square_upper_bound",
    "validate_fibration",
    "compute_invariants",
    "certify",
    "certify_report",
    "certify_with_invariants",
    "evaluate_inequality",
    "k2_lower_bounds",
    "k2_cross_checks",
    "minimal_commutator_genus",
    "CurveKind",
    "CatalogEntry",
    "parallel_twist_fiber",
    "fiber_sum_trivial_bundle",
    "pullback_cover",
    "catalog",
    "catalog_entry",
    "degenerate_fiber",
    "random_fibration",
    "parse_fibration",
    "serialize_fibration",
    "run_command",
    "emit_report",
]
