"""Complete spectra of hypergraph matrices from their symmetries.

A hypergraph automorphism splits every compatible matrix into small
rotation blocks plus an orbit quotient; a unit bijection adds known
eigenvalues for free and reduces the rest to the unit quotient. Both
routes lift block eigenvectors back to full ones, and every result can
be replayed against the dense spectrum.
"""

from .dynamics import SYNC_TOL, SyncReport, Trajectory, check_orbit_synchronization, iterate
from .errors import (
    DocumentError,
    HypersymError,
    IncompatibleMatrixError,
    NotAutomorphismError,
    NotEquitableError,
    NotUnitAutomorphismError,
    NotUnitCompatibleError,
)
from .generators import (
    compatible_matrix,
    cycle_types,
    invariant_hypergraph,
    invariant_weights,
    permutation_with_type,
    random_instance,
)
from .hypergraph import (
    ContractionResult,
    Hyperedge,
    Hypergraph,
    Unit,
    UnitPartition,
    compute_units,
    edge_unit_covers,
    parse_hypergraph,
    serialize_hypergraph,
    sort_labels,
    star,
    unit_contraction,
    unit_key,
)
from .jsonutil import canonical_json, complex_pair, parse_json
from .matrices import (
    MATRIX_KINDS,
    HypergraphMatrix,
    RowSumReport,
    WeightFunctions,
    as_array,
    build_matrix,
    row_sum_check,
)
from .oracle import (
    MATCH_TOL,
    SpectrumReport,
    dense_spectrum,
    match_multisets,
    verify_decomposition,
)
from .spectral import (
    COMPAT_TOL,
    LIFT_RESIDUAL_TOL,
    LiftedPair,
    RootOfUnity,
    RotationBlock,
    SpectralDecomposition,
    decompose_automorphism,
    decompose_rotation,
    lift_orbit_vector,
    lift_rotation_vector,
    resolve_workers,
    roots_of_unity,
    rotation_matrix,
    spectral_radius_via_quotient,
)
from .symmetry import (
    EQUITABLE_TOL,
    Automorphism,
    OrbitPartition,
    Permutation,
    Rotation,
    RotationDecomposition,
    as_rotation,
    check_commutation,
    compatibility_deviation,
    equitable_witness,
    is_compatible,
    is_equitable,
    orbit_quotient,
    orbits,
    permutation_matrix,
    rotation_decomposition,
    simple_eigenvalue_bound,
    validate_automorphism,
)
from .unit_symmetry import (
    MERGE_TOL,
    UnitAutomorphism,
    UnitEigenReport,
    blow_up,
    decompose_unit_automorphism,
    induced_unit_automorphism,
    is_unit_automorphism_compatible,
    lift_cardinality_preserving,
    profile_unit_compatibility,
    unit_compatibility_witness,
    unit_eigenvalues,
    unit_quotient,
    validate_unit_automorphism,
)

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "COMPAT_TOL",
    "ContractionResult",
    "DocumentError",
    "EQUITABLE_TOL",
    "Hyperedge",
    "Hypergraph",
    "HypergraphMatrix",
    "HypersymError",
    "IncompatibleMatrixError",
    "LIFT_RESIDUAL_TOL",
    "LiftedPair",
    "MATCH_TOL",
    "MATRIX_KINDS",
    "MERGE_TOL",
    "NotAutomorphismError",
    "NotEquitableError",
    "NotUnitAutomorphismError",
    "NotUnitCompatibleError",
    "OrbitPartition",
    "Permutation",
    "RootOfUnity",
    "Rotation",
    "RotationBlock",
    "RotationDecomposition",
    "RowSumReport",
    "SpectralDecomposition",
    "SpectrumReport",
    "SYNC_TOL",
    "SyncReport",
    "Trajectory",
    "Unit",
    "UnitAutomorphism",
    "UnitEigenReport",
    "UnitPartition",
    "WeightFunctions",
    "as_array",
    "as_rotation",
    "blow_up",
    "build_matrix",
    "canonical_json",
    "check_commutation",
    "check_orbit_synchronization",
    "compatibility_deviation",
    "compatible_matrix",
    "complex_pair",
    "compute_units",
    "cycle_types",
    "decompose_automorphism",
    "decompose_rotation",
    "decompose_unit_automorphism",
    "dense_spectrum",
    "edge_unit_covers",
    "equitable_witness",
    "induced_unit_automorphism",
    "invariant_hypergraph",
    "invariant_weights",
    "is_compatible",
    "is_equitable",
    "is_unit_automorphism_compatible",
    "iterate",
    "lift_cardinality_preserving",
    "lift_orbit_vector",
    "lift_rotation_vector",
    "match_multisets",
    "orbit_quotient",
    "orbits",
    "parse_hypergraph",
    "parse_json",
    "permutation_matrix",
    "permutation_with_type",
    "profile_unit_compatibility",
    "random_instance",
    "resolve_workers",
    "roots_of_unity",
    "rotation_decomposition",
    "rotation_matrix",
    "row_sum_check",
    "serialize_hypergraph",
    "simple_eigenvalue_bound",
    "sort_labels",
    "spectral_radius_via_quotient",
    "star",
    "unit_compatibility_witness",
    "unit_contraction",
    "unit_eigenvalues",
    "unit_key",
    "unit_quotient",
    "validate_automorphism",
    "validate_unit_automorphism",
    "verify_decomposition",
]
