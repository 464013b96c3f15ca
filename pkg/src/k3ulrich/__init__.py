"""Exact lattice computations for Ulrich bundles on K3 surfaces of Picard rank 3."""

__version__ = "0.1.0"

from .certificates import Certificate
from .enumeration import (
    IllPosedQueryError,
    WitnessSet,
    brute_force_oracle,
    delta,
    delta_a,
    discriminant_certificate,
    enumerate_classes,
    restricted_form_coefficients,
)
from .k3 import (
    ChernData,
    certify_very_ample,
    find_ulrich_line_bundles,
    hilbert_polynomial,
    nefify,
    riemann_roch_chi,
    slope,
    ulrich_dual_transform,
    ulrich_numerical_conditions,
)
from .lattice import (
    A,
    B,
    H,
    ZERO,
    DivisorClass,
    GramLattice,
    InertiaSignature,
    ParameterError,
    RootError,
    build_k3_lattice,
    degree,
    inertia,
    is_even,
    is_primitive,
    pairing,
    reflect,
    self_intersection,
)
from .rank2 import (
    BoundReport,
    Classification,
    Rank2Row,
    bogomolov_check,
    chern_bounds,
    classify_u,
    hodge_index_check,
    moduli_dimensions,
)
from .report import ScanReport, scan_rank2
