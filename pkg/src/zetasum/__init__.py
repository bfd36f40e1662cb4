"""Inverse norm sums of ideal lattices over totally real number fields."""

from .config import EnumerationConfig, PrecisionPolicy
from .errors import (
    CutTooSmall,
    DegreeMismatch,
    Dependent,
    DiscMismatch,
    FieldMismatch,
    InfeasibleEnumeration,
    KOutOfRange,
    NotAnOrder,
    NotAUnit,
    NotIntegral,
    NotPrincipal,
    NotQuadratic,
    NotTotallyPositive,
    NotTotallyReal,
    OrderExceedsBound,
    PrecisionExhausted,
    RegulatorMismatch,
    ValidationError,
    ZeroIdeal,
    ZetasumError,
)
from .nf_core import (
    EmbeddingSet,
    FieldData,
    FieldElement,
    NumberField,
    load_field_file,
    parse_field,
)
from .ideal_arith import (
    Ideal,
    ideal_from_generators,
    ideal_mul,
    ideal_norm,
    ideal_pow,
    ideals_of_norm,
    principal_ideal,
    unit_ideal,
)
from .unit_group import (
    UnitSystem,
    fundamental_domain_coords,
    fundamental_unit_quadratic,
    is_canonical_rep,
    log_vector,
    orbit_box_bound,
    validate_units,
)
from .orbits import class_order, elements_of_norm, is_principal
from .lattice_enum import (
    BoxCount,
    IdealLattice,
    InverseNormSum,
    build_lattice,
    count_by_norm,
    enumerate_box,
    inverse_norm_sum_exact,
    min_product_distance,
    prop1_bounds,
)
from .zeta_engine import (
    DirichletCoefficients,
    ZetaValue,
    class_zeta_coeffs,
    estimate_bkR,
    growth_constant,
    partial_zeta,
    predicted_inverse_norm_sum,
    principal_ideal_counts,
    residue_check,
    sigma_invariant,
    tail_bound,
)
from .datafiles import bundled_field_names, bundled_field_path, load_bundled

__all__ = [name for name in dir() if not name.startswith("_")]
