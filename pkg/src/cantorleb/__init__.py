"""High-precision Lebesgue constants for Lagrange interpolation on Cantor-type sets.

The package builds three families of Cantor-type sets (constant-ratio,
super-geometric, and Julia-set equilibrium domains), generates
interpolation node arrays on them, evaluates Lebesgue functions and
constants in log-domain arbitrary precision, and confronts the computed
values with closed-form growth/boundedness results.
"""

from .numerics import (
    BigReal,
    LogMagnitude,
    PrecisionContext,
    Real,
    decimal_digits_for_bits,
    decimal_from_log,
    decimal_str,
    log_product,
    log_sum,
    make_context,
    parse_decimal,
    parse_ratio,
    to_real,
)
from .cantor import (
    Address,
    BasicInterval,
    ExactUnavailable,
    ExplicitLengths,
    LevelBudgetError,
    GeometricAlpha,
    GeometricBeta,
    SetDescriptor,
    chain,
    check_regularity,
    children,
    gap,
    gap_fraction,
    geometry_for,
    interval,
    left_endpoint_fraction,
    length,
    locate,
    log_gap,
    log_length,
    parent,
    parse_descriptor,
    register_descriptor_parser,
    sibling,
)
from .julia import (
    CheckOutcome,
    GammaSequence,
    JuliaDescriptor,
    JuliaLevelData,
    JuliaLevels,
    JuliaVerification,
    build_levels,
    c0_constant,
    delta_values,
    eval_P,
    r_fractions,
    r_values,
    verification_context,
    verify_julia_invariants,
)
from .nodes import (
    ALTERNATING,
    LEFT,
    RIGHT,
    CustomProvenance,
    DeletedProvenance,
    DistanceProfile,
    EndpointProvenance,
    NodeArray,
    UniformProvenance,
    adjacent_counts,
    delete_node,
    distance_profile,
    endpoint_nodes,
    from_text,
    is_uniform,
    max_pair_level,
    node_level,
    occupancy,
    parse_provenance,
    regenerate,
    to_text,
    uniform_nodes,
)
from .lebesgue import (
    DELETED_NODE_WITNESS,
    EMPTY_INTERVAL_WITNESS,
    ENDPOINT_WITNESS,
    LagrangeEvaluator,
    LebesgueReport,
    SearchConfig,
    fundamental,
    interpolate,
    lebesgue_constant,
    lebesgue_function,
    witness_lambda,
    witness_point,
)
from .bounds import (
    INEQUALITY_CHECK,
    LOWER_BOUND,
    UPPER_BOUND,
    BoundResult,
    deleted_node_bound,
    endpoint_witness_bound,
    equilibrium_upper_bound,
    gap_sum_check,
    geometric_growth_bound,
    length_gap_ratio_check,
    mergelyan_scale,
)
from .verify import CheckLine, SUITE_IDS, exhaustive_endpoint_max, run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
