"""Diameter-two orientation toolkit for mixed graphs.

Exact failure probabilities and the first-moment degree threshold for
random orientations, a Las Vegas diameter-2 orientation search, generators
and certifiers for extremal families whose orientations all have diameter
at least 3, and brute-force oracles that validate the closed forms on
small instances.
"""

from .errors import DomainError
from .extremal import (
    ExtremalLayout,
    ExtremalParams,
    SizeVariant,
    VertexClass,
    Witness,
    build_extremal,
    cardinalities,
    certify_diameter_ge3,
    closed_forms,
    expected_degree_row,
    robbins_interval,
    verify_degree_table,
)
from .graph import (
    DegreeSummary,
    MixedGraph,
    MixedRatio,
    check_mixed_ratio,
    degrees,
    min_mixed_ratio,
    parse_mg,
    serialize_mg,
    validate,
)
from .lab import random_mixed_graph, section3_bounds, threshold_sweep
from .metrics import (
    INFINITE,
    DistanceReport,
    EccentricityReport,
    Orientation,
    TwoStepMatrix,
    directed_eccentricities,
    has_bridge,
    mixed_diameter,
    mixed_distance,
    two_step_matrix,
)
from .oracle import (
    OracleBudget,
    diam2_failure_probability_bruteforce,
    oriented_diameter_exact,
    pair_failure_bruteforce,
)
from .probability import (
    PairClasses,
    ThresholdBound,
    XiResult,
    las_vegas_diam2,
    pair_classes,
    pair_failure_probability,
    sample_orientation,
    sufficient_min_degree,
    xi_exact,
    xi_upper_bound,
)

__version__ = "0.1.0"
