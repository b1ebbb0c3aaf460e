"""zygops: numerics for generalized weighted composition operators
between Zygmund-type spaces on the unit disk.

The toolkit evaluates the operator u * (f^(n) o phi), the Zygmund / Bloch /
weighted-type norms behind it, and the three equivalent characterizations of
boundedness, compactness, and essential norm (weighted-derivative
quantities, monomial image norms, and rational test families), plus the
weighted-type analyzer for the n = 0 case.
"""

from .characterize import (
    AnalysisConfig,
    BoundednessReport,
    CompactnessReport,
    EssentialNormReport,
    LimsupProfile,
    WeightedTypeReport,
    classify_boundedness,
    classify_compactness,
    essential_norm_estimate,
    quantity_abc,
    quantity_efg,
    weighted_type_analyze,
)
from .errors import (
    ConfigError,
    DegenerateParameterError,
    DomainError,
    NotBoundedError,
    OrderTooLargeError,
    ParseError,
    SelfMapViolationError,
    UnsupportedCaseError,
    UnsupportedWeightError,
    ZygopsError,
)
from .expressions import parse_expression, to_source
from .functions import (
    AnalyticMap,
    ExpressionMap,
    LinearCombinationMap,
    PolynomialMap,
    RationalPowerMap,
    SeriesMap,
    constant_map,
    identity_map,
    jet_eval,
)
from .jets import Jet
from .operators import (
    MonomialSequence,
    OperatorSpec,
    SpacePair,
    apply_gwco,
    gwco_second_derivative,
    gwco_target_norm,
    monomial_sequence,
)
from .powerseries import PowerSeries, rational_family_series
from .spaces import (
    DiskGrid,
    NormEstimate,
    SpaceParams,
    SupremumEstimate,
    Weight,
    bloch_norm,
    bloch_seminorm,
    check_growth_bounds,
    hnorm_weighted,
    little_space_profile,
    monomial_norm,
    monomial_norm_maximizer,
    space_norm,
    supremum_estimate,
    weight_eval,
    zygmund_norm,
    zygmund_seminorm,
)
from .testfns import (
    make_family,
    make_fgh,
    make_klm,
    make_log_family,
    uniform_norm_audit,
)

__version__ = "0.1.0"
