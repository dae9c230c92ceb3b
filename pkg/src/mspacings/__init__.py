"""Uniformity testing with sum-functions of m-tuples of spacings.

The package evaluates circular, non-wrapping, and disjoint spacing statistics,
standardizes them with closed-form asymptotic moments, and verifies the
normal-limit claims by seeded Monte Carlo.
"""

from .asymptotics import (
    AsymptoticMoments,
    GeneralMoments,
    TestReport,
    clt_condition_ratio,
    closed_form_moments,
    estimate_general_moments,
    exact_mean_correction,
    holst_vs_corrected,
    mean_correction,
    sigma_m_closed_form_large_m,
    standardize,
)
from .errors import (
    ArgumentTooSmall,
    DegenerateVariance,
    DomainViolation,
    EmptyInput,
    FamilyLengthMismatch,
    MSpacingsError,
    NonFiniteSample,
    NonPositiveArgument,
    OrderTooLarge,
    SimulationAborted,
    UnsupportedKind,
    ValueOutOfRange,
    ZeroSpacing,
)
from .lagcov import (
    DEFAULT_BATCHES,
    Estimate,
    SigmaComponents,
    batch_std_error,
    batched_components,
    components,
    stream_window_values,
    window_sums,
)
from .montecarlo import (
    McConfig,
    McSummary,
    estimate_sigma_m,
    exponential,
    ks_distance_to_normal,
    simulate_null,
    uniform_sorted,
)
from .rng import SeededStream, derive_stream_key
from .spacings import (
    CircularSample,
    SpacingScheme,
    SpacingsVector,
    from_unit_observations,
    m_spacings,
    scaled_values,
)
from .specfun import (
    EULER_GAMMA,
    digamma_int,
    hurwitz_zeta2,
    log_gamma,
    mu_n,
    normal_cdf,
)
from .statistics import (
    ENTROPY,
    GREENWOOD,
    MORAN,
    StatisticKind,
    StatisticResult,
    TupleFunction,
    TupleFunctionFamily,
    custom_sum,
    resolve_kind,
    statistic_Q,
    statistic_R,
    statistic_V,
    statistic_W,
    statistic_Z,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentTooSmall",
    "AsymptoticMoments",
    "CircularSample",
    "DEFAULT_BATCHES",
    "DegenerateVariance",
    "DomainViolation",
    "EmptyInput",
    "ENTROPY",
    "Estimate",
    "EULER_GAMMA",
    "FamilyLengthMismatch",
    "GeneralMoments",
    "GREENWOOD",
    "McConfig",
    "McSummary",
    "MORAN",
    "MSpacingsError",
    "NonFiniteSample",
    "NonPositiveArgument",
    "OrderTooLarge",
    "SimulationAborted",
    "SigmaComponents",
    "SpacingScheme",
    "SpacingsVector",
    "SeededStream",
    "StatisticKind",
    "StatisticResult",
    "TestReport",
    "TupleFunction",
    "TupleFunctionFamily",
    "UnsupportedKind",
    "ValueOutOfRange",
    "ZeroSpacing",
    "batch_std_error",
    "batched_components",
    "clt_condition_ratio",
    "closed_form_moments",
    "components",
    "custom_sum",
    "derive_stream_key",
    "digamma_int",
    "estimate_general_moments",
    "estimate_sigma_m",
    "exact_mean_correction",
    "exponential",
    "from_unit_observations",
    "holst_vs_corrected",
    "hurwitz_zeta2",
    "ks_distance_to_normal",
    "log_gamma",
    "m_spacings",
    "mean_correction",
    "mu_n",
    "normal_cdf",
    "resolve_kind",
    "scaled_values",
    "sigma_m_closed_form_large_m",
    "simulate_null",
    "standardize",
    "statistic_Q",
    "statistic_R",
    "statistic_V",
    "statistic_W",
    "statistic_Z",
    "stream_window_values",
    "uniform_sorted",
    "window_sums",
]
