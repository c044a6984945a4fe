"""Spectral mixing-time bounds for finite Markov chains."""

from .bounds import (
    BoundReport,
    cheeger_constant,
    cheeger_lazy_upper_bound,
    chernoff_negative_binomial_bound,
    evaluate_bounds,
    l2_lower_bound,
    l2_upper_bound,
    main_upper_bound,
    multiplicative_upper_bound,
    rev_sharpen_upper_bound,
    sst_crossing,
    sst_tail,
    tv_bound_at_time,
    tv_bound_crossing,
)
from .chain import (
    ChainAnalysis,
    Spectrum,
    StationaryDistribution,
    TransitionMatrix,
    analyze,
    is_reversible,
    reversibilizations,
    spectrum,
    stationary_distribution,
    time_reversal,
    validate,
)
from .config import DEFAULT, Budget, Tolerances
from .distances import distance_profile, exact_mixing_time, mixing_time, sep_distance, tv_distance
from .duality import build_link, build_pure_birth, dual_betas, verify_intertwining
from .errors import ComputationError, InputError, MixboundError

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "cheeger_constant",
    "cheeger_lazy_upper_bound",
    "chernoff_negative_binomial_bound",
    "evaluate_bounds",
    "l2_lower_bound",
    "l2_upper_bound",
    "main_upper_bound",
    "multiplicative_upper_bound",
    "rev_sharpen_upper_bound",
    "sst_crossing",
    "sst_tail",
    "tv_bound_at_time",
    "tv_bound_crossing",
    "ChainAnalysis",
    "Spectrum",
    "StationaryDistribution",
    "TransitionMatrix",
    "analyze",
    "is_reversible",
    "reversibilizations",
    "spectrum",
    "stationary_distribution",
    "time_reversal",
    "validate",
    "DEFAULT",
    "Budget",
    "Tolerances",
    "distance_profile",
    "exact_mixing_time",
    "mixing_time",
    "sep_distance",
    "tv_distance",
    "build_link",
    "build_pure_birth",
    "dual_betas",
    "verify_intertwining",
    "ComputationError",
    "InputError",
    "MixboundError",
]
