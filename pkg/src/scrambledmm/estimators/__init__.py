"""Simulated and scrambled method-of-moments estimators."""

from .core import (
    Algorithm,
    Auxiliary,
    AuxiliaryError,
    ConfigError,
    EstimationConfig,
    EstimationError,
    EstimationResult,
    SEMethod,
    Simulator,
    Weighting,
    WeightingError,
    check_weighting,
    estimate,
    indirect_inference,
    n_obs,
    objective,
    validate_config,
    variance_repeated_scramble,
)
from .inference import (
    InferenceError,
    default_bandwidth,
    fd_steps,
    jacobian_fd,
    sandwich_cov,
    sandwich_se,
    variance_hac,
    variance_pooled,
)
from .optimize import OptimizeResult, OptimizerError, nelder_mead, nelder_mead_restarts

__all__ = [
    "Algorithm", "Auxiliary", "AuxiliaryError", "ConfigError", "EstimationConfig",
    "EstimationError", "EstimationResult", "InferenceError", "OptimizeResult",
    "OptimizerError", "SEMethod", "Simulator", "Weighting", "WeightingError",
    "check_weighting", "default_bandwidth", "estimate", "fd_steps", "indirect_inference",
    "jacobian_fd", "n_obs", "nelder_mead", "nelder_mead_restarts", "objective", "sandwich_cov", "sandwich_se",
    "validate_config", "variance_hac", "variance_pooled", "variance_repeated_scramble",
]
