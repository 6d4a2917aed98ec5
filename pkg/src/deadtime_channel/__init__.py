"""Achievable-rate and capacity toolkit for dead-time photon-counting receivers.

Covers the analytic apparatus of the sampled binary-input Poisson channel:
exact mutual information, divergence-based envelopes and their gap,
asymptotic gap laws, closed-form capacity with its optimal duty cycle, the
continuous Poisson reference, and a Monte Carlo validator, plus a sweep
CLI that emits CSV.
"""

from .channel import BinaryDetectionProbs, ChannelParams, detection_prob, symbol_probs
from .divergences import (
    BetaTriple,
    alpha_stationary_point,
    beta_triple,
    chernoff_binomial,
    kl_binomial,
    optimal_alpha_grid,
)
from .errors import EstimationError, NumericalFailure, ParameterError
from .mutual_info import (
    binary_entropy,
    binomial_entropy_gaussian_approx,
    log_binomial_pmf,
    mi_binomial_mixture,
    mi_discrete_poisson,
    mi_max_bruteforce,
)
from .rate_bounds import (
    RateBoundSet,
    bound_gap,
    envelope_difference,
    gap_between_maxima,
    gap_bounds,
    lower_bound_max,
    lower_envelope,
    optimal_prior_upper,
    rate_bound_set,
    upper_bound_max,
    upper_envelope,
)
from .approximation import mi_approx_low_background
from .asymptotics import (
    estimate_exponential_rate,
    exp_rate_large_L,
    exp_rate_zero_background,
    expansions_large_A,
    gap_offsets_large_A,
    gap_offsets_low_background,
    gap_quadratic_coeff_low_A,
    imax_asymptote_large_L,
    imax_bounds_large_A,
)
from .capacity import (
    CapacityResult,
    asymptotic_capacity_coeff_large_A,
    capacity_bruteforce,
    capacity_sampled,
    capacity_tau,
    duty_cycle_limits,
    optimal_duty_cycle,
    quadratic_coeffs_low_A,
    rate_objective,
    wyner_poisson_capacity,
)
from .monte_carlo import (
    SimConfig,
    estimate_detection_probs,
    estimate_mi_plugin,
    simulate_symbol,
)
from .optimize import least_squares_slope, maximize_scalar

__version__ = "0.1.0"

__all__ = [
    "BinaryDetectionProbs",
    "BetaTriple",
    "CapacityResult",
    "ChannelParams",
    "EstimationError",
    "NumericalFailure",
    "ParameterError",
    "RateBoundSet",
    "SimConfig",
    "alpha_stationary_point",
    "asymptotic_capacity_coeff_large_A",
    "beta_triple",
    "binary_entropy",
    "binomial_entropy_gaussian_approx",
    "bound_gap",
    "capacity_bruteforce",
    "capacity_sampled",
    "capacity_tau",
    "chernoff_binomial",
    "detection_prob",
    "duty_cycle_limits",
    "envelope_difference",
    "estimate_detection_probs",
    "estimate_exponential_rate",
    "estimate_mi_plugin",
    "exp_rate_large_L",
    "exp_rate_zero_background",
    "expansions_large_A",
    "gap_between_maxima",
    "gap_bounds",
    "gap_offsets_large_A",
    "gap_offsets_low_background",
    "gap_quadratic_coeff_low_A",
    "imax_asymptote_large_L",
    "imax_bounds_large_A",
    "kl_binomial",
    "least_squares_slope",
    "log_binomial_pmf",
    "lower_bound_max",
    "lower_envelope",
    "maximize_scalar",
    "mi_approx_low_background",
    "mi_binomial_mixture",
    "mi_discrete_poisson",
    "mi_max_bruteforce",
    "optimal_alpha_grid",
    "optimal_duty_cycle",
    "optimal_prior_upper",
    "quadratic_coeffs_low_A",
    "rate_bound_set",
    "rate_objective",
    "simulate_symbol",
    "symbol_probs",
    "upper_bound_max",
    "upper_envelope",
    "wyner_poisson_capacity",
]
