"""Parameter sweeps behind the CLI: each returns (header, rows) for CSV.

Sweeps work in the normalized convention: the symbol duration is 1, so a
dead time of 0.02 with 30 samples per symbol means the sampling interval
is 1/30 and rates are photons per symbol.  Every row is a deterministic
function of the flags (plus the seed for the simulation sweep); columns
that do not apply to a scenario hold nan.
"""

import math

from .channel import BinaryDetectionProbs, ChannelParams, detection_prob, symbol_probs
from .divergences import beta_triple, chernoff_binomial
from .errors import ParameterError
from .mutual_info import (
    mi_binomial_mixture,
    mi_discrete_poisson,
    mi_max_bruteforce,
)
from .approximation import mi_approx_low_background
from .asymptotics import (
    estimate_exponential_rate,
    exp_rate_large_L,
    exp_rate_zero_background,
    gap_offsets_large_A,
    gap_offsets_low_background,
    gap_quadratic_coeff_low_A,
)
from .capacity import (
    asymptotic_capacity_coeff_large_A,
    capacity_sampled,
    quadratic_coeffs_low_A,
    wyner_poisson_capacity,
)
from .monte_carlo import SimConfig, simulate_summary
from .rate_bounds import (
    bound_gap,
    gap_bounds,
    lower_bound_max,
    lower_envelope,
    optimal_prior_upper,
    upper_bound_max,
    upper_envelope,
)
from . import optimize

GAP_SCENARIOS = ("large-L", "large-A", "low-lambda", "zero-lambda", "low-A")


def _alpha_tuned_lower(mu, p0, p1, trials):
    """Lower envelope with the divergence order optimized over alpha per mu."""
    if mu == 0.0 or mu == 1.0 or p0 == p1:
        return 0.0

    def objective(alpha):
        b1 = math.exp(-chernoff_binomial(alpha, p1, p0, trials))
        b2 = math.exp(-chernoff_binomial(alpha, p0, p1, trials))
        return upper_envelope(mu, b1, b2)

    _, value = optimize.maximize_scalar(objective, 0.0, 1.0, tol=1e-9, coarse_points=65)
    return value


def mi_sweep_rows(peak_rate, background, dead_time, trials, mu_values):
    """Rate and bound columns over a duty-cycle grid (one symbol interval)."""
    probs = BinaryDetectionProbs(
        detection_prob(background, dead_time),
        detection_prob(peak_rate + background, dead_time),
    )
    triple = beta_triple(probs, trials)
    upper_sub = (
        upper_bound_max(triple.beta1, triple.beta2)
        if not (triple.beta1 == 1.0 and triple.beta2 == 1.0)
        else 0.0
    )
    header = [
        "mu",
        "exact_mi",
        "lower",
        "lower_sub",
        "upper",
        "upper_sub",
        "approx",
        "poisson_benchmark",
    ]
    rows = []
    for mu in mu_values:
        exact = mi_binomial_mixture(mu, probs, trials)
        try:
            approx = mi_approx_low_background(mu, probs, trials)
        except ParameterError:
            approx = math.nan
        rows.append(
            [
                mu,
                exact,
                _alpha_tuned_lower(mu, probs.p_off, probs.p_on, trials),
                lower_envelope(mu, triple.beta),
                upper_envelope(mu, triple.beta1, triple.beta2),
                upper_sub,
                approx,
                mi_discrete_poisson(mu, background, peak_rate + background),
            ]
        )
    return header, rows


def duty_imax_rows(peak_values, background, dead_time, trials):
    """Optimal duty cycles and maximal rates versus peak rate."""
    header = [
        "A",
        "mu_exact",
        "mu_approx",
        "mu_lower",
        "mu_upper",
        "imax_exact",
        "imax_lower",
        "imax_upper",
        "imax_approx",
    ]
    rows = []
    for peak in peak_values:
        probs = BinaryDetectionProbs(
            detection_prob(background, dead_time),
            detection_prob(peak + background, dead_time),
        )
        triple = beta_triple(probs, trials)
        mu_exact, imax_exact = mi_max_bruteforce(probs, trials)
        try:
            mu_approx, imax_approx = optimize.maximize_scalar(
                lambda mu: mi_approx_low_background(mu, probs, trials), 0.0, 1.0
            )
        except ParameterError:
            mu_approx, imax_approx = math.nan, math.nan
        if triple.beta1 < 1.0 and triple.beta2 < 1.0:
            mu_upper = optimal_prior_upper(triple.beta1, triple.beta2)
            imax_upper = upper_envelope(mu_upper, triple.beta1, triple.beta2)
        else:
            mu_upper, imax_upper = 0.5, 0.0
        rows.append(
            [
                peak,
                mu_exact,
                mu_approx,
                0.5,
                mu_upper,
                imax_exact,
                lower_bound_max(triple.beta),
                imax_upper,
                imax_approx,
            ]
        )
    return header, rows


GAP_HEADER = [
    "x",
    "gap_numeric",
    "gap_lower_formula",
    "gap_upper_formula",
    "offset_numeric",
    "offset_formula",
    "fitted_rate",
    "predicted_rate",
]


def _pow_log(base, exponent):
    return math.exp(exponent * math.log(base))


def gap_rows(scenario, peak_rate, background, dead_time, trials, sweep_values):
    """Bound-gap sweep for one of the five asymptotic scenarios.

    The sweep variable depends on the scenario: samples per symbol for
    large-L, the peak rate for large-A / zero-lambda / low-A, and the
    background rate for low-lambda.  fitted_rate / predicted_rate hold the
    extracted and theoretical convergence constants (an exponential rate
    in the sweep variable, except low-lambda where it is the power-law
    exponent in the background rate and low-A where it is the power-law
    order in the peak rate).
    """
    if scenario not in GAP_SCENARIOS:
        raise ParameterError(f"unknown gap scenario {scenario!r}")
    rows = []
    if scenario == "large-L":
        p0 = detection_prob(background, dead_time)
        p1 = detection_prob(peak_rate + background, dead_time)
        predicted = exp_rate_large_L(p0, p1)
        pts = []
        for L in sweep_values:
            L = int(L)
            triple = beta_triple(BinaryDetectionProbs(p0, p1), L)
            gap = bound_gap(triple)
            _, high_u, gen_l = gap_bounds(triple)
            pts.append((L, gap))
            rows.append([L, gap, gen_l, high_u, math.nan, math.nan])
        fitted = -estimate_exponential_rate(pts)
    elif scenario == "zero-lambda":
        if background != 0.0:
            raise ParameterError("zero-lambda scenario requires background = 0")
        predicted = exp_rate_zero_background(trials, dead_time)
        pts = []
        for peak in sweep_values:
            p1 = detection_prob(peak, dead_time)
            triple = beta_triple(BinaryDetectionProbs(0.0, p1), trials)
            gap = bound_gap(triple)
            lead = _pow_log(1.0 - p1, 0.5 * trials)
            pts.append((peak, gap))
            rows.append([peak, gap, lead, 2.0 * lead, math.nan, math.nan])
        fitted = -estimate_exponential_rate(pts)
    elif scenario == "large-A":
        p0 = detection_prob(background, dead_time)
        b_half = _pow_log(p0, 0.5 * trials)
        b_full = _pow_log(p0, trials)
        const_u = 2.0 * b_half - b_full
        const_l = math.log1p(b_half) - 0.5 * math.log1p(b_full)
        predicted = min(0.5, (1.0 - p0) * trials) * dead_time
        pts = []
        for peak in sweep_values:
            p1 = detection_prob(peak + background, dead_time)
            triple = beta_triple(BinaryDetectionProbs(p0, p1), trials)
            gap = bound_gap(triple)
            _, high_u, _ = gap_bounds(triple)
            eps_u, eps_l = gap_offsets_large_A(p0, p1, trials)
            offset = high_u - const_u
            pts.append((peak, abs(offset)))
            rows.append([peak, gap, const_l + eps_l, const_u + eps_u, offset, eps_u])
        fitted = -estimate_exponential_rate(pts)
    elif scenario == "low-lambda":
        p1_limit = detection_prob(peak_rate, dead_time)
        predicted = min(0.5, p1_limit * trials)
        pts = []
        for lam in sweep_values:
            p0 = detection_prob(lam, dead_time)
            p1 = detection_prob(peak_rate + lam, dead_time)
            triple = beta_triple(BinaryDetectionProbs(p0, p1), trials)
            gap = bound_gap(triple)
            _, high_u, _ = gap_bounds(triple)
            q_half = _pow_log(1.0 - p1, 0.5 * trials)
            q_full = _pow_log(1.0 - p1, trials)
            const_u = 2.0 * q_half - q_full
            const_l = math.log1p(q_half) - 0.5 * math.log1p(q_full)
            eps_u, eps_l = gap_offsets_low_background(p0, p1, trials)
            offset = high_u - const_u
            pts.append((math.log(lam), abs(offset)))
            rows.append([lam, gap, const_l + eps_l, const_u + eps_u, offset, eps_u])
        fitted = estimate_exponential_rate(pts)
    else:  # low-A
        p0 = detection_prob(background, dead_time)
        coeff = gap_quadratic_coeff_low_A(p0, trials, dead_time)
        predicted = 2.0
        pts = []
        for peak in sweep_values:
            p1 = detection_prob(peak + background, dead_time)
            triple = beta_triple(BinaryDetectionProbs(p0, p1), trials)
            gap = bound_gap(triple)
            quad = coeff * peak * peak
            pts.append((math.log(peak), gap))
            rows.append([peak, gap, quad, quad, gap / peak**2, coeff])
        fitted = estimate_exponential_rate(pts)
    for row in rows:
        row.extend([fitted, predicted])
    return GAP_HEADER, rows


def capacity_rows(
    peak_values, tau_values, background, dead_time, sampling_interval=None
):
    """Capacity sweep over the peak rate (or dead time, when tau_values given)."""
    header = [
        "A",
        "tau",
        "mu_star",
        "capacity_nats",
        "capacity_bits",
        "wyner_capacity",
        "approx_low_A",
        "limit_large_A",
    ]
    if tau_values is not None:
        points = [(peak_values[0], tau) for tau in tau_values]
    else:
        points = [(peak, dead_time) for peak in peak_values]
    rows = []
    for peak, tau in points:
        t_s = sampling_interval if sampling_interval is not None else tau
        result = capacity_sampled(peak, background, tau, t_s)
        _, wyner = wyner_poisson_capacity(peak, background)
        if background == 0.0:
            approx_low = (tau / t_s) * peak / math.e
        else:
            _, d_tau = quadratic_coeffs_low_A(background, tau)
            approx_low = d_tau * peak * peak * (tau / t_s)
        limit = asymptotic_capacity_coeff_large_A(background, tau) / t_s
        rows.append(
            [
                peak,
                tau,
                result.duty_cycle,
                result.capacity_nats_per_time,
                result.capacity_nats_per_time / math.log(2.0),
                wyner,
                approx_low,
                limit,
            ]
        )
    return header, rows


def simulate_rows(
    peak_rate,
    background,
    dead_time,
    sampling_interval,
    trials,
    symbols,
    seed,
    duty_cycle,
):
    """Monte Carlo validation row: empirical vs closed-form, with z-scores."""
    params = ChannelParams(peak_rate, background, dead_time, sampling_interval, trials)
    config = SimConfig(params, symbols, seed, duty_cycle)
    summary = simulate_summary(config)
    probs = symbol_probs(params)
    mi_exact = mi_binomial_mixture(duty_cycle, probs, trials)
    header = [
        "symbols",
        "p0_hat",
        "p0_closed",
        "p1_hat",
        "p1_closed",
        "mi_plugin",
        "mi_exact",
        "z_p0",
        "z_p1",
        "z_mi",
    ]
    row = [
        symbols,
        summary["p0_hat"],
        probs.p_off,
        summary["p1_hat"],
        probs.p_on,
        summary["mi_plugin"],
        mi_exact,
        (summary["p0_hat"] - probs.p_off) / summary["p0_stderr"],
        (summary["p1_hat"] - probs.p_on) / summary["p1_stderr"],
        (summary["mi_plugin"] - mi_exact) / summary["mi_sigma"],
    ]
    return header, [row]


def format_csv(header, rows):
    """Serialize to CSV text: UTF-8 content, LF endings, 17 significant digits."""
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for value in row:
            if isinstance(value, float):
                cells.append(f"{value:.17g}")
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
