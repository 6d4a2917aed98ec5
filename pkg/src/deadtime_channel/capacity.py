"""Capacity of the dead-time receiver and the continuous-channel reference.

With T_s = tau the optimal input is on-off between rates {0, A} and the
capacity is (1/tau) * max_mu F(mu) with

    F(mu) = h_b(p_hat) - (1-mu) h_b(p(L0)) - mu h_b(p(A+L0)),
    p_hat = (1-mu) p(L0) + mu p(A+L0),      p(x) = 1 - exp(-x tau),

maximized in closed form by

    mu* = (a/(1+a) - p(L0)) / (p(A+L0) - p(L0)),
    a   = exp(-(h_b(p(A+L0)) - h_b(p(L0))) / (p(A+L0) - p(L0))).

Slower sampling only attenuates: C = (tau/T_s) * C_tau.  All outputs are
in nats; CSV emitters convert to bits where useful.

The entropy difference quotient is evaluated in a compensated form (log1p
of increments plus exact -q ln q = q x tau terms) so that mu* stays
accurate down to vanishing peak rates and out to peak rates where
p(A+L0) rounds to 1.
"""

import math
from dataclasses import dataclass

from .errors import ParameterError
from . import optimize


@dataclass(frozen=True)
class CapacityResult:
    """Optimal duty cycle, its intermediate coefficient, mixture probability,
    and capacity in nats per unit time."""

    duty_cycle: float
    coeff_a: float
    mix_prob: float
    capacity_nats_per_time: float


def _check_rates(peak_rate, background_rate, dead_time):
    if peak_rate < 0:
        raise ParameterError(f"peak_rate must be >= 0, got {peak_rate}")
    if background_rate < 0:
        raise ParameterError(
            f"background_rate must be >= 0, got {background_rate}"
        )
    if dead_time <= 0:
        raise ParameterError(f"dead_time must be > 0, got {dead_time}")


def _neg_xlogx(x):
    return 0.0 if x <= 0.0 else -x * math.log(x)


def _entropy_quotient(peak_rate, background_rate, dead_time):
    """(h_b(p1) - h_b(p0)) / (p1 - p0) without cancellation.

    Uses the exact identities -q ln q = q x tau for q = exp(-x tau) and
    p1 - p0 = q0 * (1 - exp(-A tau)).
    """
    x0 = background_rate * dead_time
    x1 = (peak_rate + background_rate) * dead_time
    p0 = -math.expm1(-x0)
    q0 = math.exp(-x0)
    p1 = -math.expm1(-x1)
    q1 = math.exp(-x1)
    d = q0 * (-math.expm1(-peak_rate * dead_time))
    if p0 == 0.0:
        dh = _neg_xlogx(p1) + q1 * x1
    else:
        dh = (
            -p0 * math.log1p(d / p0)
            - d * math.log(p1)
            + q1 * peak_rate * dead_time
            - x0 * d
        )
    return dh / d, p0, q0, p1, q1, d


def optimal_duty_cycle(peak_rate, background_rate, dead_time):
    """Closed-form (mu_star, a) maximizing F; requires peak_rate > 0."""
    _check_rates(peak_rate, background_rate, dead_time)
    if peak_rate == 0:
        raise ParameterError("optimal_duty_cycle is degenerate at peak_rate = 0")
    quotient, p0, q0, _, _, d = _entropy_quotient(
        peak_rate, background_rate, dead_time
    )
    a = math.exp(-quotient)
    mu_star = (a * q0 - p0) / ((1.0 + a) * d)
    return min(max(mu_star, 0.0), 1.0), a


def _entropy_increment(p_a, q_a, p_b, q_b, delta):
    """h_b(p_b) - h_b(p_a) with delta = p_b - p_a, accurate in the increment.

    Splits -p ln p and -q ln q into log1p terms of size O(delta); the Jensen
    gap F(mu) assembled from these stays relative-accurate even where the
    plain entropy difference would cancel to the noise floor.
    """
    if delta == 0.0:
        return 0.0
    if min(p_a, q_a, p_b, q_b) == 0.0:
        # An endpoint of the simplex is involved; at least one side has a
        # vanishing h_b term, so the plain difference does not cancel.
        return (_neg_xlogx(p_b) + _neg_xlogx(q_b)) - (
            _neg_xlogx(p_a) + _neg_xlogx(q_a)
        )
    rp = delta / p_a
    lp = math.log1p(rp) if abs(rp) < 0.5 else math.log(p_b) - math.log(p_a)
    rq = -delta / q_a
    lq = math.log1p(rq) if abs(rq) < 0.5 else math.log(q_b) - math.log(q_a)
    return -p_a * lp - delta * math.log(p_b) - q_a * lq + delta * math.log(q_b)


def rate_objective(mu, peak_rate, background_rate, dead_time):
    """F(mu) in nats: the per-sample information of the binary-level input.

    Evaluated as (1-mu)[h(p_hat)-h(p0)] + mu[h(p_hat)-h(p1)] so the value
    keeps full relative precision when the two levels nearly coincide.
    """
    if not 0.0 <= mu <= 1.0:
        raise ParameterError(f"mu must be in [0, 1], got {mu}")
    x0 = background_rate * dead_time
    x1 = (peak_rate + background_rate) * dead_time
    p0 = -math.expm1(-x0)
    q0 = math.exp(-x0)
    p1 = -math.expm1(-x1)
    q1 = math.exp(-x1)
    d = q0 * (-math.expm1(-peak_rate * dead_time))
    p_hat = p0 + mu * d
    q_hat = (1.0 - mu) * q0 + mu * q1
    return (1.0 - mu) * _entropy_increment(p0, q0, p_hat, q_hat, mu * d) + (
        mu * _entropy_increment(p1, q1, p_hat, q_hat, -(1.0 - mu) * d)
    )


def capacity_tau(peak_rate, background_rate, dead_time) -> CapacityResult:
    """Capacity at critical sampling T_s = tau, via the closed-form duty cycle."""
    _check_rates(peak_rate, background_rate, dead_time)
    p0 = -math.expm1(-background_rate * dead_time)
    q0 = math.exp(-background_rate * dead_time)
    if peak_rate == 0:
        # Any duty cycle is optimal; fix mu = 1/2 and the A -> 0 limit of a.
        return CapacityResult(
            duty_cycle=0.5,
            coeff_a=p0 / q0 if q0 > 0.0 else math.inf,
            mix_prob=p0,
            capacity_nats_per_time=0.0,
        )
    mu_star, a = optimal_duty_cycle(peak_rate, background_rate, dead_time)
    p1 = -math.expm1(-(peak_rate + background_rate) * dead_time)
    f = rate_objective(mu_star, peak_rate, background_rate, dead_time)
    return CapacityResult(
        duty_cycle=mu_star,
        coeff_a=a,
        mix_prob=p0 + mu_star * (p1 - p0),
        capacity_nats_per_time=f / dead_time,
    )


def capacity_sampled(
    peak_rate, background_rate, dead_time, sampling_interval
) -> CapacityResult:
    """Capacity for T_s >= tau: duty cycle unchanged, rate scaled by tau/T_s."""
    if sampling_interval < dead_time:
        raise ParameterError(
            f"sampling_interval must be >= dead_time "
            f"(got {sampling_interval} < {dead_time})"
        )
    base = capacity_tau(peak_rate, background_rate, dead_time)
    return CapacityResult(
        duty_cycle=base.duty_cycle,
        coeff_a=base.coeff_a,
        mix_prob=base.mix_prob,
        capacity_nats_per_time=base.capacity_nats_per_time
        * (dead_time / sampling_interval),
    )


def capacity_bruteforce(
    peak_rate, background_rate, dead_time, tol=1e-12
) -> CapacityResult:
    """Oracle capacity: scalar maximization of F(mu); F is strictly concave."""
    _check_rates(peak_rate, background_rate, dead_time)
    if tol <= 0:
        raise ParameterError("tol must be positive")
    if peak_rate == 0:
        return capacity_tau(peak_rate, background_rate, dead_time)
    mu_dag, f_dag = optimize.maximize_scalar(
        lambda mu: rate_objective(mu, peak_rate, background_rate, dead_time),
        0.0,
        1.0,
        tol=tol,
    )
    p0 = -math.expm1(-background_rate * dead_time)
    p1 = -math.expm1(-(peak_rate + background_rate) * dead_time)
    p_hat = p0 + mu_dag * (p1 - p0)
    return CapacityResult(
        duty_cycle=mu_dag,
        coeff_a=p_hat / (1.0 - p_hat) if p_hat < 1.0 else math.inf,
        mix_prob=p_hat,
        capacity_nats_per_time=f_dag / dead_time,
    )


def wyner_poisson_capacity(peak_rate, background_rate):
    """Continuous peak-constrained Poisson capacity and its optimal on-probability.

    Returns (q_star, capacity) with, for s = background/peak,

        q_star = (1+s)^(1+s) / (s^s e) - s
        C      = L0 * [-ln(1 + q*/s) + q* ln(1 + 1/s)
                       + (q*/s) ln(1 + (1-q*)/(q*+s))]

    (the bracketed form keeps full precision at low SNR); background 0
    reduces to q* = 1/e, C = peak_rate / e.
    """
    if peak_rate <= 0:
        raise ParameterError(f"peak_rate must be > 0, got {peak_rate}")
    if background_rate < 0:
        raise ParameterError(
            f"background_rate must be >= 0, got {background_rate}"
        )
    if background_rate == 0:
        return 1.0 / math.e, peak_rate / math.e
    s = background_rate / peak_rate
    q_star = (1.0 + s) * math.exp(s * math.log1p(1.0 / s) - 1.0) - s
    cap = background_rate * (
        -math.log1p(q_star / s)
        + q_star * math.log1p(1.0 / s)
        + (q_star / s) * math.log1p((1.0 - q_star) / (q_star + s))
    )
    return q_star, cap


def _scaled_off_entropy(background_rate, dead_time):
    """v = exp(L0 tau) * h_b(p(L0)), stable for any L0 tau (v -> 1 + L0 tau)."""
    x = background_rate * dead_time
    eps = math.exp(-x)
    if eps == 1.0:
        return 0.0
    if eps == 0.0:
        return x + 1.0
    return x + (1.0 - eps) * (-math.log1p(-eps)) / eps


def asymptotic_capacity_coeff_large_A(background_rate, dead_time):
    """Saturation coefficient c of the large-peak-rate capacity c / tau, in nats.

    Algebraically c = h_b(u/(1+u)) - ln(u)/(1+u) with
    u = exp(exp(L0 tau) h_b(p(L0))), which collapses to ln(1 + 1/u); the
    collapsed form is exact at background 0 (ln 2) and immune to the
    h_b(1 - tiny) cancellation at strong background.
    """
    if background_rate < 0:
        raise ParameterError(
            f"background_rate must be >= 0, got {background_rate}"
        )
    if dead_time <= 0:
        raise ParameterError(f"dead_time must be > 0, got {dead_time}")
    v = _scaled_off_entropy(background_rate, dead_time)
    return math.log1p(math.exp(-v))


def quadratic_coeffs_low_A(background_rate, dead_time):
    """Low-peak-rate quadratic capacity coefficients (d_poi, d_tau).

    d_poi = 1/(8 L0) for the continuous channel, d_tau = tau (1-p0)/(8 p0)
    for the dead-time receiver; d_tau < d_poi with ratio -> 1 as tau -> 0.
    """
    if background_rate <= 0:
        raise ParameterError(
            "quadratic coefficients need background_rate > 0 "
            f"(got {background_rate}); the zero-background regime is linear"
        )
    if dead_time <= 0:
        raise ParameterError(f"dead_time must be > 0, got {dead_time}")
    p0 = -math.expm1(-background_rate * dead_time)
    q0 = math.exp(-background_rate * dead_time)
    return 1.0 / (8.0 * background_rate), dead_time * q0 / (8.0 * p0)


def duty_cycle_limits(background_rate, dead_time):
    """The four extreme-peak-rate duty cycle limits.

    Zero-background column: 1/e as the peak rate vanishes, 1/2 as it
    diverges.  With background: 1/2 as it vanishes, and

        1 - 1/[(1 + exp(exp(L0 tau) h_b(p(L0)))) (1 - p(L0))]

    as it diverges (evaluated at the given background and dead time).
    """
    if background_rate < 0:
        raise ParameterError(
            f"background_rate must be >= 0, got {background_rate}"
        )
    if dead_time <= 0:
        raise ParameterError(f"dead_time must be > 0, got {dead_time}")
    v = _scaled_off_entropy(background_rate, dead_time)
    x = background_rate * dead_time
    # 1/((1+e^v) q0) = exp(x - ln(1+e^v)); softplus keeps huge v finite
    softplus = v + math.log1p(math.exp(-v)) if v > 0 else math.log1p(math.exp(v))
    high_with_bg = 1.0 - math.exp(x - softplus)
    return {
        "low_peak_zero_background": 1.0 / math.e,
        "high_peak_zero_background": 0.5,
        "low_peak_with_background": 0.5,
        "high_peak_with_background": high_with_bg,
    }
