import math

import numpy as np
import pytest

from deadtime_channel import (
    BinaryDetectionProbs,
    ParameterError,
    beta_triple,
    bound_gap,
    detection_prob,
    estimate_exponential_rate,
    exp_rate_large_L,
    exp_rate_zero_background,
    expansions_large_A,
    gap_offsets_large_A,
    gap_offsets_low_background,
    gap_quadratic_coeff_low_A,
    imax_asymptote_large_L,
    imax_bounds_large_A,
    mi_max_bruteforce,
)
from deadtime_channel.divergences import BetaTriple


def test_imax_asymptote_noiseless():
    lo, hi = imax_asymptote_large_L(BetaTriple(0.0, 0.0, 0.0))
    assert lo == hi == math.log(2.0)


def test_imax_asymptote_equal_kl_branch():
    lo, hi = imax_asymptote_large_L(BetaTriple(0.01, 0.001, 0.001))
    assert lo == math.log(2.0) - 0.01
    assert hi == math.log(2.0) - 0.001


def test_imax_asymptote_unequal_kl_branch():
    _, hi = imax_asymptote_large_L(BetaTriple(0.01, 0.002, 0.001))
    assert hi == math.log(2.0) + 0.001


def test_imax_asymptote_brackets_exact_maximum():
    tau, lam0, peak = 0.02, 0.02, 10.0
    probs = BinaryDetectionProbs(
        detection_prob(lam0, tau), detection_prob(peak + lam0, tau)
    )
    slack = 1e-12  # beyond L ~ 250 the o() terms drop under summation noise
    for trials in (200, 250):
        triple = beta_triple(probs, trials)
        lo, hi = imax_asymptote_large_L(triple)
        _, imax = mi_max_bruteforce(probs, trials)
        assert lo - slack <= imax <= hi + slack


def _grid_expansion_residuals(a_taus, lam_tau=0.1, tau=0.1, trials=10):
    p0 = detection_prob(lam_tau / tau, tau)
    rows = []
    for a_tau in a_taus:
        p1 = detection_prob((a_tau + lam_tau) / tau, tau)
        triple = beta_triple(BinaryDetectionProbs(p0, p1), trials)
        be, b1e, b2e = expansions_large_A(p0, p1, trials)
        q1 = 1.0 - p1
        rows.append(
            (
                q1,
                (triple.beta - be) / q1,
                abs(triple.beta1 - b1e),
                abs(triple.beta2 - b2e) / q1,
            )
        )
    return rows


def test_expansion_residuals_are_higher_order():
    # beta residual / (1 - p1) settles to a constant; beta2's vanishes
    rows = _grid_expansion_residuals((8.0, 12.0, 16.0, 20.0))
    beta_ratios = [abs(r[1]) for r in rows]
    assert beta_ratios[-1] < 2.0 * beta_ratios[0]
    assert max(beta_ratios) < 1.0
    assert rows[-1][3] < 1e-12


def test_beta1_expansion_error_decays_exponentially():
    rows = _grid_expansion_residuals((8.0, 16.0))
    assert rows[1][2] < rows[0][2] * math.exp(-4.0)


def test_expansion_near_saturated_signal():
    # leading terms at p1 -> 1: (p0^(L/2), p0^L, 0); the first-order term
    # still contributes ~sqrt(1-p1)
    p0, trials = 0.3, 6
    be, b1e, b2e = expansions_large_A(p0, 1.0 - 1e-13, trials)
    assert be == pytest.approx(p0 ** (trials / 2.0), abs=1e-6)
    assert b1e == pytest.approx(p0**trials, rel=1e-6)
    assert b2e == pytest.approx(0.0, abs=1e-12)


def test_expansion_domain():
    with pytest.raises(ParameterError):
        expansions_large_A(0.0, 0.5, 5)
    with pytest.raises(ParameterError):
        expansions_large_A(0.5, 1.0, 5)


def test_imax_bounds_large_A_upper_value():
    lo, hi = imax_bounds_large_A(0.5, 1.0, 2)
    assert hi == pytest.approx(0.25 + math.log(1.75), rel=1e-14)
    assert lo < hi


def test_imax_bounds_large_A_noiseless_limit():
    lo, hi = imax_bounds_large_A(1e-9, 1.0 - 1e-12, 4)
    assert lo == pytest.approx(math.log(2.0), abs=1e-6)
    assert hi == pytest.approx(math.log(2.0), abs=1e-6)


def test_imax_bounds_large_A_bracket_exact():
    tau, lam_tau, trials = 0.1, 0.1, 10
    p0 = detection_prob(lam_tau / tau, tau)
    for a_tau in np.arange(5.0, 20.01, 1.5):
        p1 = detection_prob((a_tau + lam_tau) / tau, tau)
        lo, hi = imax_bounds_large_A(p0, p1, trials)
        _, imax = mi_max_bruteforce(BinaryDetectionProbs(p0, p1), trials)
        assert lo <= imax <= hi


def test_exp_rate_large_L_extremes():
    assert exp_rate_large_L(0.3, 0.3) == 0.0
    assert exp_rate_large_L(0.0, 1.0) == math.inf


def test_gap_offsets_large_A_main_branch():
    p0, p1, trials = 0.1, 0.99, 10  # (1 - p0) L = 9 > 1/2
    eps_u, eps_l = gap_offsets_large_A(p0, p1, trials)
    lead = (
        trials
        * p0 ** ((trials - 1) / 2.0)
        * math.sqrt(1.0 - p0)
        * math.sqrt(1.0 - p1)
    )
    assert eps_u == pytest.approx(2.0 * lead, rel=1e-12)
    assert eps_l == pytest.approx(lead / (1.0 + p0 ** (trials / 2.0)), rel=1e-12)


def test_gap_offsets_large_A_boundary_branch():
    # L = 1, p0 = 0.5 makes (1 - p0) L = 1/2 exactly
    p0, p1 = 0.5, 0.9
    eps_u, eps_l = gap_offsets_large_A(p0, p1, 1)
    lead = 1.0 * math.sqrt(0.5)  # L * p0^((L-1)/2) sqrt(1-p0) at L=1
    spike = 0.5 ** (-0.5) / math.sqrt(0.5)
    assert eps_u == pytest.approx((2.0 * lead - spike) * math.sqrt(1.0 - p1), rel=1e-12)
    assert eps_l == pytest.approx(
        (lead / (1.0 + math.sqrt(0.5)) - 0.5 * spike) * math.sqrt(1.0 - p1), rel=1e-12
    )


def test_gap_offsets_large_A_subthreshold_branch_negative():
    eps_u, eps_l = gap_offsets_large_A(0.7, 0.9, 1)  # (1 - p0) L = 0.3 < 1/2
    assert eps_u < 0.0
    assert eps_l == pytest.approx(0.5 * eps_u, rel=1e-14)


def test_offset_reciprocity():
    rng = np.random.default_rng(61)
    for _ in range(40):
        p0, p1 = np.sort(rng.uniform(0.01, 0.99, 2))
        trials = int(rng.integers(1, 40))
        direct = gap_offsets_low_background(float(p0), float(p1), trials)
        swapped = gap_offsets_large_A(float(1.0 - p1), float(1.0 - p0), trials)
        assert direct[0] == pytest.approx(swapped[0], rel=1e-11, abs=1e-300)
        assert direct[1] == pytest.approx(swapped[1], rel=1e-11, abs=1e-300)


def test_low_background_branch_predicate():
    # p1 L = 0.5 exactly picks the boundary branch
    a = gap_offsets_low_background(0.01, 0.5, 1)
    b = gap_offsets_low_background(0.01, 0.5 + 1e-12, 1)
    assert a != b  # spike term enters only at the boundary


def test_zero_background_rate_value():
    assert exp_rate_zero_background(10, 0.1) == 0.5


def test_zero_background_rate_domain():
    with pytest.raises(ParameterError):
        exp_rate_zero_background(0, 0.1)
    with pytest.raises(ParameterError):
        exp_rate_zero_background(10, 0.0)


def test_quadratic_coeff_value():
    # 3 * 10 * (1 - 0.5) * 1 / (16 * 0.5) = 15/8
    assert gap_quadratic_coeff_low_A(0.5, 10, 1.0) == 1.875


def test_quadratic_coeff_scales_linearly_in_trials():
    assert gap_quadratic_coeff_low_A(0.3, 20, 0.5) == 2.0 * gap_quadratic_coeff_low_A(
        0.3, 10, 0.5
    )


def test_quadratic_coeff_diverges_at_zero_background():
    assert gap_quadratic_coeff_low_A(0.0, 10, 1.0) == math.inf


def test_estimate_rate_exact_exponential():
    pts = [(x, math.exp(-2.0 * x)) for x in (0.0, 0.5, 1.0, 2.0, 3.0)]
    assert estimate_exponential_rate(pts) == pytest.approx(-2.0, abs=1e-12)


def test_estimate_rate_constant():
    pts = [(float(x), 0.7) for x in range(5)]
    assert estimate_exponential_rate(pts) == pytest.approx(0.0, abs=1e-14)


def test_estimate_rate_noisy_decay_within_ci():
    rng = np.random.default_rng(62)
    xs = np.linspace(0.0, 5.0, 40)
    sigma = 0.05
    values = np.exp(-1.7 * xs + sigma * rng.standard_normal(xs.size))
    slope = estimate_exponential_rate(list(zip(xs, values)))
    sxx = float(((xs - xs.mean()) ** 2).sum())
    assert abs(slope + 1.7) < 4.0 * sigma / math.sqrt(sxx)


def test_estimate_rate_domain():
    with pytest.raises(ParameterError):
        estimate_exponential_rate([(0.0, 1.0), (1.0, 0.5)])
    with pytest.raises(ParameterError):
        estimate_exponential_rate([(0.0, 1.0), (1.0, -0.5), (2.0, 0.2)])


def test_gap_tracks_quadratic_coefficient():
    # spot check away from the acceptance configuration
    tau, lam0, trials, peak = 0.05, 0.5, 8, 5e-4
    p0 = detection_prob(lam0, tau)
    p1 = detection_prob(peak + lam0, tau)
    gap = bound_gap(beta_triple(BinaryDetectionProbs(p0, p1), trials))
    coeff = gap_quadratic_coeff_low_A(p0, trials, tau)
    assert gap / peak**2 == pytest.approx(coeff, rel=1e-2)
