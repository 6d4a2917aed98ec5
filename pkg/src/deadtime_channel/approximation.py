"""Medium-SNR expansion of the achievable rate for low background rates.

Valid when the expected number of background-only firings per symbol,
L*p0, is well below one; the guard below refuses parameters outside that
region instead of returning a silently wrong number.  The expansion is
most accurate at medium duty cycles: the -ln(mu L p1) term diverges as
mu -> 0, so only the exact corner values mu in {0, 1} are pinned to 0.
"""

import math

from .channel import BinaryDetectionProbs
from .errors import ParameterError
from .mutual_info import binary_entropy


def mi_approx_low_background(mu, probs: BinaryDetectionProbs, trials):
    """Expansion of I(X; N_hat) in nats, dropping o(L p0) and O(1/L) terms."""
    if not 0.0 <= mu <= 1.0:
        raise ParameterError(f"mu must be in [0, 1], got {mu}")
    if mu == 0.0 or mu == 1.0:
        return 0.0
    p0, p1 = probs.p_off, probs.p_on
    if not 0.0 < p1 < 1.0:
        raise ParameterError(f"approximation needs 0 < p_on < 1, got {p1}")
    lp0 = trials * p0
    if lp0 >= 1.0:
        raise ParameterError(
            f"approximation outside validity region: trials * p_off = {lp0} >= 1"
        )
    log_q1 = math.log1p(-p1)
    q1_pow = math.exp(trials * log_q1)  # (1 - p_on)^L
    zero_mass = mu * q1_pow + (1.0 - mu)

    value = -zero_mass * math.log(zero_mass)
    value += mu * trials * q1_pow * log_q1
    value -= mu * (1.0 - q1_pow) * math.log(mu)
    value += (1.0 - mu) * lp0 * (
        math.log(zero_mass) - math.log(mu * trials * p1) - (trials - 1) * log_q1
    )
    value -= (1.0 - mu) * binary_entropy(lp0)
    return value
