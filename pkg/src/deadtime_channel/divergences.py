"""Closed-form divergences between the two binomial output laws.

With N trials per symbol the outputs are Bin(L, p0) and Bin(L, p1); both
the KL divergences and the Chernoff alpha-divergence collapse to single-
trial expressions scaled by L.  Everything downstream depends on the laws
only through three exponentiated divergences:

    beta  = exp(-C_{1/2}(P1||P0)) = (sqrt(p0 p1) + sqrt((1-p0)(1-p1)))^L
    beta1 = exp(-KL(P1||P0))
    beta2 = exp(-KL(P0||P1))

Infinite divergences (absolute-continuity failures, e.g. p0 = 0) are kept
as +inf and map to an exact 0 on the beta scale.
"""

import math
from dataclasses import dataclass

from .channel import BinaryDetectionProbs
from .errors import ParameterError


@dataclass(frozen=True)
class BetaTriple:
    """Exponentiated divergences driving every rate bound.

    Satisfies beta >= beta**2 >= max(beta1, beta2) whenever p0 != p1, with
    all three equal to 1 exactly when the laws coincide.
    """

    beta: float
    beta1: float
    beta2: float


def _check_prob(p, name):
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"{name} must be in [0, 1], got {p}")


def _check_trials(trials):
    if int(trials) != trials or trials < 1:
        raise ParameterError(f"trials must be a positive integer, got {trials}")


def kl_binomial(p_from, p_to, trials):
    """KL(Bin(L,p_from) || Bin(L,p_to)) in nats; +inf when not absolutely continuous."""
    _check_prob(p_from, "p_from")
    _check_prob(p_to, "p_to")
    _check_trials(trials)

    def term(a, b):
        # a*ln(a/b) with 0*ln(0/b) = 0 and a*ln(a/0) = +inf for a > 0
        if a == 0.0:
            return 0.0
        if b == 0.0:
            return math.inf
        return a * math.log(a / b)

    return trials * (term(p_from, p_to) + term(1.0 - p_from, 1.0 - p_to))


def chernoff_binomial(alpha, p_a, p_b, trials):
    """Chernoff alpha-divergence C_alpha(Bin(L,p_a) || Bin(L,p_b)) in nats.

    C_alpha = -L * ln(p_a^alpha p_b^(1-alpha) + (1-p_a)^alpha (1-p_b)^(1-alpha)),
    symmetric under (alpha, p_a, p_b) -> (1-alpha, p_b, p_a).
    """
    if not 0.0 <= alpha <= 1.0:
        raise ParameterError(f"alpha must be in [0, 1], got {alpha}")
    _check_prob(p_a, "p_a")
    _check_prob(p_b, "p_b")
    _check_trials(trials)
    s = p_a**alpha * p_b ** (1.0 - alpha) + (1.0 - p_a) ** alpha * (1.0 - p_b) ** (
        1.0 - alpha
    )
    if s == 0.0:
        return math.inf
    return -trials * math.log(s)


def beta_triple(probs: BinaryDetectionProbs, trials) -> BetaTriple:
    """The (beta, beta1, beta2) triple for Bin(L, p_off) vs Bin(L, p_on)."""
    _check_trials(trials)
    p0, p1 = probs.p_off, probs.p_on
    if p0 == p1:
        return BetaTriple(1.0, 1.0, 1.0)
    root = math.sqrt(p0 * p1) + math.sqrt((1.0 - p0) * (1.0 - p1))
    beta = 0.0 if root == 0.0 else math.exp(trials * math.log(root))
    kl10 = kl_binomial(p1, p0, trials)
    kl01 = kl_binomial(p0, p1, trials)
    beta1 = 0.0 if math.isinf(kl10) else math.exp(-kl10)
    beta2 = 0.0 if math.isinf(kl01) else math.exp(-kl01)
    return BetaTriple(beta=beta, beta1=beta1, beta2=beta2)


def optimal_alpha_grid(probs: BinaryDetectionProbs, trials, grid_size):
    """Grid argmax over alpha of min{C_alpha(P1||P0), C_alpha(P0||P1)}.

    Verification oracle for the closed-form optimum alpha* = 1/2: returns
    (alpha_star, value).  Degenerate p0 = p1 yields (0.5, 0.0).
    """
    if grid_size < 3:
        raise ParameterError(f"grid_size must be >= 3, got {grid_size}")
    p0, p1 = probs.p_off, probs.p_on
    if p0 == p1:
        return 0.5, 0.0
    best_alpha, best_val = 0.5, -math.inf
    for i in range(grid_size):
        alpha = i / (grid_size - 1)
        val = min(
            chernoff_binomial(alpha, p1, p0, trials),
            chernoff_binomial(alpha, p0, p1, trials),
        )
        if val > best_val:
            best_alpha, best_val = alpha, val
    return best_alpha, best_val


def alpha_stationary_point(probs: BinaryDetectionProbs, trials):
    """Closed-form stationary alpha maximizing C_alpha(P1||P0) for 0<p0<p1<1.

    alpha = [ln((1-p0)/p0) + ln ln((1-p0)/(1-p1)) - ln ln(p1/p0)]
            / ln(p1(1-p0) / (p0(1-p1)))

    The maximizer does not depend on the trial count; ``trials`` is kept
    for interface symmetry with the grid search.
    """
    _check_trials(trials)
    p0, p1 = probs.p_off, probs.p_on
    if not 0.0 < p0 < p1 < 1.0:
        raise ParameterError(f"need 0 < p_off < p_on < 1, got ({p0}, {p1})")
    num = (
        math.log((1.0 - p0) / p0)
        + math.log(math.log((1.0 - p0) / (1.0 - p1)))
        - math.log(math.log(p1 / p0))
    )
    den = math.log(p1 * (1.0 - p0) / (p0 * (1.0 - p1)))
    return num / den
