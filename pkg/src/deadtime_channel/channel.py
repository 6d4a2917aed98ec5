"""Channel parameters and the rate -> per-sample detection probability map.

The receiver holds each detected photon for a dead time tau, and the ADC
samples every T_s >= tau.  A sample is 1 exactly when at least one photon
arrived in the trailing dead-time window, so a window at total arrival
rate x fires with probability 1 - exp(-x * tau).  All rates and times are
raw dimensionful reals; the normalized setting used throughout the sweep
presets fixes the symbol duration to 1 (tau and the background rate are
then fractions of a symbol).
"""

import math
from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class ChannelParams:
    """Physical description of the dead-time photon-counting channel.

    peak_rate          photons per unit time while the "on" symbol is sent
    background_rate    dark-current photon rate, always present
    dead_time          pulse-merge window of the detector
    sampling_interval  ADC sample spacing (>= dead_time)
    samples_per_symbol samples falling inside one OOK symbol
    """

    peak_rate: float
    background_rate: float
    dead_time: float
    sampling_interval: float
    samples_per_symbol: int

    def __post_init__(self):
        if self.peak_rate < 0:
            raise ParameterError(f"peak_rate must be >= 0, got {self.peak_rate}")
        if self.background_rate < 0:
            raise ParameterError(
                f"background_rate must be >= 0, got {self.background_rate}"
            )
        if self.dead_time <= 0:
            raise ParameterError(f"dead_time must be > 0, got {self.dead_time}")
        if self.sampling_interval < self.dead_time:
            raise ParameterError(
                "sampling_interval must be >= dead_time "
                f"(got {self.sampling_interval} < {self.dead_time})"
            )
        if int(self.samples_per_symbol) != self.samples_per_symbol or (
            self.samples_per_symbol < 1
        ):
            raise ParameterError(
                f"samples_per_symbol must be a positive integer, "
                f"got {self.samples_per_symbol}"
            )

    @property
    def symbol_duration(self) -> float:
        return self.samples_per_symbol * self.sampling_interval


@dataclass(frozen=True)
class BinaryDetectionProbs:
    """Per-sample firing probabilities under the two OOK symbols."""

    p_off: float
    p_on: float

    def __post_init__(self):
        if not 0.0 <= self.p_off <= self.p_on <= 1.0:
            raise ParameterError(
                f"need 0 <= p_off <= p_on <= 1, got ({self.p_off}, {self.p_on})"
            )


def detection_prob(rate, dead_time):
    """P(at least one arrival in a dead-time window) = 1 - exp(-rate*dead_time).

    Uses expm1 so small products keep full relative precision.
    """
    if rate < 0:
        raise ParameterError(f"rate must be >= 0, got {rate}")
    if dead_time <= 0:
        raise ParameterError(f"dead_time must be > 0, got {dead_time}")
    return -math.expm1(-rate * dead_time)


def symbol_probs(params: ChannelParams) -> BinaryDetectionProbs:
    """Detection probabilities (p_off, p_on) for OOK symbols 0 and 1."""
    return BinaryDetectionProbs(
        p_off=detection_prob(params.background_rate, params.dead_time),
        p_on=detection_prob(
            params.peak_rate + params.background_rate, params.dead_time
        ),
    )
