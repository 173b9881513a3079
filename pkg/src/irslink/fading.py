"""Unit-mean exponential fading gains and Monte Carlo power estimates.

Rayleigh-amplitude fading on the direct link means the received *power*
gain h is exponentially distributed with mean 1.  Draws come from a
counter-based generator (Philox) keyed by ``(seed, stream)``, so a sweep
can hand stream k to grid point k and get the same numbers no matter how
the points are scheduled.  The gain itself is produced by the inverse CDF

    h = -ln(u),   u uniform on (0, 1]

never by rejection or ziggurat methods, so a fixed seed pins the exact
sample sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import RadioConfig, conventional_rx_power, wavelength, _FOUR_PI_SQ


def exponential_from_uniform(u: float) -> float:
    """Inverse CDF of the unit-mean exponential: u in (0, 1] -> -ln(u)."""
    if not 0.0 < u <= 1.0:
        raise ValueError(f"u must be in (0, 1], got {u}")
    return -math.log(u)


class FadingSampler:
    """Reproducible stream of unit-mean exponential power gains.

    Args:
        seed: unsigned 64-bit base seed.
        stream: substream index; samplers with the same seed but different
            streams produce statistically independent sequences.  Parallel
            sweeps assign one stream per grid point.
    """

    def __init__(self, seed: int, stream: int = 0):
        if not (isinstance(seed, int) and 0 <= seed < 2 ** 64):
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
        if not (isinstance(stream, int) and 0 <= stream < 2 ** 64):
            raise ValueError(f"stream must be an unsigned 64-bit integer, got {stream!r}")
        self.seed = seed
        self.stream = stream
        self.stream_position = 0
        key = np.array([seed, stream], dtype=np.uint64)
        self._rng = np.random.Generator(np.random.Philox(key=key))

    def spawn(self, stream: int) -> "FadingSampler":
        """Fresh sampler on substream ``stream`` of the same seed."""
        return FadingSampler(self.seed, stream)

    def sample_h(self) -> float:
        """Draw one power gain h = -ln(u), u in (0, 1]; advances the stream."""
        return float(self.sample_h_array(1)[0])

    def sample_h_array(self, count: int) -> np.ndarray:
        """Draw ``count`` power gains as a float64 array; advances the stream."""
        if not (isinstance(count, int) and count >= 1):
            raise ValueError(f"count must be an integer >= 1, got {count!r}")
        # Generator.random() is uniform on [0, 1); 1 - r is the u in (0, 1]
        # that the inverse CDF needs, and makes h = 0 reachable (u = 1).
        u = 1.0 - self._rng.random(count)
        self.stream_position += count
        return -np.log(u)


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Sample mean with its standard error.

    ``std_error_w`` is the unbiased sample standard deviation (n-1 in the
    denominator) divided by sqrt(n); it is defined as 0 when n = 1.
    """

    mean_w: float
    std_error_w: float
    n_samples: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n_samples, int) and self.n_samples >= 1):
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples!r}")
        if not self.std_error_w >= 0.0:
            raise ValueError(f"std_error_w must be >= 0, got {self.std_error_w!r}")


def expected_conventional_power(cfg: RadioConfig, distance_m: float,
                                path_loss_exponent: float, n_samples: int,
                                seed: int, stream: int = 0) -> MonteCarloEstimate:
    """Monte Carlo mean of the direct link's received power under fading.

    Evaluates the conventional model at ``n_samples`` independent fading
    gains from ``FadingSampler(seed, stream)`` and averages.  Identical
    (seed, stream, n) always reproduce the estimate bit-for-bit.

    Args:
        cfg: radio parameters.
        distance_m: transmitter->device separation, must be > 0.
        path_loss_exponent: distance exponent alpha >= 1.
        n_samples: number of draws, >= 1.
        seed: base seed for the fading stream.
        stream: substream index (default 0).

    Returns:
        MonteCarloEstimate with mean, standard error and n.
    """
    if not (isinstance(n_samples, int) and n_samples >= 1):
        raise ValueError(f"n_samples must be an integer >= 1, got {n_samples!r}")
    # Same guards and evaluation order as conventional_rx_power, applied
    # elementwise; a single draw therefore reproduces the scalar call
    # bit-for-bit.
    conventional_rx_power(cfg, distance_m, 1.0, path_loss_exponent)
    h = FadingSampler(seed, stream).sample_h_array(n_samples)
    lam = wavelength(cfg.carrier_frequency_hz)
    powers = cfg.transmit_power_w * lam * h / (_FOUR_PI_SQ * distance_m ** path_loss_exponent)
    mean_w = float(np.mean(powers))
    if n_samples == 1:
        std_error_w = 0.0
    else:
        std_error_w = float(np.std(powers, ddof=1) / math.sqrt(n_samples))
    return MonteCarloEstimate(mean_w=mean_w, std_error_w=std_error_w, n_samples=n_samples)
