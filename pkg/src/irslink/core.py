"""Closed-form downlink power models for small-cell planning studies.

Two receive-power models are provided:

* ``conventional_rx_power`` -- direct transmitter->device link with a
  distance power law and an optional multiplicative fading gain.
* ``irs_rx_power`` -- link relayed by a passive reflecting surface of
  M x N rectangular elements, evaluated deterministically.

Plus the supporting pieces: carrier wavelength, 3-D distances, the unit
scattering gain of a surface element, and watt/dBm conversions.  All
functions are pure; domain violations raise ``ValueError``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT_M_S = 299_792_458.0

_FOUR_PI_SQ = (4.0 * math.pi) ** 2
_SIXTY_FOUR_PI_CUBED = 64.0 * math.pi ** 3

MODEL_CONVENTIONAL = "conventional"
MODEL_IRS = "irs"


def wavelength(carrier_frequency_hz: float) -> float:
    """Carrier wavelength in meters, c / f with c = 299,792,458 m/s exact.

    Raises:
        ValueError: if the frequency is not strictly positive.
    """
    if not carrier_frequency_hz > 0.0:
        raise ValueError(f"carrier_frequency_hz must be > 0, got {carrier_frequency_hz}")
    return SPEED_OF_LIGHT_M_S / carrier_frequency_hz


@dataclass(frozen=True)
class RadioConfig:
    """Radio-side parameters shared by both power models.

    Gains are dimensionless linear factors (1.0 = isotropic).  The bandwidth
    is carried along for rate work built on top of this library; the power
    models themselves do not consume it.
    """

    carrier_frequency_hz: float
    transmit_power_w: float
    bandwidth_hz: float = 1.0e8
    tx_gain_linear: float = 1.0
    rx_gain_linear: float = 1.0

    def __post_init__(self) -> None:
        for name in ("carrier_frequency_hz", "transmit_power_w", "bandwidth_hz",
                     "tx_gain_linear", "rx_gain_linear"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"RadioConfig.{name} must be a positive finite number, got {value!r}")

    @property
    def wavelength_m(self) -> float:
        return wavelength(self.carrier_frequency_hz)


@dataclass(frozen=True)
class Point3:
    """A position in meters, right-handed x/y ground plane and z height."""

    x_m: float
    y_m: float
    z_m: float

    def __post_init__(self) -> None:
        for name in ("x_m", "y_m", "z_m"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"Point3.{name} must be finite, got {value!r}")


def euclidean_distance(a: Point3, b: Point3) -> float:
    """Straight-line distance between two points in meters."""
    return math.hypot(a.x_m - b.x_m, a.y_m - b.y_m, a.z_m - b.z_m)


@dataclass(frozen=True)
class LinkGeometry:
    """Transmitter, optional reflecting surface, and device positions.

    ``device`` doubles as the sweep anchor: 1-D sweeps move the device along
    the ray from the base station through this point.
    """

    base_station: Point3
    device: Point3
    irs: Point3 | None = None

    def direct_distance_m(self) -> float:
        return euclidean_distance(self.base_station, self.device)

    def hop_distances_m(self) -> tuple[float, float]:
        """(base station -> surface, surface -> device) distances.

        Raises:
            ValueError: if no surface position is set.
        """
        if self.irs is None:
            raise ValueError("LinkGeometry.irs is not set; hop distances are undefined")
        return (euclidean_distance(self.base_station, self.irs),
                euclidean_distance(self.irs, self.device))


@dataclass(frozen=True)
class IrsPanel:
    """Geometry and reflectivity of a rectangular reflecting surface.

    The panel has ``elements_m`` x ``elements_n`` rectangular elements of
    size ``element_len_x_m`` x ``element_len_y_m`` meters each.  Incidence
    and departure angles are measured from the surface normal and stored in
    radians; the file/CLI boundary converts from degrees.
    """

    elements_m: int
    elements_n: int
    element_len_x_m: float
    element_len_y_m: float
    reflection_coeff: float
    theta_t_rad: float
    theta_r_rad: float

    def __post_init__(self) -> None:
        for name in ("elements_m", "elements_n"):
            value = getattr(self, name)
            if not (isinstance(value, int) and not isinstance(value, bool) and value >= 1):
                raise ValueError(f"IrsPanel.{name} must be an integer >= 1, got {value!r}")
        for name in ("element_len_x_m", "element_len_y_m"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"IrsPanel.{name} must be > 0, got {value!r}")
        if not (isinstance(self.reflection_coeff, (int, float))
                and 0.0 < self.reflection_coeff <= 1.0):
            raise ValueError(
                f"IrsPanel.reflection_coeff must be in (0, 1], got {self.reflection_coeff!r}")
        for name in ("theta_t_rad", "theta_r_rad"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and 0.0 <= value < math.pi / 2.0):
                raise ValueError(f"IrsPanel.{name} must be in [0, pi/2), got {value!r}")

    def scattering_gain(self, wavelength_m: float) -> float:
        return irs_scattering_gain(self, wavelength_m)


def irs_scattering_gain(panel: IrsPanel, wavelength_m: float) -> float:
    """Unit scattering gain of one surface element: 4*pi*dx*dy / lambda^2.

    Raises:
        ValueError: if the wavelength is not strictly positive.
    """
    if not wavelength_m > 0.0:
        raise ValueError(f"wavelength_m must be > 0, got {wavelength_m}")
    return 4.0 * math.pi * panel.element_len_x_m * panel.element_len_y_m / (wavelength_m * wavelength_m)


def conventional_rx_power(cfg: RadioConfig, distance_m: float,
                          fading_gain: float, path_loss_exponent: float) -> float:
    """Received power of the direct link, in watts.

        P_r = P_t * lambda * h / ((4*pi)^2 * d^alpha)

    The wavelength enters to the first power and antenna gains do not enter
    at all -- that is the model's defined form, and the sibling
    surface-assisted model is intentionally not reconciled with it.

    Args:
        cfg: radio parameters (transmit power and carrier frequency used).
        distance_m: transmitter->device separation d, must be > 0.
        fading_gain: multiplicative power gain h >= 0 (1.0 = no fading).
        path_loss_exponent: distance exponent alpha >= 1.

    Returns:
        Received power in watts; zero exactly when ``fading_gain`` is zero.
    """
    if not distance_m > 0.0:
        raise ValueError(f"distance_m must be > 0, got {distance_m}")
    if not fading_gain >= 0.0:
        raise ValueError(f"fading_gain must be >= 0, got {fading_gain}")
    if not path_loss_exponent >= 1.0:
        raise ValueError(f"path_loss_exponent must be >= 1, got {path_loss_exponent}")
    lam = wavelength(cfg.carrier_frequency_hz)
    return cfg.transmit_power_w * lam * fading_gain / (_FOUR_PI_SQ * distance_m ** path_loss_exponent)


def irs_rx_power(cfg: RadioConfig, panel: IrsPanel,
                 tx_to_surface_m: float, surface_to_rx_m: float) -> float:
    """Received power of the surface-assisted link, in watts.

        P_r = P_t*G_t*G_r*G*M^2*N^2*dx*dy*lambda^2*cos(th_t)*cos(th_r)*A^2
              / (64*pi^3 * (d1*d2)^2)

    with G = 4*pi*dx*dy/lambda^2 always recomputed from the panel and the
    carrier, never supplied by the caller.  The two hops enter only through
    the product d1*d2 and the angles only through cos(th_t)*cos(th_r), so a
    swap of (d1, th_t) with (d2, th_r) returns a bit-identical value.

    Args:
        cfg: radio parameters (power, carrier and both antenna gains used).
        panel: surface geometry, reflectivity and angles.
        tx_to_surface_m: first hop distance d1, must be > 0.
        surface_to_rx_m: second hop distance d2, must be > 0.

    Returns:
        Received power in watts (always > 0 for valid inputs).
    """
    if not tx_to_surface_m > 0.0:
        raise ValueError(f"tx_to_surface_m must be > 0, got {tx_to_surface_m}")
    if not surface_to_rx_m > 0.0:
        raise ValueError(f"surface_to_rx_m must be > 0, got {surface_to_rx_m}")
    lam = wavelength(cfg.carrier_frequency_hz)
    gain = irs_scattering_gain(panel, lam)
    elements_sq = float(panel.elements_m ** 2 * panel.elements_n ** 2)
    numerator = (cfg.transmit_power_w * cfg.tx_gain_linear * cfg.rx_gain_linear
                 * gain * elements_sq
                 * panel.element_len_x_m * panel.element_len_y_m
                 * (lam * lam)
                 * (math.cos(panel.theta_t_rad) * math.cos(panel.theta_r_rad))
                 * panel.reflection_coeff ** 2)
    return numerator / (_SIXTY_FOUR_PI_CUBED * (tx_to_surface_m * surface_to_rx_m) ** 2)


def watts_to_dbm(power_w: float) -> float:
    """Convert watts to dBm: 10*log10(p / 1 mW).

    Nonpositive power has no dB representation; it maps to ``-inf`` as a
    documented sentinel (never a silent NaN).  NaN input is rejected.
    """
    if math.isnan(power_w):
        raise ValueError("power_w is NaN")
    if power_w <= 0.0:
        return float("-inf")
    return 10.0 * math.log10(power_w / 0.001)


def dbm_to_watts(power_dbm: float) -> float:
    """Convert dBm to watts; the ``-inf`` sentinel maps back to 0 W."""
    if math.isnan(power_dbm):
        raise ValueError("power_dbm is NaN")
    if power_dbm == float("-inf"):
        return 0.0
    return 0.001 * 10.0 ** (power_dbm / 10.0)


FADING_DETERMINISTIC = "deterministic"
FADING_RAYLEIGH = "rayleigh"


@dataclass(frozen=True)
class FadingSpec:
    """How the direct link's fading gain h is produced.

    ``deterministic`` pins h to the given value (default 1.0, i.e. the mean
    of the random model); ``rayleigh`` draws unit-mean exponential power
    gains seeded by ``seed``.  The path-loss exponent used by the direct
    link rides along here since it belongs to the same channel model.
    """

    mode: str = FADING_DETERMINISTIC
    h: float = 1.0
    alpha: float = 2.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in (FADING_DETERMINISTIC, FADING_RAYLEIGH):
            raise ValueError(f"FadingSpec.mode must be '{FADING_DETERMINISTIC}' or "
                             f"'{FADING_RAYLEIGH}', got {self.mode!r}")
        if not (isinstance(self.h, (int, float)) and math.isfinite(self.h) and self.h >= 0):
            raise ValueError(f"FadingSpec.h must be a finite number >= 0, got {self.h!r}")
        if not (isinstance(self.alpha, (int, float)) and math.isfinite(self.alpha)
                and self.alpha >= 1.0):
            raise ValueError(f"FadingSpec.alpha must be >= 1, got {self.alpha!r}")
        if not (isinstance(self.seed, int) and not isinstance(self.seed, bool)
                and 0 <= self.seed < 2 ** 64):
            raise ValueError(f"FadingSpec.seed must be an unsigned 64-bit integer, got {self.seed!r}")


@dataclass(frozen=True)
class PowerSample:
    """One evaluated receive-power value with the inputs that produced it.

    ``distance_m`` echoes the direct-link distance for the conventional
    model; ``d1_m``/``d2_m`` echo the hop distances for the surface model.
    ``power_dbm`` is always ``watts_to_dbm(power_w)``; use ``from_watts``.
    """

    model_tag: str
    power_w: float
    power_dbm: float
    distance_m: float | None = None
    d1_m: float | None = None
    d2_m: float | None = None

    def __post_init__(self) -> None:
        if self.model_tag not in (MODEL_CONVENTIONAL, MODEL_IRS):
            raise ValueError(f"PowerSample.model_tag must be "
                             f"'{MODEL_CONVENTIONAL}' or '{MODEL_IRS}', got {self.model_tag!r}")

    @classmethod
    def from_watts(cls, model_tag: str, power_w: float, *,
                   distance_m: float | None = None,
                   d1_m: float | None = None,
                   d2_m: float | None = None) -> "PowerSample":
        return cls(model_tag=model_tag, power_w=power_w,
                   power_dbm=watts_to_dbm(power_w),
                   distance_m=distance_m, d1_m=d1_m, d2_m=d2_m)
