"""Shared builders and tolerances for the test suite."""

import math

import numpy as np

from irslink import (
    FadingSpec,
    GridSpec,
    IrsPanel,
    LinkGeometry,
    Point3,
    RadioConfig,
    Scenario,
    SweepSpec,
)

REL = 1e-12
ABS_FLOOR = 1e-300


def make_radio(**overrides) -> RadioConfig:
    params = dict(carrier_frequency_hz=3.5e9, transmit_power_w=1.0,
                  bandwidth_hz=1.0e8, tx_gain_linear=1.0, rx_gain_linear=1.0)
    params.update(overrides)
    return RadioConfig(**params)


def make_panel(**overrides) -> IrsPanel:
    params = dict(elements_m=32, elements_n=32, element_len_x_m=0.01,
                  element_len_y_m=0.01, reflection_coeff=0.9,
                  theta_t_rad=math.radians(45.0), theta_r_rad=math.radians(45.0))
    params.update(overrides)
    return IrsPanel(**params)


def make_scenario(with_surface: bool = True, radio: RadioConfig | None = None,
                  panel: IrsPanel | None = None, fading: FadingSpec | None = None,
                  sweep: SweepSpec | None = None) -> Scenario:
    """Small test scenario: mast at the origin, optional surface 20 m out."""
    geometry = LinkGeometry(
        base_station=Point3(0.0, 0.0, 10.0),
        device=Point3(5.0, 0.0, 1.5),
        irs=Point3(20.0, 0.0, 5.0) if with_surface else None,
    )
    return Scenario(
        radio=radio if radio is not None else make_radio(),
        geometry=geometry,
        fading=fading if fading is not None else FadingSpec(),
        panel=(panel if panel is not None else make_panel()) if with_surface else None,
        sweep=sweep,
    )


def small_grid(**overrides) -> GridSpec:
    params = dict(x_start_m=-20.0, x_stop_m=20.0, y_start_m=-20.0, y_stop_m=20.0,
                  nx=3, ny=3, device_height_m=1.5)
    params.update(overrides)
    return GridSpec(**params)


def draw_conventional_params(rng: np.random.Generator) -> dict:
    """One random valid parameter set for the direct-link model."""
    return dict(
        p_t=float(rng.uniform(1e-3, 100.0)),
        frequency_hz=float(rng.uniform(1e8, 1e11)),
        h=float(rng.uniform(1e-3, 5.0)),
        d=float(rng.uniform(0.5, 1e4)),
        alpha=float(rng.uniform(1.0, 6.0)),
    )


def draw_irs_params(rng: np.random.Generator) -> dict:
    """One random valid parameter set for the surface-assisted model."""
    return dict(
        p_t=float(rng.uniform(1e-3, 100.0)),
        frequency_hz=float(rng.uniform(1e8, 1e11)),
        g_t=float(rng.uniform(0.1, 100.0)),
        g_r=float(rng.uniform(0.1, 100.0)),
        m=int(rng.integers(1, 257)),
        n=int(rng.integers(1, 257)),
        dx=float(rng.uniform(1e-3, 0.5)),
        dy=float(rng.uniform(1e-3, 0.5)),
        a=float(rng.uniform(0.05, 1.0)),
        theta_t=float(rng.uniform(0.0, math.pi / 2 - 0.01)),
        theta_r=float(rng.uniform(0.0, math.pi / 2 - 0.01)),
        d1=float(rng.uniform(0.5, 1e4)),
        d2=float(rng.uniform(0.5, 1e4)),
    )


def eval_conventional(params: dict) -> float:
    from irslink import conventional_rx_power

    cfg = make_radio(carrier_frequency_hz=params["frequency_hz"],
                     transmit_power_w=params["p_t"])
    return conventional_rx_power(cfg, params["d"], params["h"], params["alpha"])


def eval_irs(params: dict) -> float:
    from irslink import irs_rx_power

    cfg = make_radio(carrier_frequency_hz=params["frequency_hz"],
                     transmit_power_w=params["p_t"],
                     tx_gain_linear=params["g_t"], rx_gain_linear=params["g_r"])
    panel = IrsPanel(elements_m=params["m"], elements_n=params["n"],
                     element_len_x_m=params["dx"], element_len_y_m=params["dy"],
                     reflection_coeff=params["a"],
                     theta_t_rad=params["theta_t"], theta_r_rad=params["theta_r"])
    return irs_rx_power(cfg, panel, params["d1"], params["d2"])
