"""Scenario files: one YAML document describing radio, geometry and sweeps.

The format is strict on purpose: unknown keys are rejected and every
complaint names the offending field path (``panel.reflection_coeff: ...``),
so a typo cannot silently fall back to a default.  Omitted optional blocks
do get defaults -- most importantly, no ``fading`` block means a
deterministic unit gain.

``default_scenario()`` is the documented reference setup: a 3.5 GHz, 1 W
small cell with a 64 x 64 surface of 4.28 cm elements mounted 30 m from
the base station, device sweeps out to the 100 m cell edge, and a
fourth-power distance law on the (blocked) direct link.  These values are
calibrated so the surface-assisted link clears the direct link by roughly
40 dB at the cell edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import yaml

from .core import (
    FADING_DETERMINISTIC,
    FADING_RAYLEIGH,
    FadingSpec,
    IrsPanel,
    LinkGeometry,
    Point3,
    RadioConfig,
)
from .sweep import CANONICAL_ANGLE_PAIRS_DEG, GridSpec, SweepSpec

__all__ = [
    "Scenario",
    "ScenarioError",
    "default_scenario",
    "load_scenario",
    "parse_scenario_text",
    "serialize_scenario",
]


class ScenarioError(ValueError):
    """A scenario file is syntactically or semantically invalid."""


@dataclass(frozen=True)
class Scenario:
    """Everything a command needs: radio, geometry, optional surface,
    fading model, and an optional sweep description."""

    radio: RadioConfig
    geometry: LinkGeometry
    fading: FadingSpec = FadingSpec()
    panel: IrsPanel | None = None
    sweep: SweepSpec | None = None

    def to_dict(self) -> dict:
        """Plain nested dict mirror of the file format (angles in degrees)."""
        doc: dict = {
            "radio": {
                "carrier_frequency_hz": self.radio.carrier_frequency_hz,
                "transmit_power_w": self.radio.transmit_power_w,
                "bandwidth_hz": self.radio.bandwidth_hz,
                "tx_gain_linear": self.radio.tx_gain_linear,
                "rx_gain_linear": self.radio.rx_gain_linear,
            },
            "geometry": {
                "base_station": _point_to_list(self.geometry.base_station),
                "device": _point_to_list(self.geometry.device),
            },
        }
        if self.geometry.irs is not None:
            doc["geometry"]["irs"] = _point_to_list(self.geometry.irs)
        if self.panel is not None:
            doc["panel"] = {
                "elements_m": self.panel.elements_m,
                "elements_n": self.panel.elements_n,
                "element_len_x_m": self.panel.element_len_x_m,
                "element_len_y_m": self.panel.element_len_y_m,
                "reflection_coeff": self.panel.reflection_coeff,
                "theta_t_deg": math.degrees(self.panel.theta_t_rad),
                "theta_r_deg": math.degrees(self.panel.theta_r_rad),
            }
        doc["fading"] = {
            "mode": self.fading.mode,
            "h": self.fading.h,
            "alpha": self.fading.alpha,
            "seed": self.fading.seed,
        }
        if self.sweep is not None:
            sweep: dict = {
                "kind": self.sweep.kind,
                "model": self.sweep.model,
                "start_m": self.sweep.start_m,
                "stop_m": self.sweep.stop_m,
                "step_m": self.sweep.step_m,
                "angle_pairs_deg": [list(p) for p in self.sweep.angle_pairs_deg],
                "monte_carlo_n": self.sweep.monte_carlo_n,
            }
            if self.sweep.grid is not None:
                sweep["grid"] = {
                    "x_start_m": self.sweep.grid.x_start_m,
                    "x_stop_m": self.sweep.grid.x_stop_m,
                    "y_start_m": self.sweep.grid.y_start_m,
                    "y_stop_m": self.sweep.grid.y_stop_m,
                    "nx": self.sweep.grid.nx,
                    "ny": self.sweep.grid.ny,
                    "device_height_m": self.sweep.grid.device_height_m,
                }
            doc["sweep"] = sweep
        return doc


def _point_to_list(p: Point3) -> list[float]:
    return [p.x_m, p.y_m, p.z_m]


class _Block:
    """One mapping level of the file, with path-aware access and a strict
    unknown-key check on ``finish()``."""

    def __init__(self, path: str, raw: object):
        if not isinstance(raw, dict):
            raise ScenarioError(f"{path or 'scenario'}: expected a mapping, "
                                f"got {type(raw).__name__}")
        self.path = path
        self.raw = dict(raw)

    def _child_path(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def take(self, key: str, required: bool = False, default: object = None) -> object:
        if key in self.raw:
            return self.raw.pop(key)
        if required:
            raise ScenarioError(f"{self._child_path(key)}: missing required field")
        return default

    def finish(self) -> None:
        if self.raw:
            unknown = ", ".join(sorted(str(k) for k in self.raw))
            raise ScenarioError(f"{self.path or 'scenario'}: unknown field(s): {unknown}")


def _real(path: str, value: object, *, minimum: float | None = None,
          maximum: float | None = None, exclusive_min: bool = False) -> float:
    if isinstance(value, str):
        try:
            value = float(value)  # scientific notation like "3.5e9"
        except ValueError:
            raise ScenarioError(f"{path}: expected a number, got {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{path}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ScenarioError(f"{path}: must be finite, got {value!r}")
    if minimum is not None:
        if exclusive_min and not value > minimum:
            raise ScenarioError(f"{path}: must be > {minimum}, got {value}")
        if not exclusive_min and not value >= minimum:
            raise ScenarioError(f"{path}: must be >= {minimum}, got {value}")
    if maximum is not None and not value <= maximum:
        raise ScenarioError(f"{path}: must be <= {maximum}, got {value}")
    return value


def _integer(path: str, value: object, *, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{path}: expected an integer, got {value!r}")
    if value < minimum:
        raise ScenarioError(f"{path}: must be >= {minimum}, got {value}")
    return value


def _point(path: str, value: object) -> Point3:
    if not (isinstance(value, (list, tuple)) and len(value) == 3):
        raise ScenarioError(f"{path}: expected [x_m, y_m, z_m]")
    return Point3(*(_real(f"{path}[{i}]", v) for i, v in enumerate(value)))


def _parse_radio(raw: object) -> RadioConfig:
    block = _Block("radio", raw)
    cfg = RadioConfig(
        carrier_frequency_hz=_real("radio.carrier_frequency_hz",
                                   block.take("carrier_frequency_hz", required=True),
                                   minimum=0.0, exclusive_min=True),
        transmit_power_w=_real("radio.transmit_power_w",
                               block.take("transmit_power_w", required=True),
                               minimum=0.0, exclusive_min=True),
        bandwidth_hz=_real("radio.bandwidth_hz", block.take("bandwidth_hz", default=1.0e8),
                           minimum=0.0, exclusive_min=True),
        tx_gain_linear=_real("radio.tx_gain_linear", block.take("tx_gain_linear", default=1.0),
                             minimum=0.0, exclusive_min=True),
        rx_gain_linear=_real("radio.rx_gain_linear", block.take("rx_gain_linear", default=1.0),
                             minimum=0.0, exclusive_min=True),
    )
    block.finish()
    return cfg


def _parse_geometry(raw: object) -> LinkGeometry:
    block = _Block("geometry", raw)
    base = _point("geometry.base_station", block.take("base_station", required=True))
    device = _point("geometry.device", block.take("device", required=True))
    irs_raw = block.take("irs")
    irs = _point("geometry.irs", irs_raw) if irs_raw is not None else None
    block.finish()
    return LinkGeometry(base_station=base, device=device, irs=irs)


def _angle_deg(path: str, value: object) -> float:
    deg = _real(path, value, minimum=0.0, maximum=90.0)
    if deg >= 90.0:
        raise ScenarioError(f"{path}: must be < 90 degrees, got {deg}")
    return deg


def _parse_panel(raw: object) -> IrsPanel:
    block = _Block("panel", raw)
    panel = IrsPanel(
        elements_m=_integer("panel.elements_m", block.take("elements_m", required=True),
                            minimum=1),
        elements_n=_integer("panel.elements_n", block.take("elements_n", required=True),
                            minimum=1),
        element_len_x_m=_real("panel.element_len_x_m",
                              block.take("element_len_x_m", required=True),
                              minimum=0.0, exclusive_min=True),
        element_len_y_m=_real("panel.element_len_y_m",
                              block.take("element_len_y_m", required=True),
                              minimum=0.0, exclusive_min=True),
        reflection_coeff=_real("panel.reflection_coeff",
                               block.take("reflection_coeff", required=True),
                               minimum=0.0, exclusive_min=True, maximum=1.0),
        theta_t_rad=math.radians(_angle_deg("panel.theta_t_deg",
                                            block.take("theta_t_deg", required=True))),
        theta_r_rad=math.radians(_angle_deg("panel.theta_r_deg",
                                            block.take("theta_r_deg", required=True))),
    )
    block.finish()
    return panel


def _parse_fading(raw: object) -> FadingSpec:
    if raw is None:
        return FadingSpec()
    block = _Block("fading", raw)
    mode = block.take("mode", default=FADING_DETERMINISTIC)
    if mode not in (FADING_DETERMINISTIC, FADING_RAYLEIGH):
        raise ScenarioError(f"fading.mode: expected '{FADING_DETERMINISTIC}' or "
                            f"'{FADING_RAYLEIGH}', got {mode!r}")
    seed = _integer("fading.seed", block.take("seed", default=0))
    if seed >= 2 ** 64:
        raise ScenarioError(f"fading.seed: must fit in 64 bits, got {seed}")
    spec = FadingSpec(
        mode=mode,
        h=_real("fading.h", block.take("h", default=1.0), minimum=0.0),
        alpha=_real("fading.alpha", block.take("alpha", default=2.0), minimum=1.0),
        seed=seed,
    )
    block.finish()
    return spec


def _parse_grid(raw: object) -> GridSpec:
    block = _Block("sweep.grid", raw)
    try:
        grid = GridSpec(
            x_start_m=_real("sweep.grid.x_start_m", block.take("x_start_m", required=True)),
            x_stop_m=_real("sweep.grid.x_stop_m", block.take("x_stop_m", required=True)),
            y_start_m=_real("sweep.grid.y_start_m", block.take("y_start_m", required=True)),
            y_stop_m=_real("sweep.grid.y_stop_m", block.take("y_stop_m", required=True)),
            nx=_integer("sweep.grid.nx", block.take("nx", required=True), minimum=2),
            ny=_integer("sweep.grid.ny", block.take("ny", required=True), minimum=2),
            device_height_m=_real("sweep.grid.device_height_m",
                                  block.take("device_height_m", default=1.5)),
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(f"sweep.grid: {exc}") from exc
    block.finish()
    return grid


def _parse_angle_pairs(raw: object) -> tuple[tuple[float, float], ...]:
    if not isinstance(raw, (list, tuple)):
        raise ScenarioError("sweep.angle_pairs_deg: expected a list of [theta_t, theta_r] pairs")
    pairs = []
    for i, item in enumerate(raw):
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise ScenarioError(f"sweep.angle_pairs_deg[{i}]: expected [theta_t_deg, theta_r_deg]")
        pairs.append((_real(f"sweep.angle_pairs_deg[{i}][0]", item[0], minimum=0.0),
                      _real(f"sweep.angle_pairs_deg[{i}][1]", item[1], minimum=0.0)))
    return tuple(pairs)


def _parse_sweep(raw: object) -> SweepSpec:
    block = _Block("sweep", raw)
    kind = block.take("kind", default="distance")
    grid_raw = block.take("grid")
    try:
        spec = SweepSpec(
            kind=kind,
            model=block.take("model", default="conventional"),
            start_m=_real("sweep.start_m", block.take("start_m", default=10.0)),
            stop_m=_real("sweep.stop_m", block.take("stop_m", default=100.0)),
            step_m=_real("sweep.step_m", block.take("step_m", default=5.0)),
            angle_pairs_deg=_parse_angle_pairs(
                block.take("angle_pairs_deg", default=[list(p) for p in CANONICAL_ANGLE_PAIRS_DEG])),
            grid=_parse_grid(grid_raw) if grid_raw is not None else None,
            monte_carlo_n=_integer("sweep.monte_carlo_n", block.take("monte_carlo_n", default=0)),
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(f"sweep: {exc}") from exc
    block.finish()
    return spec


def parse_scenario_text(text: str) -> Scenario:
    """Parse a scenario document from a YAML string.

    Raises:
        ScenarioError: on YAML syntax errors, unknown keys, missing
            required fields, or out-of-range values; the message names the
            field path.
    """
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"scenario is not valid YAML: {exc}") from exc
    root = _Block("", raw)
    radio = _parse_radio(root.take("radio", required=True))
    geometry = _parse_geometry(root.take("geometry", required=True))
    panel_raw = root.take("panel")
    fading = _parse_fading(root.take("fading"))
    sweep_raw = root.take("sweep")
    root.finish()
    panel = _parse_panel(panel_raw) if panel_raw is not None else None
    sweep = _parse_sweep(sweep_raw) if sweep_raw is not None else None
    if panel is not None and geometry.irs is None:
        raise ScenarioError("geometry.irs: required when a panel block is present")
    if geometry.irs is not None and panel is None:
        raise ScenarioError("panel: required when geometry.irs is present")
    return Scenario(radio=radio, geometry=geometry, fading=fading, panel=panel, sweep=sweep)


def load_scenario(path: str) -> Scenario:
    """Read and parse a scenario file.

    Raises:
        OSError: if the file cannot be read.
        ScenarioError: if the contents are invalid.
    """
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario_text(fh.read())


def serialize_scenario(scenario: Scenario) -> str:
    """Render a scenario back to YAML; parsing the result reproduces the
    scenario exactly (value-level round trip)."""
    return yaml.safe_dump(scenario.to_dict(), sort_keys=False, default_flow_style=None)


def default_scenario() -> Scenario:
    """The documented reference scenario (see module docstring)."""
    return Scenario(
        radio=RadioConfig(
            carrier_frequency_hz=3.5e9,
            transmit_power_w=1.0,
            bandwidth_hz=1.0e8,
            tx_gain_linear=2.0,
            rx_gain_linear=2.0,
        ),
        geometry=LinkGeometry(
            base_station=Point3(0.0, 0.0, 25.0),
            device=Point3(10.0, 0.0, 1.5),
            irs=Point3(30.0, 0.0, 10.0),
        ),
        panel=IrsPanel(
            elements_m=64,
            elements_n=64,
            element_len_x_m=0.0428,
            element_len_y_m=0.0428,
            reflection_coeff=0.9,
            theta_t_rad=math.radians(45.0),
            theta_r_rad=math.radians(45.0),
        ),
        fading=FadingSpec(mode=FADING_DETERMINISTIC, h=1.0, alpha=4.0, seed=20260816),
        sweep=SweepSpec(
            kind="distance",
            model="irs",
            start_m=10.0,
            stop_m=100.0,
            step_m=5.0,
            angle_pairs_deg=CANONICAL_ANGLE_PAIRS_DEG,
            grid=GridSpec(x_start_m=-100.0, x_stop_m=100.0,
                          y_start_m=-100.0, y_stop_m=100.0,
                          nx=21, ny=21, device_height_m=1.5),
            monte_carlo_n=0,
        ),
    )
