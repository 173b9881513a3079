"""Deterministic parameter sweeps over the two power models.

Four sweep kinds are supported:

* ``distance`` -- one model over a 1-D distance axis.  The conventional
  model sweeps the transmitter->device distance directly; the surface
  model holds the first hop fixed at the scenario's base-station->surface
  distance and sweeps the second hop.
* ``angle``    -- the surface model over the same distance axis, one table
  section per (incidence, departure) angle pair.
* ``coverage`` -- both models on an x/y ground grid at a fixed device
  height, using the true 3-D geometry.
* ``compare``  -- both models at identical device positions along the ray
  from the base station through the device anchor.

Every row echoes the exact evaluator inputs, so any row can be reproduced
by a single core call.  Rows are emitted in sweep-coordinate order and a
rerun with the same scenario and seed is bit-identical; Monte Carlo rows
draw from a per-point substream keyed by (seed, point index), which is
what makes the output independent of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

from ._version import __version__
from .core import (
    FADING_DETERMINISTIC,
    FADING_RAYLEIGH,
    MODEL_CONVENTIONAL,
    MODEL_IRS,
    IrsPanel,
    Point3,
    PowerSample,
    conventional_rx_power,
    euclidean_distance,
    irs_rx_power,
    watts_to_dbm,
)
from .fading import expected_conventional_power

if TYPE_CHECKING:  # pragma: no cover
    from .scenario import Scenario

KIND_DISTANCE = "distance"
KIND_ANGLE = "angle"
KIND_COVERAGE = "coverage"
KIND_COMPARE = "compare"
SWEEP_KINDS = (KIND_DISTANCE, KIND_ANGLE, KIND_COVERAGE, KIND_COMPARE)

# Angle pairs every angle sweep must cover, in degrees (equal incidence
# and departure at 45 and 60, plus the mixed pair).
CANONICAL_ANGLE_PAIRS_DEG = ((45.0, 45.0), (60.0, 60.0), (45.0, 60.0))

_COORD_COLUMNS = {
    KIND_DISTANCE: ("distance_m",),
    KIND_ANGLE: ("theta_t_deg", "theta_r_deg", "distance_m"),
    KIND_COVERAGE: ("x_m", "y_m"),
    KIND_COMPARE: ("distance_m",),
}


@dataclass(frozen=True)
class GridSpec:
    """Ground-plane grid for coverage maps: inclusive extents and counts."""

    x_start_m: float
    x_stop_m: float
    y_start_m: float
    y_stop_m: float
    nx: int
    ny: int
    device_height_m: float = 1.5

    def __post_init__(self) -> None:
        for name in ("nx", "ny"):
            value = getattr(self, name)
            if not (isinstance(value, int) and value >= 2):
                raise ValueError(f"GridSpec.{name} must be an integer >= 2, got {value!r}")
        if not self.x_start_m <= self.x_stop_m:
            raise ValueError(f"GridSpec.x_start_m must be <= x_stop_m, "
                             f"got {self.x_start_m} > {self.x_stop_m}")
        if not self.y_start_m <= self.y_stop_m:
            raise ValueError(f"GridSpec.y_start_m must be <= y_stop_m, "
                             f"got {self.y_start_m} > {self.y_stop_m}")
        for name in ("x_start_m", "x_stop_m", "y_start_m", "y_stop_m", "device_height_m"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"GridSpec.{name} must be finite")


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep.  ``kind`` selects which of the other fields apply.

    ``start_m``/``stop_m``/``step_m`` define the 1-D distance axis (used by
    distance, angle and compare sweeps); a single-point axis with
    start = stop is allowed.  ``model`` picks the evaluated model for plain
    distance sweeps.  ``monte_carlo_n`` > 0 replaces each conventional-model
    row by a Monte Carlo mean over that many fading draws (0 keeps rows
    deterministic); the surface model is always deterministic.
    """

    kind: str
    start_m: float = 10.0
    stop_m: float = 100.0
    step_m: float = 5.0
    model: str = MODEL_CONVENTIONAL
    angle_pairs_deg: tuple[tuple[float, float], ...] = CANONICAL_ANGLE_PAIRS_DEG
    grid: GridSpec | None = None
    monte_carlo_n: int = 0

    def __post_init__(self) -> None:
        if self.kind not in SWEEP_KINDS:
            raise ValueError(f"SweepSpec.kind must be one of {SWEEP_KINDS}, got {self.kind!r}")
        if not (isinstance(self.monte_carlo_n, int) and self.monte_carlo_n >= 0):
            raise ValueError(f"SweepSpec.monte_carlo_n must be an integer >= 0, "
                             f"got {self.monte_carlo_n!r}")
        if self.kind in (KIND_DISTANCE, KIND_ANGLE, KIND_COMPARE):
            if not (math.isfinite(self.start_m) and math.isfinite(self.stop_m)
                    and math.isfinite(self.step_m)):
                raise ValueError("SweepSpec start/stop/step must be finite")
            if not self.step_m > 0.0:
                raise ValueError(f"SweepSpec.step_m must be > 0, got {self.step_m}")
            if not self.start_m <= self.stop_m:
                raise ValueError(f"SweepSpec.start_m must be <= stop_m, "
                                 f"got {self.start_m} > {self.stop_m}")
        if self.kind == KIND_DISTANCE and self.model not in (MODEL_CONVENTIONAL, MODEL_IRS):
            raise ValueError(f"SweepSpec.model must be '{MODEL_CONVENTIONAL}' or "
                             f"'{MODEL_IRS}', got {self.model!r}")
        if self.kind == KIND_ANGLE:
            object.__setattr__(self, "angle_pairs_deg",
                               tuple((float(t), float(r)) for t, r in self.angle_pairs_deg))
            for pair in self.angle_pairs_deg:
                if not (0.0 <= pair[0] < 90.0 and 0.0 <= pair[1] < 90.0):
                    raise ValueError(f"angle pair {pair} out of range [0, 90) degrees")
            missing = [p for p in CANONICAL_ANGLE_PAIRS_DEG if p not in self.angle_pairs_deg]
            if missing:
                raise ValueError(f"angle sweep must include the canonical pairs "
                                 f"{CANONICAL_ANGLE_PAIRS_DEG}; missing {missing}")
        if self.kind == KIND_COVERAGE and self.grid is None:
            raise ValueError("coverage sweep requires SweepSpec.grid")


@dataclass(frozen=True)
class SweepRow:
    """One table row: sweep coordinates, the evaluated sample, and whether
    the geometry was degenerate (device on top of a radiator)."""

    coords: tuple[float, ...]
    sample: PowerSample
    degenerate: bool = False


@dataclass(frozen=True)
class SweepTable:
    """Ordered sweep output plus a metadata echo of how it was produced."""

    kind: str
    coord_columns: tuple[str, ...]
    rows: tuple[SweepRow, ...]
    metadata: dict


@dataclass(frozen=True)
class ComparisonSummary:
    """Row-aligned model comparison along one distance axis.

    ``delta_db`` is surface-model dBm minus conventional dBm per distance.
    ``crossover_distance_m`` is the first distance where the sign of the
    delta flips, linearly interpolated between the bracketing rows (None
    when one model dominates everywhere).
    """

    distances_m: tuple[float, ...]
    delta_db: tuple[float, ...]
    conventional_min_dbm: float
    conventional_max_dbm: float
    irs_min_dbm: float
    irs_max_dbm: float
    crossover_distance_m: float | None


def sweep_point_count(start_m: float, stop_m: float, step_m: float) -> int:
    """Number of points on the inclusive axis: floor((stop-start)/step) + 1."""
    if not step_m > 0.0:
        raise ValueError(f"step_m must be > 0, got {step_m}")
    if not start_m <= stop_m:
        raise ValueError(f"start_m must be <= stop_m, got {start_m} > {stop_m}")
    return int(math.floor((stop_m - start_m) / step_m)) + 1


def sweep_points(start_m: float, stop_m: float, step_m: float) -> list[float]:
    return [start_m + i * step_m for i in range(sweep_point_count(start_m, stop_m, step_m))]


def _metadata(scenario: "Scenario", spec: SweepSpec) -> dict:
    return {
        "tool": "irslink",
        "version": __version__,
        "kind": spec.kind,
        "seed": scenario.fading.seed,
        "monte_carlo_n": spec.monte_carlo_n,
        "scenario": scenario.to_dict(),
    }


def _deterministic_h(scenario: "Scenario") -> float:
    fading = scenario.fading
    return fading.h if fading.mode == FADING_DETERMINISTIC else 1.0


def _conventional_sample(scenario: "Scenario", spec: SweepSpec, distance_m: float,
                         point_index: int, label: str) -> PowerSample:
    """Evaluate the conventional model at one point, Monte Carlo when asked."""
    fading = scenario.fading
    try:
        if fading.mode == FADING_RAYLEIGH and spec.monte_carlo_n > 0:
            estimate = expected_conventional_power(
                scenario.radio, distance_m, fading.alpha,
                spec.monte_carlo_n, fading.seed, stream=point_index)
            power_w = estimate.mean_w
        else:
            power_w = conventional_rx_power(scenario.radio, distance_m,
                                            _deterministic_h(scenario), fading.alpha)
    except ValueError as exc:
        raise ValueError(f"{label}: {exc}") from exc
    return PowerSample(model_tag=MODEL_CONVENTIONAL, power_w=power_w,
                       power_dbm=watts_to_dbm(power_w), distance_m=distance_m)


def _irs_sample(scenario: "Scenario", panel: IrsPanel, d1_m: float, d2_m: float,
                label: str) -> PowerSample:
    try:
        power_w = irs_rx_power(scenario.radio, panel, d1_m, d2_m)
    except ValueError as exc:
        raise ValueError(f"{label}: {exc}") from exc
    return PowerSample(model_tag=MODEL_IRS, power_w=power_w,
                       power_dbm=watts_to_dbm(power_w), d1_m=d1_m, d2_m=d2_m)


def _require_surface(scenario: "Scenario") -> tuple[IrsPanel, float]:
    """Panel and first-hop distance, or a clear error if the scenario has none."""
    if scenario.panel is None or scenario.geometry.irs is None:
        raise ValueError("scenario defines no reflecting surface "
                         "(geometry.irs and panel are required for this sweep)")
    d1_m = euclidean_distance(scenario.geometry.base_station, scenario.geometry.irs)
    if not d1_m > 0.0:
        raise ValueError("geometry.irs coincides with geometry.base_station")
    return scenario.panel, d1_m


def run_distance_sweep(scenario: "Scenario", spec: SweepSpec) -> SweepTable:
    """One model over the 1-D distance axis; one row per distance point.

    For the conventional model the axis is the transmitter->device distance
    along the ray from the base station.  For the surface model the first
    hop stays at the scenario's base-station->surface distance and the axis
    is the surface->device distance.
    """
    if spec.kind != KIND_DISTANCE:
        raise ValueError(f"expected kind '{KIND_DISTANCE}', got {spec.kind!r}")
    distances = sweep_points(spec.start_m, spec.stop_m, spec.step_m)
    rows = []
    if spec.model == MODEL_IRS:
        panel, d1_m = _require_surface(scenario)
        for d2_m in distances:
            sample = _irs_sample(scenario, panel, d1_m, d2_m, f"distance_m={d2_m!r}")
            rows.append(SweepRow(coords=(d2_m,), sample=sample))
    else:
        for i, d in enumerate(distances):
            sample = _conventional_sample(scenario, spec, d, i, f"distance_m={d!r}")
            rows.append(SweepRow(coords=(d,), sample=sample))
    return SweepTable(kind=spec.kind, coord_columns=_COORD_COLUMNS[spec.kind],
                      rows=tuple(rows), metadata=_metadata(scenario, spec))


def run_angle_sweep(scenario: "Scenario", spec: SweepSpec) -> SweepTable:
    """Surface model per angle pair over the distance axis.

    The table holds one section per (theta_t, theta_r) pair, in the order
    the pairs are listed; within a section rows are ordered by distance.
    """
    if spec.kind != KIND_ANGLE:
        raise ValueError(f"expected kind '{KIND_ANGLE}', got {spec.kind!r}")
    panel, d1_m = _require_surface(scenario)
    distances = sweep_points(spec.start_m, spec.stop_m, spec.step_m)
    rows = []
    for theta_t_deg, theta_r_deg in spec.angle_pairs_deg:
        angled = replace(panel, theta_t_rad=math.radians(theta_t_deg),
                         theta_r_rad=math.radians(theta_r_deg))
        for d2_m in distances:
            label = f"theta=({theta_t_deg!r}, {theta_r_deg!r}) distance_m={d2_m!r}"
            sample = _irs_sample(scenario, angled, d1_m, d2_m, label)
            rows.append(SweepRow(coords=(theta_t_deg, theta_r_deg, d2_m), sample=sample))
    return SweepTable(kind=spec.kind, coord_columns=_COORD_COLUMNS[spec.kind],
                      rows=tuple(rows), metadata=_metadata(scenario, spec))


def _grid_axis(start: float, stop: float, count: int) -> list[float]:
    span = stop - start
    return [start + i * span / (count - 1) for i in range(count)]


_DEGENERATE_W = float("inf")


def run_coverage_grid(scenario: "Scenario", spec: SweepSpec) -> SweepTable:
    """Received power of each model over an x/y grid at fixed device height.

    Points are walked x-major (all y for the first x, then the next x); at
    each point the conventional row comes first, then the surface row when
    the scenario has a surface.  A grid point that lands exactly on the
    transmitter (or on the surface, for the surface row) cannot be
    evaluated; the row is kept, flagged degenerate, with infinite power as
    the sentinel.
    """
    if spec.kind != KIND_COVERAGE:
        raise ValueError(f"expected kind '{KIND_COVERAGE}', got {spec.kind!r}")
    grid = spec.grid
    if grid is None:
        raise ValueError("coverage sweep requires SweepSpec.grid")
    has_surface = scenario.panel is not None and scenario.geometry.irs is not None
    if has_surface:
        panel, d1_m = _require_surface(scenario)
    xs = _grid_axis(grid.x_start_m, grid.x_stop_m, grid.nx)
    ys = _grid_axis(grid.y_start_m, grid.y_stop_m, grid.ny)
    base = scenario.geometry.base_station
    surface = scenario.geometry.irs
    rows = []
    for ix, x in enumerate(xs):
        for iy, y in enumerate(ys):
            device = Point3(x, y, grid.device_height_m)
            point_index = ix * grid.ny + iy
            label = f"x_m={x!r} y_m={y!r}"
            d = euclidean_distance(base, device)
            if d == 0.0:
                sample = PowerSample(model_tag=MODEL_CONVENTIONAL, power_w=_DEGENERATE_W,
                                     power_dbm=watts_to_dbm(_DEGENERATE_W), distance_m=d)
                rows.append(SweepRow(coords=(x, y), sample=sample, degenerate=True))
            else:
                sample = _conventional_sample(scenario, spec, d, point_index, label)
                rows.append(SweepRow(coords=(x, y), sample=sample))
            if has_surface:
                d2_m = euclidean_distance(surface, device)
                if d2_m == 0.0:
                    sample = PowerSample(model_tag=MODEL_IRS, power_w=_DEGENERATE_W,
                                         power_dbm=watts_to_dbm(_DEGENERATE_W),
                                         d1_m=d1_m, d2_m=d2_m)
                    rows.append(SweepRow(coords=(x, y), sample=sample, degenerate=True))
                else:
                    rows.append(SweepRow(coords=(x, y),
                                         sample=_irs_sample(scenario, panel, d1_m, d2_m, label)))
    return SweepTable(kind=spec.kind, coord_columns=_COORD_COLUMNS[spec.kind],
                      rows=tuple(rows), metadata=_metadata(scenario, spec))


def _device_ray(scenario: "Scenario") -> tuple[float, float, float]:
    """Unit ground-plane direction from the base station through the device
    anchor (east when the two share ground coordinates), plus device height."""
    base = scenario.geometry.base_station
    anchor = scenario.geometry.device
    ux, uy = anchor.x_m - base.x_m, anchor.y_m - base.y_m
    norm = math.hypot(ux, uy)
    if norm == 0.0:
        ux, uy = 1.0, 0.0
    else:
        ux, uy = ux / norm, uy / norm
    return ux, uy, anchor.z_m


def run_compare_sweep(scenario: "Scenario", spec: SweepSpec) -> SweepTable:
    """Both models at identical device positions along the anchor ray.

    The sweep coordinate is the ground range from the base station; both
    models see the same 3-D device position, so their distances include the
    height offsets.  Two rows per point: conventional first, then surface.
    """
    if spec.kind != KIND_COMPARE:
        raise ValueError(f"expected kind '{KIND_COMPARE}', got {spec.kind!r}")
    panel, d1_m = _require_surface(scenario)
    base = scenario.geometry.base_station
    surface = scenario.geometry.irs
    ux, uy, device_z = _device_ray(scenario)
    rows = []
    for i, t in enumerate(sweep_points(spec.start_m, spec.stop_m, spec.step_m)):
        device = Point3(base.x_m + t * ux, base.y_m + t * uy, device_z)
        label = f"distance_m={t!r}"
        d = euclidean_distance(base, device)
        if d == 0.0:
            sample = PowerSample(model_tag=MODEL_CONVENTIONAL, power_w=_DEGENERATE_W,
                                 power_dbm=watts_to_dbm(_DEGENERATE_W), distance_m=d)
            rows.append(SweepRow(coords=(t,), sample=sample, degenerate=True))
        else:
            rows.append(SweepRow(coords=(t,),
                                 sample=_conventional_sample(scenario, spec, d, i, label)))
        d2_m = euclidean_distance(surface, device)
        if d2_m == 0.0:
            sample = PowerSample(model_tag=MODEL_IRS, power_w=_DEGENERATE_W,
                                 power_dbm=watts_to_dbm(_DEGENERATE_W), d1_m=d1_m, d2_m=d2_m)
            rows.append(SweepRow(coords=(t,), sample=sample, degenerate=True))
        else:
            rows.append(SweepRow(coords=(t,),
                                 sample=_irs_sample(scenario, panel, d1_m, d2_m, label)))
    return SweepTable(kind=spec.kind, coord_columns=_COORD_COLUMNS[spec.kind],
                      rows=tuple(rows), metadata=_metadata(scenario, spec))


def summarize_comparison(table: SweepTable) -> ComparisonSummary:
    """Extrema, per-distance deltas and the first crossover of a compare table."""
    if table.kind != KIND_COMPARE:
        raise ValueError(f"expected a '{KIND_COMPARE}' table, got {table.kind!r}")
    if not table.rows:
        raise ValueError("compare table has no rows")
    conventional = [r for r in table.rows if r.sample.model_tag == MODEL_CONVENTIONAL]
    surface = [r for r in table.rows if r.sample.model_tag == MODEL_IRS]
    if len(conventional) != len(surface):
        raise ValueError("compare table is not row-aligned across models")
    distances = tuple(r.coords[0] for r in conventional)
    delta = tuple(s.sample.power_dbm - c.sample.power_dbm
                  for c, s in zip(conventional, surface))
    crossover = None
    for i in range(len(delta)):
        if not math.isfinite(delta[i]):
            continue
        if delta[i] == 0.0:
            crossover = distances[i]
            break
        if i + 1 < len(delta) and math.isfinite(delta[i + 1]) \
                and (delta[i] > 0.0) != (delta[i + 1] > 0.0):
            frac = delta[i] / (delta[i] - delta[i + 1])
            crossover = distances[i] + frac * (distances[i + 1] - distances[i])
            break
    return ComparisonSummary(
        distances_m=distances,
        delta_db=delta,
        conventional_min_dbm=min(r.sample.power_dbm for r in conventional),
        conventional_max_dbm=max(r.sample.power_dbm for r in conventional),
        irs_min_dbm=min(r.sample.power_dbm for r in surface),
        irs_max_dbm=max(r.sample.power_dbm for r in surface),
        crossover_distance_m=crossover,
    )


def compare_models(scenario: "Scenario", spec: SweepSpec) -> ComparisonSummary:
    """Run the compare sweep and summarize it in one step."""
    return summarize_comparison(run_compare_sweep(scenario, spec))
