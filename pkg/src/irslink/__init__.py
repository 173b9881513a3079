"""irslink: received-power models for conventional and surface-assisted
small-cell downlinks, with reproducible sweeps and CSV/figure reporting."""

from ._version import __version__
from .core import (
    FADING_DETERMINISTIC,
    FADING_RAYLEIGH,
    MODEL_CONVENTIONAL,
    MODEL_IRS,
    SPEED_OF_LIGHT_M_S,
    FadingSpec,
    IrsPanel,
    LinkGeometry,
    Point3,
    PowerSample,
    RadioConfig,
    conventional_rx_power,
    dbm_to_watts,
    euclidean_distance,
    irs_rx_power,
    irs_scattering_gain,
    watts_to_dbm,
    wavelength,
)
from .fading import (
    FadingSampler,
    MonteCarloEstimate,
    expected_conventional_power,
    exponential_from_uniform,
)
from .scenario import (
    Scenario,
    ScenarioError,
    default_scenario,
    load_scenario,
    parse_scenario_text,
    serialize_scenario,
)
from .sweep import (
    CANONICAL_ANGLE_PAIRS_DEG,
    ComparisonSummary,
    GridSpec,
    SweepRow,
    SweepSpec,
    SweepTable,
    compare_models,
    run_angle_sweep,
    run_compare_sweep,
    run_coverage_grid,
    run_distance_sweep,
    summarize_comparison,
    sweep_point_count,
    sweep_points,
)
from .report import (
    format_float,
    render_plot,
    table_to_csv_text,
    write_csv,
    write_metadata_json,
    write_report,
)

__all__ = [
    "__version__",
    "SPEED_OF_LIGHT_M_S",
    "MODEL_CONVENTIONAL",
    "MODEL_IRS",
    "FADING_DETERMINISTIC",
    "FADING_RAYLEIGH",
    "CANONICAL_ANGLE_PAIRS_DEG",
    "RadioConfig",
    "Point3",
    "LinkGeometry",
    "IrsPanel",
    "FadingSpec",
    "PowerSample",
    "FadingSampler",
    "MonteCarloEstimate",
    "Scenario",
    "ScenarioError",
    "SweepSpec",
    "GridSpec",
    "SweepRow",
    "SweepTable",
    "ComparisonSummary",
    "wavelength",
    "euclidean_distance",
    "conventional_rx_power",
    "irs_scattering_gain",
    "irs_rx_power",
    "watts_to_dbm",
    "dbm_to_watts",
    "exponential_from_uniform",
    "expected_conventional_power",
    "run_distance_sweep",
    "run_angle_sweep",
    "run_coverage_grid",
    "run_compare_sweep",
    "summarize_comparison",
    "compare_models",
    "sweep_point_count",
    "sweep_points",
    "default_scenario",
    "load_scenario",
    "parse_scenario_text",
    "serialize_scenario",
    "format_float",
    "table_to_csv_text",
    "write_csv",
    "write_metadata_json",
    "render_plot",
    "write_report",
]
