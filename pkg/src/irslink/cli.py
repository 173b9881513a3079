"""Command-line front end.

Five subcommands: ``direct`` and ``irs`` evaluate one point of the
corresponding model and print watts and dBm; ``sweep``, ``coverage`` and
``compare`` run the sweep engine and write CSV (plus a metadata sidecar,
plus an SVG figure with ``--plot``) under ``--out``.

Values come from the scenario file (``--scenario``, falling back to the
built-in default scenario); command-line flags beat scenario values.
Angles are degrees on this boundary.

Exit codes: 0 success, 1 usage error, 2 invalid scenario or parameter
value, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace

from ._version import __version__
from .core import (
    MODEL_CONVENTIONAL,
    MODEL_IRS,
    conventional_rx_power,
    euclidean_distance,
    irs_rx_power,
    watts_to_dbm,
)
from .report import format_float, write_report
from .scenario import Scenario, ScenarioError, default_scenario, load_scenario
from .sweep import (
    KIND_ANGLE,
    KIND_COMPARE,
    KIND_COVERAGE,
    KIND_DISTANCE,
    SweepSpec,
    run_angle_sweep,
    run_compare_sweep,
    run_coverage_grid,
    run_distance_sweep,
    summarize_comparison,
)

USAGE_ERROR = 1
DOMAIN_ERROR = 2
IO_ERROR = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; this tool reserves 2 for domain
    errors, so usage problems are remapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="PATH",
                        help="scenario YAML file (default: built-in default scenario)")
    common.add_argument("--out", metavar="DIR", default=".",
                        help="directory for CSV/JSON/SVG outputs (default: current directory)")
    common.add_argument("--seed", type=int, metavar="U64",
                        help="override the fading seed")
    common.add_argument("--mc-samples", type=int, metavar="N", dest="mc_samples",
                        help="Monte Carlo draws per point (0 = deterministic h)")
    common.add_argument("--plot", action="store_true",
                        help="also render an SVG figure next to the CSV")

    parser = _Parser(prog="irslink",
                     description="Received-power models for conventional and "
                                 "surface-assisted small-cell downlinks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("direct", parents=[common],
                       help="evaluate the conventional link at one distance")
    p.add_argument("--distance", type=float, metavar="M",
                   help="transmitter->device distance (default: from geometry)")
    p.add_argument("--alpha", type=float, metavar="A",
                   help="path-loss exponent (default: fading.alpha)")
    p.add_argument("--h", type=float, metavar="H",
                   help="fading power gain (default: scenario's deterministic h)")

    p = sub.add_parser("irs", parents=[common],
                       help="evaluate the surface-assisted link at one geometry")
    p.add_argument("--d1", type=float, metavar="M",
                   help="transmitter->surface distance (default: from geometry)")
    p.add_argument("--d2", type=float, metavar="M",
                   help="surface->device distance (default: from geometry)")
    p.add_argument("--theta-t-deg", type=float, metavar="DEG", dest="theta_t_deg",
                   help="incidence angle (default: panel value)")
    p.add_argument("--theta-r-deg", type=float, metavar="DEG", dest="theta_r_deg",
                   help="departure angle (default: panel value)")

    p = sub.add_parser("sweep", parents=[common],
                       help="run a distance or angle sweep and write CSV")
    p.add_argument("--kind", choices=[KIND_DISTANCE, KIND_ANGLE],
                   help="sweep kind (default: scenario sweep kind)")
    p.add_argument("--model", choices=[MODEL_CONVENTIONAL, MODEL_IRS],
                   help="model for distance sweeps (default: scenario value)")
    p.add_argument("--start", type=float, metavar="M", help="axis start")
    p.add_argument("--stop", type=float, metavar="M", help="axis stop (inclusive)")
    p.add_argument("--step", type=float, metavar="M", help="axis step")

    sub.add_parser("coverage", parents=[common],
                   help="evaluate both models over the scenario's ground grid")

    p = sub.add_parser("compare", parents=[common],
                       help="both models at identical positions, with summary")
    p.add_argument("--start", type=float, metavar="M", help="axis start")
    p.add_argument("--stop", type=float, metavar="M", help="axis stop (inclusive)")
    p.add_argument("--step", type=float, metavar="M", help="axis step")

    return parser


def _load(args) -> Scenario:
    scenario = load_scenario(args.scenario) if args.scenario else default_scenario()
    if args.seed is not None:
        scenario = replace(scenario, fading=replace(scenario.fading, seed=args.seed))
    return scenario


def _base_sweep(scenario: Scenario) -> SweepSpec:
    return scenario.sweep if scenario.sweep is not None else SweepSpec(kind=KIND_DISTANCE)


def _rekey_sweep(scenario: Scenario, args, kind: str) -> SweepSpec:
    """Scenario sweep spec re-keyed to ``kind`` with flag overrides applied."""
    base = _base_sweep(scenario)
    changes: dict = {"kind": kind}
    for flag, field in (("start", "start_m"), ("stop", "stop_m"), ("step", "step_m"),
                        ("model", "model"), ("mc_samples", "monte_carlo_n")):
        value = getattr(args, flag, None)
        if value is not None:
            changes[field] = value
    return replace(base, **changes)


def _deterministic_h(scenario: Scenario) -> float:
    return scenario.fading.h if scenario.fading.mode == "deterministic" else 1.0


def _print_fields(pairs) -> None:
    for key, value in pairs:
        if isinstance(value, float):
            value = format_float(value)
        print(f"{key}: {value}")


def _cmd_direct(args) -> int:
    scenario = _load(args)
    distance = args.distance if args.distance is not None \
        else scenario.geometry.direct_distance_m()
    alpha = args.alpha if args.alpha is not None else scenario.fading.alpha
    h = args.h if args.h is not None else _deterministic_h(scenario)
    power_w = conventional_rx_power(scenario.radio, distance, h, alpha)
    _print_fields([("model", MODEL_CONVENTIONAL), ("distance_m", distance),
                   ("path_loss_exponent", alpha), ("fading_gain", h),
                   ("power_w", power_w), ("power_dbm", watts_to_dbm(power_w))])
    return 0


def _cmd_irs(args) -> int:
    scenario = _load(args)
    if scenario.panel is None or scenario.geometry.irs is None:
        raise ScenarioError("scenario defines no reflecting surface "
                            "(geometry.irs and panel blocks are required)")
    d1_default, d2_default = scenario.geometry.hop_distances_m()
    d1 = args.d1 if args.d1 is not None else d1_default
    d2 = args.d2 if args.d2 is not None else d2_default
    panel = scenario.panel
    if args.theta_t_deg is not None:
        panel = replace(panel, theta_t_rad=math.radians(args.theta_t_deg))
    if args.theta_r_deg is not None:
        panel = replace(panel, theta_r_rad=math.radians(args.theta_r_deg))
    power_w = irs_rx_power(scenario.radio, panel, d1, d2)
    _print_fields([("model", MODEL_IRS), ("d1_m", d1), ("d2_m", d2),
                   ("theta_t_deg", math.degrees(panel.theta_t_rad)),
                   ("theta_r_deg", math.degrees(panel.theta_r_rad)),
                   ("power_w", power_w), ("power_dbm", watts_to_dbm(power_w))])
    return 0


def _finite_dbms(table) -> list[float]:
    return [r.sample.power_dbm for r in table.rows if math.isfinite(r.sample.power_dbm)]


def _print_sweep_summary(table) -> None:
    dbms = _finite_dbms(table) or [float("-inf")]
    print(f"{table.kind} sweep: {len(table.rows)} rows, power_dbm min "
          f"{format_float(min(dbms))} max {format_float(max(dbms))}")


def _write_outputs(table, args, stem: str) -> None:
    os.makedirs(args.out, exist_ok=True)
    for path in write_report(table, args.out, stem, plot=args.plot):
        print(f"wrote {path}")


def _cmd_sweep(args) -> int:
    scenario = _load(args)
    base = _base_sweep(scenario)
    kind = args.kind if args.kind is not None \
        else (base.kind if base.kind in (KIND_DISTANCE, KIND_ANGLE) else KIND_DISTANCE)
    spec = _rekey_sweep(scenario, args, kind)
    if kind == KIND_ANGLE:
        table = run_angle_sweep(scenario, spec)
    else:
        table = run_distance_sweep(scenario, spec)
    _print_sweep_summary(table)
    _write_outputs(table, args, f"{kind}_sweep")
    return 0


def _cmd_coverage(args) -> int:
    scenario = _load(args)
    spec = _rekey_sweep(scenario, args, KIND_COVERAGE)
    table = run_coverage_grid(scenario, spec)
    _print_sweep_summary(table)
    _write_outputs(table, args, "coverage_grid")
    return 0


def _cmd_compare(args) -> int:
    scenario = _load(args)
    spec = _rekey_sweep(scenario, args, KIND_COMPARE)
    table = run_compare_sweep(scenario, spec)
    summary = summarize_comparison(table)
    _print_sweep_summary(table)
    print(f"conventional: min_dbm {format_float(summary.conventional_min_dbm)} "
          f"max_dbm {format_float(summary.conventional_max_dbm)}")
    print(f"irs: min_dbm {format_float(summary.irs_min_dbm)} "
          f"max_dbm {format_float(summary.irs_max_dbm)}")
    print(f"cell_edge_gap_db: {format_float(summary.delta_db[-1])} "
          f"at distance_m {format_float(summary.distances_m[-1])}")
    if summary.crossover_distance_m is None:
        print("crossover_distance_m: none")
    else:
        print(f"crossover_distance_m: {format_float(summary.crossover_distance_m)}")
    _write_outputs(table, args, "model_compare")
    return 0


_COMMANDS = {
    "direct": _cmd_direct,
    "irs": _cmd_irs,
    "sweep": _cmd_sweep,
    "coverage": _cmd_coverage,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except ScenarioError as exc:
        print(f"irslink: invalid scenario: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    except ValueError as exc:
        print(f"irslink: invalid value: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    except OSError as exc:
        print(f"irslink: i/o error: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
