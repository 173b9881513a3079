"""Tests for CSV/JSON/SVG reporting: formats, determinism, golden files."""

import csv
import importlib.util
import io
import json
import math
import os

import pytest

from irslink import (
    FadingSpec,
    SweepSpec,
    format_float,
    run_compare_sweep,
    run_distance_sweep,
    table_to_csv_text,
    write_csv,
    write_metadata_json,
    write_report,
)
from irslink.report import csv_header

from helpers import REL, make_scenario
from oracles import oracle_irs_w

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")


def _load_golden_module():
    spec = importlib.util.spec_from_file_location(
        "make_goldens", os.path.join(GOLDEN_DIR, "make_goldens.py"))
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


make_goldens = _load_golden_module()


def small_table(**spec_overrides):
    defaults = dict(kind="distance", start_m=10.0, stop_m=30.0, step_m=10.0)
    defaults.update(spec_overrides)
    return run_distance_sweep(make_scenario(), SweepSpec(**defaults))


class TestFormatting:
    def test_twelve_significant_digits(self):
        assert format_float(math.pi) == "3.14159265359"
        assert format_float(5.133785701331e-06) == "5.13378570133e-06"

    def test_integral_values_stay_short(self):
        assert format_float(10.0) == "10"
        assert format_float(-45.0) == "-45"
        assert format_float(0.1) == "0.1"

    def test_sentinels(self):
        assert format_float(float("inf")) == "inf"
        assert format_float(float("-inf")) == "-inf"

    @pytest.mark.parametrize("kind, expected", [
        ("distance", "distance_m,model,power_w,power_dbm"),
        ("angle", "theta_t_deg,theta_r_deg,distance_m,model,power_w,power_dbm"),
        ("coverage", "x_m,y_m,model,power_w,power_dbm"),
        ("compare", "distance_m,model,power_w,power_dbm"),
    ])
    def test_headers_per_kind(self, kind, expected):
        table = make_goldens.golden_tables()[
            {"distance": "distance_small.csv", "angle": "angle_small.csv",
             "coverage": "coverage_small.csv", "compare": "compare_small.csv"}[kind]]
        assert ",".join(csv_header(table)) == expected
        assert table_to_csv_text(table).splitlines()[0] == expected

    def test_csv_is_ascii_lf_with_trailing_newline(self):
        text = table_to_csv_text(small_table())
        raw = text.encode("ascii")  # must not raise
        assert b"\r" not in raw
        assert raw.endswith(b"\n")

    def test_every_row_matches_header_width(self):
        text = table_to_csv_text(make_goldens.golden_tables()["angle_small.csv"])
        rows = list(csv.reader(io.StringIO(text)))
        assert len(rows) == 10
        assert all(len(r) == len(rows[0]) for r in rows)


class TestGoldenFiles:
    @pytest.mark.parametrize("name", ["distance_small.csv", "angle_small.csv",
                                      "coverage_small.csv", "compare_small.csv"])
    def test_byte_for_byte(self, name):
        table = make_goldens.golden_tables()[name]
        with open(os.path.join(GOLDEN_DIR, name), "rb") as fh:
            assert table_to_csv_text(table).encode("ascii") == fh.read()

    def test_first_golden_row_against_independent_formula(self):
        """The golden numbers trace back to the high-precision reference, not
        just to whatever the library printed last."""
        with open(os.path.join(GOLDEN_DIR, "distance_small.csv")) as fh:
            first = next(csv.DictReader(fh))
        d1 = math.dist((0.0, 0.0, 25.0), (30.0, 0.0, 10.0))
        expected = oracle_irs_w(
            p_t=1.0, frequency_hz=3.5e9, g_t=2.0, g_r=2.0, m=64, n=64,
            dx=0.0428, dy=0.0428, a=0.9, theta_t=math.radians(45.0),
            theta_r=math.radians(45.0), d1=d1, d2=10.0)
        assert float(first["power_w"]) == pytest.approx(expected, rel=1e-10)
        assert float(first["distance_m"]) == 10.0
        assert first["model"] == "irs"


class TestWriters:
    def test_write_report_paths_and_contents(self, tmp_path):
        table = small_table()
        paths = write_report(table, str(tmp_path), "run", plot=True)
        assert [os.path.basename(p) for p in paths] == ["run.csv", "run.meta.json", "run.svg"]
        for p in paths:
            assert os.path.getsize(p) > 0
        with open(paths[2], "rb") as fh:
            assert b"<svg" in fh.read()

    def test_plot_is_opt_in(self, tmp_path):
        paths = write_report(small_table(), str(tmp_path), "run")
        assert len(paths) == 2
        assert not os.path.exists(tmp_path / "run.svg")

    def test_reruns_are_byte_identical(self, tmp_path):
        table = run_compare_sweep(
            make_scenario(fading=FadingSpec(mode="rayleigh", alpha=3.0, seed=11)),
            SweepSpec(kind="compare", start_m=10.0, stop_m=30.0, step_m=10.0,
                      monte_carlo_n=250))
        (tmp_path / "a").mkdir()
        (tmp_path / "b").mkdir()
        first = write_report(table, str(tmp_path / "a"), "run", plot=True)
        second = write_report(table, str(tmp_path / "b"), "run", plot=True)
        for pa, pb in zip(first, second):
            with open(pa, "rb") as fa, open(pb, "rb") as fb:
                assert fa.read() == fb.read()

    def test_metadata_sidecar(self, tmp_path):
        scenario = make_scenario(fading=FadingSpec(seed=99))
        table = run_distance_sweep(
            scenario, SweepSpec(kind="distance", start_m=10.0, stop_m=20.0, step_m=5.0))
        path = tmp_path / "t.meta.json"
        write_metadata_json(table, str(path))
        meta = json.loads(path.read_text())
        assert set(meta) == {"tool", "version", "kind", "seed", "monte_carlo_n", "scenario"}
        assert meta["tool"] == "irslink"
        assert meta["seed"] == 99
        assert meta["scenario"] == scenario.to_dict()

    def test_replace_is_atomic_on_failure(self, tmp_path):
        """Writing onto a directory fails and leaves no temp droppings."""
        target = tmp_path / "out.csv"
        target.mkdir()
        before = sorted(os.listdir(tmp_path))
        with pytest.raises(OSError):
            write_csv(small_table(), str(target))
        assert sorted(os.listdir(tmp_path)) == before

    def test_missing_parent_is_an_oserror(self, tmp_path):
        with pytest.raises(OSError):
            write_csv(small_table(), str(tmp_path / "missing" / "out.csv"))

    def test_existing_file_is_replaced_not_appended(self, tmp_path):
        path = tmp_path / "out.csv"
        path.write_text("stale\n" * 100)
        write_csv(small_table(), str(path))
        text = path.read_text()
        assert "stale" not in text
        assert text == table_to_csv_text(small_table())

    def test_output_mode_honors_umask(self, tmp_path):
        old = os.umask(0o022)
        try:
            path = tmp_path / "out.csv"
            write_csv(small_table(), str(path))
            assert (os.stat(path).st_mode & 0o777) == 0o644
        finally:
            os.umask(old)
