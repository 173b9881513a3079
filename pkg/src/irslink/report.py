"""Sweep output rendering: delimited tables, metadata echoes, and figures.

The CSV layer is the contract: fixed column order per sweep kind, a
mandatory header row, floats at 12 significant digits, LF newlines, and
whole-file atomic writes (write to a temp file in the target directory,
then rename) so a crashed or failed run never leaves a partial table.
Rerunning the same scenario and seed reproduces the bytes exactly.

Figures are a convenience rendering *of the table that was just written*,
never a second computation path; they go to self-contained SVG next to
the CSV.  A sidecar ``.meta.json`` carries the scenario echo, seed and
tool version for provenance.
"""

from __future__ import annotations

import json
import math
import os
import tempfile

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
import numpy as np  # noqa: E402

from .core import MODEL_CONVENTIONAL, MODEL_IRS  # noqa: E402
from .sweep import KIND_ANGLE, KIND_COVERAGE, SweepTable  # noqa: E402

POWER_COLUMNS = ("model", "power_w", "power_dbm")


def format_float(value: float) -> str:
    """Canonical cell rendering: 12 significant digits, 'inf'/'-inf' sentinels."""
    return f"{value:.12g}"


def csv_header(table: SweepTable) -> tuple[str, ...]:
    return table.coord_columns + POWER_COLUMNS


def table_to_csv_text(table: SweepTable) -> str:
    """Render a sweep table to CSV text (LF newlines, trailing newline)."""
    lines = [",".join(csv_header(table))]
    for row in table.rows:
        cells = [format_float(c) for c in row.coords]
        cells.append(row.sample.model_tag)
        cells.append(format_float(row.sample.power_w))
        cells.append(format_float(row.sample.power_dbm))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _apply_umask(path: str) -> None:
    # mkstemp creates 0600 files; give the final artifact normal permissions
    mask = os.umask(0)
    os.umask(mask)
    os.chmod(path, 0o666 & ~mask)


def _atomic_write_bytes(path: str, data: bytes) -> None:
    """Write a whole file or nothing: temp file in the same directory, then
    an atomic rename.  The temp file is removed on any failure."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory,
                                    prefix=os.path.basename(path) + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        _apply_umask(tmp_path)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def write_csv(table: SweepTable, path: str) -> None:
    """Atomically write the table's CSV rendering to ``path``."""
    _atomic_write_bytes(path, table_to_csv_text(table).encode("ascii"))


def write_metadata_json(table: SweepTable, path: str) -> None:
    """Atomically write the table's metadata echo as pretty JSON."""
    text = json.dumps(table.metadata, indent=2, sort_keys=True) + "\n"
    _atomic_write_bytes(path, text.encode("utf-8"))


def _series(table: SweepTable) -> dict[tuple, tuple[list[float], list[float]]]:
    """Split a 1-D table into plot series keyed by model (and angle pair)."""
    series: dict[tuple, tuple[list[float], list[float]]] = {}
    for row in table.rows:
        if table.kind == KIND_ANGLE:
            key = (row.sample.model_tag, row.coords[0], row.coords[1])
            x = row.coords[2]
        else:
            key = (row.sample.model_tag,)
            x = row.coords[0]
        xs, ys = series.setdefault(key, ([], []))
        if math.isfinite(row.sample.power_dbm):
            xs.append(x)
            ys.append(row.sample.power_dbm)
    return series


def _render_lines(table: SweepTable, ax) -> None:
    for key, (xs, ys) in _series(table).items():
        if table.kind == KIND_ANGLE:
            label = f"{key[1]:g}/{key[2]:g} deg"
        else:
            label = key[0]
        ax.plot(xs, ys, marker="o", markersize=3, label=label)
    ax.set_xlabel("swept distance (m)")
    ax.set_ylabel("received power (dBm)")
    ax.grid(True, alpha=0.4)
    ax.legend()


def _render_coverage(table: SweepTable, fig) -> None:
    xs = sorted({row.coords[0] for row in table.rows})
    ys = sorted({row.coords[1] for row in table.rows})
    x_index = {v: i for i, v in enumerate(xs)}
    y_index = {v: i for i, v in enumerate(ys)}
    models = [MODEL_CONVENTIONAL]
    if any(row.sample.model_tag == MODEL_IRS for row in table.rows):
        models.append(MODEL_IRS)
    axes = fig.subplots(1, len(models), squeeze=False)[0]
    for ax, model in zip(axes, models):
        grid = np.full((len(ys), len(xs)), np.nan)
        for row in table.rows:
            if row.sample.model_tag != model or not math.isfinite(row.sample.power_dbm):
                continue
            grid[y_index[row.coords[1]], x_index[row.coords[0]]] = row.sample.power_dbm
        mesh = ax.pcolormesh(xs, ys, grid, shading="nearest")
        fig.colorbar(mesh, ax=ax, label="received power (dBm)")
        ax.set_title(model)
        ax.set_xlabel("x (m)")
        ax.set_ylabel("y (m)")
        ax.set_aspect("equal")


def render_plot(table: SweepTable, path: str) -> None:
    """Render the table to a self-contained SVG figure at ``path``.

    Line chart of power_dbm against the swept coordinate (one series per
    model or angle pair); coverage tables become one heatmap per model.
    Degenerate rows (non-finite dBm) are left out of the drawing.
    """
    plt.rcParams["svg.hashsalt"] = "irslink"
    if table.kind == KIND_COVERAGE:
        fig = plt.figure(figsize=(11, 4.5))
        _render_coverage(table, fig)
        fig.suptitle(f"{table.kind} sweep")
    else:
        fig = plt.figure(figsize=(7, 4.5))
        _render_lines(table, fig.add_subplot(111))
        fig.axes[0].set_title(f"{table.kind} sweep")
    fig.tight_layout()
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory,
                                    prefix=os.path.basename(path) + ".", suffix=".tmp")
    os.close(fd)
    try:
        # A fixed hashsalt plus no date stamp makes reruns byte-identical.
        fig.savefig(tmp_path, format="svg", metadata={"Date": None})
        _apply_umask(tmp_path)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise
    finally:
        plt.close(fig)


def write_report(table: SweepTable, out_dir: str, stem: str, plot: bool = False) -> list[str]:
    """Write ``<stem>.csv`` and ``<stem>.meta.json`` (and ``<stem>.svg`` when
    ``plot``) under ``out_dir``; returns the paths written, CSV first."""
    paths = []
    csv_path = os.path.join(out_dir, stem + ".csv")
    write_csv(table, csv_path)
    paths.append(csv_path)
    meta_path = os.path.join(out_dir, stem + ".meta.json")
    write_metadata_json(table, meta_path)
    paths.append(meta_path)
    if plot:
        svg_path = os.path.join(out_dir, stem + ".svg")
        render_plot(table, svg_path)
        paths.append(svg_path)
    return paths
