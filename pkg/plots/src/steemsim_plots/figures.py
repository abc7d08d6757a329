"""Render steemsim CSV outputs as figures.

Consumes the two CSV schemas the simulator emits and renders the figure
set for a writeup: curation-quality evolution for a single run, and
ring-size sweep summaries. Inputs are never modified; rendering is a
pure function of the CSV contents (fixed style, no timestamps), so
re-running a script reproduces identical image bytes.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

TIMESERIES_COLUMNS = ("round", "t_ideal_rank", "kendall_tau", "spearman_rho")
SWEEP_COLUMNS = ("ring_size", "selfish_gain", "t_ideal_rank")

_FIGSIZE = (8.0, 4.5)
_DPI = 120


def _read_csv(path: str, required: tuple[str, ...]) -> dict[str, list[float]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [column for column in required if column not in header]
        if missing:
            raise ValueError(
                f"{path}: missing column(s) {', '.join(missing)}; header was {header}"
            )
        columns: dict[str, list[float]] = {column: [] for column in required}
        for row in reader:
            for column in required:
                columns[column].append(float(row[column]))
    if not columns[required[0]]:
        raise ValueError(f"{path}: no data rows")
    return columns


def load_timeseries(path: str) -> dict[str, list[float]]:
    """Columns of a time-series CSV, keyed by column name."""
    return _read_csv(path, TIMESERIES_COLUMNS)


def load_sweep(path: str) -> dict[str, list[float]]:
    """Columns of a ring-size sweep CSV, sorted by ring size."""
    columns = _read_csv(path, SWEEP_COLUMNS)
    order = sorted(range(len(columns["ring_size"])), key=columns["ring_size"].__getitem__)
    return {name: [values[i] for i in order] for name, values in columns.items()}


def _save(fig, out_dir: str, name: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def _line_figure(x, series, xlabel, ylabel):
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    for label, values, style in series:
        ax.plot(x, values, style, label=label, linewidth=1.2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if len(series) > 1:
        ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    return fig


def plot_timeseries(csv_path: str, out_dir: str) -> list[str]:
    """Quality-evolution figures for one run; returns written image paths."""
    data = load_timeseries(csv_path)
    rounds = data["round"]
    rank_fig = _line_figure(
        rounds,
        [("t-ideal rank", data["t_ideal_rank"], "-")],
        "round",
        "t-ideal rank",
    )
    corr_fig = _line_figure(
        rounds,
        [
            ("Kendall's tau", data["kendall_tau"], "-"),
            ("Spearman's rho", data["spearman_rho"], "--"),
        ],
        "round",
        "rank correlation",
    )
    return [
        _save(rank_fig, out_dir, "t_ideal_rank_vs_round.png"),
        _save(corr_fig, out_dir, "correlations_vs_round.png"),
    ]


def plot_sweep(csv_path: str, out_dir: str) -> list[str]:
    """Ring-size sweep figures; returns written image paths."""
    data = load_sweep(csv_path)
    rings = data["ring_size"]
    gain_fig = _line_figure(
        rings,
        [("positions gained", data["selfish_gain"], "o-")],
        "ring size",
        "positions gained by target post",
    )
    rank_fig = _line_figure(
        rings,
        [("t-ideal rank", data["t_ideal_rank"], "o-")],
        "ring size",
        "final t-ideal rank",
    )
    return [
        _save(gain_fig, out_dir, "selfish_gain_vs_ring_size.png"),
        _save(rank_fig, out_dir, "t_ideal_rank_vs_ring_size.png"),
    ]
