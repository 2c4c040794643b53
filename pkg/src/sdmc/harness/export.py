"""Record serialization: per-run CSV files, scope traces, and SVG plots.

Floats are written with ``repr`` so parsing an exported file reproduces the
in-memory arrays exactly.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .. import scope
from ..core import ConfigError
from . import svg
from .config import ExperimentConfig, save_config


class SdmcIOError(ConfigError):
    """Unwritable or unreadable experiment file."""


def _open_out(path: str):
    try:
        return open(path, "w")
    except OSError as exc:
        raise SdmcIOError(f"cannot write {path}: {exc}") from None


def write_run_csv(record, path: str) -> None:
    with _open_out(path) as fh:
        fh.write("eval_count,best_fitness\n")
        for e, b in zip(record.eval_counts, record.best_fitness):
            fh.write(f"{int(e)},{b!r}\n")


def read_run_csv(path: str) -> tuple[np.ndarray, np.ndarray]:
    evals, best = [], []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != "eval_count,best_fitness":
            raise SdmcIOError(f"{path}: unexpected header {header!r}")
        for line in fh:
            e, b = line.strip().split(",")
            evals.append(int(e))
            best.append(float(b))
    return np.array(evals, dtype=np.int64), np.array(best)


def write_std_csv(std_trace: scope.StdTrace, path: str) -> None:
    with _open_out(path) as fh:
        fh.write(f"eval_count,generation,std_dim{std_trace.dimension}\n")
        for e, g, v in zip(std_trace.eval_counts, std_trace.generations, std_trace.values):
            fh.write(f"{int(e)},{int(g)},{v!r}\n")


def read_std_csv(path: str) -> scope.StdTrace:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if len(header) != 3 or not header[2].startswith("std_dim"):
            raise SdmcIOError(f"{path}: unexpected header {header!r}")
        dimension = int(header[2][len("std_dim"):])
        rows = [line.strip().split(",") for line in fh if line.strip()]
    evals = np.array([int(r[0]) for r in rows], dtype=np.int64)
    gens = np.array([int(r[1]) for r in rows], dtype=np.int64)
    values = np.array([float(r[2]) for r in rows])
    return scope.StdTrace(dimension, evals, gens, values)


def write_snapshots_csv(snapshots: dict[int, np.ndarray], path: str) -> None:
    with _open_out(path) as fh:
        fh.write("generation,individual,coordinates...\n")
        for gen in sorted(snapshots):
            for i, row in enumerate(snapshots[gen]):
                coords = ",".join(repr(v) for v in row)
                fh.write(f"{gen},{i},{coords}\n")


def read_snapshots_csv(path: str) -> dict[int, np.ndarray]:
    groups: dict[int, list] = {}
    with open(path) as fh:
        fh.readline()
        for line in fh:
            parts = line.strip().split(",")
            groups.setdefault(int(parts[0]), []).append([float(v) for v in parts[2:]])
    return {g: np.array(rows) for g, rows in groups.items()}


def save_records(config: ExperimentConfig, records, outdir: str) -> None:
    """Persist one experiment: config copy plus per-run record files."""
    try:
        os.makedirs(outdir, exist_ok=True)
    except OSError as exc:
        raise SdmcIOError(f"cannot create output directory {outdir}: {exc}") from None
    save_config(config, os.path.join(outdir, "config.json"))
    summary = []
    for rec in records:
        write_run_csv(rec, os.path.join(outdir, f"run_{rec.run_index}.csv"))
        if rec.std_trace is not None:
            write_std_csv(rec.std_trace, os.path.join(outdir, f"std_{rec.run_index}.csv"))
        if rec.scope_trace is not None:
            scope.write_trace(rec.scope_trace,
                              os.path.join(outdir, f"scope_{rec.run_index}.txt"))
        if rec.snapshots:
            write_snapshots_csv(rec.snapshots,
                                os.path.join(outdir, f"snapshots_{rec.run_index}.csv"))
        summary.append({
            "run": rec.run_index,
            "final_best_fitness": rec.final_best_fitness,
            "eval_total": int(rec.eval_counts[-1]),
            "cut_note": rec.cut_note,
        })
    with _open_out(os.path.join(outdir, "summary.json")) as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")


def load_final_fitness(outdir: str) -> np.ndarray:
    """Final best fitness of every run persisted in a directory."""
    finals = {}
    try:
        names = os.listdir(outdir)
    except OSError as exc:
        raise SdmcIOError(f"cannot read record directory {outdir}: {exc}") from None
    for name in names:
        if name.startswith("run_") and name.endswith(".csv"):
            idx = int(name[4:-4])
            _, best = read_run_csv(os.path.join(outdir, name))
            finals[idx] = best[-1]
    if not finals:
        raise SdmcIOError(f"no run_<i>.csv records found in {outdir}")
    return np.array([finals[i] for i in sorted(finals)])


def std_traces_svg(traces, labels, path: str, title: str = "") -> None:
    """Log-scale line plot of per-dimension std traces against evaluations."""
    series = [(t.eval_counts, t.values, label) for t, label in zip(traces, labels)]
    svg.line_plot(series, path, title=title, x_label="evaluations",
                  y_label="population std", log_y=True)


def curves_svg(curves, labels, path: str, title: str = "") -> None:
    """Log-scale line plot of best-fitness curves against evaluations."""
    series = [(e, b, label) for (e, b), label in zip(curves, labels)]
    svg.line_plot(series, path, title=title, x_label="evaluations",
                  y_label="best fitness", log_y=True)


def snapshots_svg(snapshots: dict[int, np.ndarray], path: str, dims=(0, 1),
                  title: str = "") -> None:
    """Scatter of the population at the recorded generations, two coordinates."""
    if not snapshots:
        raise ConfigError("no snapshots recorded")
    groups = [(snapshots[g][:, list(dims)], f"generation {g}") for g in sorted(snapshots)]
    svg.scatter_plot(groups, path, title=title,
                     x_label=f"dimension {dims[0]}", y_label=f"dimension {dims[1]}")
