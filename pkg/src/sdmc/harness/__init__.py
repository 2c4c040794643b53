"""Experiment orchestration: configs, seeded trials, statistics, exports,
and the command-line interface."""

from .compare import COMPARISON_HEADER, ComparisonRow, compare, comparison_csv_row, \
    mean_std_str, write_comparison_csv
from .config import ExperimentConfig, InstrumentConfig, config_from_dict, \
    config_to_dict, load_config, save_config
from .runner import RunRecord, run_single, run_trials
from . import export, svg
from .cli import cli

__all__ = [
    "COMPARISON_HEADER",
    "ComparisonRow",
    "ExperimentConfig",
    "InstrumentConfig",
    "RunRecord",
    "cli",
    "compare",
    "comparison_csv_row",
    "config_from_dict",
    "config_to_dict",
    "export",
    "load_config",
    "mean_std_str",
    "run_single",
    "run_trials",
    "save_config",
    "svg",
    "write_comparison_csv",
]
