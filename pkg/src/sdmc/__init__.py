"""Evolutionary-computation algorithms instrumented with per-generation
search-scope oracles and a Monte-Carlo measure-comparison convergence check,
plus stability analytics and an experiment harness."""

from . import algorithms, benchmarks, harness, scope, stability
from ._kernels import BACKEND as kernel_backend
from .core import (
    BoxDomain,
    ConfigError,
    FitnessError,
    PopulationState,
    RngStream,
    RunStreams,
    SdmcError,
    repair,
    uniform_sample,
    update_best_so_far,
)

__version__ = "0.1.0"

__all__ = [
    "BoxDomain",
    "ConfigError",
    "FitnessError",
    "PopulationState",
    "RngStream",
    "RunStreams",
    "SdmcError",
    "algorithms",
    "benchmarks",
    "harness",
    "kernel_backend",
    "repair",
    "scope",
    "stability",
    "uniform_sample",
    "update_best_so_far",
]
