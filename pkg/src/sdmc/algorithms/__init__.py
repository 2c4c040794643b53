"""The seven population-update procedures.

Each algorithm exposes a pure step from population state to population
state and a reachable-scope oracle giving, per individual, the axis-aligned
hull of positions the coming generation can produce.  Algorithms are looked
up by their stable string id.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..core import ConfigError
from . import de as _de
from . import pso as _pso
from . import sampler as _sampler
from . import slpso as _slpso
from .config import (
    ALGORITHM_IDS,
    DE_FAMILY,
    GT_ALGORITHMS,
    SLPSO_FAMILY,
    AlgoConfig,
    default_pop_size,
    resolve_config,
    validate_config,
)
from .de import gt_select_bottleneck_dims, step_de, step_gtde
from .pso import ldiw_inertia, step_ldiw_pso
from .sampler import partition_blocks, step_partition_sampler
from .slpso import (
    slpso_params,
    social_velocity,
    social_velocity_decomposed,
    step_gtpso,
    step_slpso,
)

__all__ = [
    "ALGORITHM_IDS",
    "AlgoConfig",
    "Algorithm",
    "get_algorithm",
    "gt_select_bottleneck_dims",
    "ldiw_inertia",
    "partition_blocks",
    "resolve_config",
    "slpso_params",
    "social_velocity",
    "social_velocity_decomposed",
    "step_de",
    "step_gtde",
    "step_gtpso",
    "step_ldiw_pso",
    "step_partition_sampler",
    "step_slpso",
    "validate_config",
    "default_pop_size",
]


@dataclass(frozen=True)
class Algorithm:
    """Registry entry: construction, stepping, and the scope oracle."""

    id: str
    init: Callable
    step: Callable
    scope: Callable
    uses_velocity: bool
    max_step_evals: Callable  # worst-case evaluations of the core substep

    def __repr__(self):  # diagnostics only
        return f"Algorithm({self.id!r})"


def _gtpso_step(mode):
    def step(state, objective, cfg, streams):
        return step_gtpso(state, objective, cfg, streams, sigma_mode=mode)
    return step


def _gtpso_scope(mode):
    def scope(state, cfg, q):
        return _slpso.scope_boxes_gtpso(state, cfg, q, sigma_mode=mode)
    return scope


def _init_plain(objective, cfg, streams):
    return _de.init_population(objective, cfg, streams, with_velocity=False)


def _init_velocity(objective, cfg, streams):
    return _de.init_population(objective, cfg, streams, with_velocity=True)


_REGISTRY = {
    "de": Algorithm(
        "de", _init_plain, step_de, _de.scope_boxes_de,
        uses_velocity=False, max_step_evals=lambda cfg: cfg.pop_size),
    "gtde": Algorithm(
        "gtde", _init_plain, step_gtde, _de.scope_boxes_gtde,
        uses_velocity=False, max_step_evals=lambda cfg: cfg.pop_size),
    "ldiw-pso": Algorithm(
        "ldiw-pso", _init_velocity, step_ldiw_pso, _pso.scope_boxes_ldiw_pso,
        uses_velocity=True, max_step_evals=lambda cfg: cfg.pop_size),
    "slpso": Algorithm(
        "slpso", _init_velocity, step_slpso, _slpso.scope_boxes_slpso,
        uses_velocity=True, max_step_evals=lambda cfg: cfg.pop_size - 1),
    "gtpso": Algorithm(
        "gtpso", _init_velocity, _gtpso_step("paper"), _gtpso_scope("paper"),
        uses_velocity=True, max_step_evals=lambda cfg: cfg.pop_size - 1),
    "gtpso-sigma": Algorithm(
        "gtpso-sigma", _init_velocity, _gtpso_step("constant"), _gtpso_scope("constant"),
        uses_velocity=True, max_step_evals=lambda cfg: cfg.pop_size - 1),
    "partition-sampler": Algorithm(
        "partition-sampler", _init_plain, step_partition_sampler,
        _sampler.scope_boxes_partition_sampler,
        uses_velocity=False, max_step_evals=lambda cfg: cfg.pop_size),
}


def get_algorithm(algorithm_id: str) -> Algorithm:
    try:
        return _REGISTRY[algorithm_id]
    except KeyError:
        raise ConfigError(
            f"unknown algorithm id {algorithm_id!r}; known: {list(ALGORITHM_IDS)}"
        ) from None
