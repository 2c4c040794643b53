"""Periodic partitioned random sampling.

The domain is split by a plane into blocks B (below the split) and C (the
rest); even generations resample every individual uniformly in B, odd
generations in C.  Any two consecutive generations jointly cover the whole
domain, which is the positive control for the coverage verdict.
"""

from __future__ import annotations

import numpy as np

from .. import benchmarks
from ..core import BoxDomain, ConfigError, PopulationState, RunStreams
from .config import AlgoConfig


def partition_blocks(domain: BoxDomain, cfg: AlgoConfig) -> tuple[BoxDomain, BoxDomain]:
    """The two sampling blocks (B, C) induced by the split plane."""
    if not 0.0 < cfg.split_fraction < 1.0:
        raise ConfigError("split_fraction must lie strictly inside (0, 1)")
    s = cfg.split_dim
    split = domain.lower[s] + cfg.split_fraction * (domain.upper[s] - domain.lower[s])
    b_upper = domain.upper.copy()
    b_upper[s] = split
    c_lower = domain.lower.copy()
    c_lower[s] = split
    return BoxDomain(domain.lower.copy(), b_upper), BoxDomain(c_lower, domain.upper.copy())


def _active_block(state: PopulationState, cfg: AlgoConfig) -> BoxDomain:
    block_b, block_c = partition_blocks(state.domain, cfg)
    return block_b if state.generation % 2 == 0 else block_c


def step_partition_sampler(state: PopulationState, objective: benchmarks.ObjectiveSpec,
                           cfg: AlgoConfig, streams: RunStreams) -> PopulationState:
    """Resample the whole population uniformly in the generation's block."""
    block = _active_block(state, cfg)
    n = state.pop_size
    positions = streams.population.uniform(block.lower, block.upper, (n, state.dim))
    fitness = benchmarks.evaluate_batch(objective, positions)
    new_state = PopulationState(
        domain=state.domain,
        positions=positions,
        fitness=fitness,
        generation=state.generation + 1,
        eval_count=state.eval_count + n,
        eval_budget=state.eval_budget,
        best_position=state.best_position,
        best_fitness=state.best_fitness,
    )
    new_state.observe(positions, fitness)
    return new_state


def scope_boxes_partition_sampler(state: PopulationState, cfg: AlgoConfig,
                                  q: float) -> tuple[np.ndarray, np.ndarray]:
    """A single box: the block the coming generation samples."""
    block = _active_block(state, cfg)
    return block.lower[None, :].copy(), block.upper[None, :].copy()
