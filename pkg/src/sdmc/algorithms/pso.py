"""Particle swarm optimization with a linearly decreasing inertia weight.

Velocities are clamped per dimension at ``v_max`` (by default 20% of the
domain range) and positions are clamped to the domain, so containment holds
after every step.
"""

from __future__ import annotations

import numpy as np

from .. import benchmarks
from ..core import ConfigError, PopulationState, RunStreams
from .config import AlgoConfig


def ldiw_inertia(t: int, cfg: AlgoConfig) -> float:
    """Inertia weight at generation ``t``: a linear ramp from
    ``omega_start`` down to ``omega_end`` over ``t_max`` generations.

    Past ``t_max`` the weight stays at ``omega_end``.
    """
    if cfg.t_max is None:
        raise ConfigError("ldiw-pso needs t_max to schedule the inertia weight")
    if t < 0:
        raise ConfigError("generation index must be non-negative")
    if t > cfg.t_max:
        return cfg.omega_end
    return cfg.omega_end + (cfg.omega_start - cfg.omega_end) * (cfg.t_max - t) / cfg.t_max


def velocity_limit(cfg: AlgoConfig, domain) -> np.ndarray:
    if cfg.v_max is not None:
        return np.full(domain.dim, float(cfg.v_max))
    return cfg.v_max_fraction * domain.width


def step_ldiw_pso(state: PopulationState, objective: benchmarks.ObjectiveSpec,
                  cfg: AlgoConfig, streams: RunStreams) -> PopulationState:
    """One synchronous swarm update.

    Per particle and dimension the velocity mixes inertia with attraction
    toward the personal best and the swarm best, each attraction scaled by a
    fresh uniform draw; velocities are clamped, positions clamped to the
    domain, and the personal/swarm bests update on strict improvement.
    """
    if state.velocities is None or state.pbest_positions is None:
        raise ConfigError("ldiw-pso needs velocity and personal-best state")
    rng = streams.population
    x = state.positions
    v = state.velocities
    n, dim = x.shape
    domain = state.domain

    omega = ldiw_inertia(state.generation, cfg)
    v_max = velocity_limit(cfg, domain)
    gbest = state.pbest_positions[int(np.argmin(state.pbest_fitness))]

    r1 = rng.random((n, dim))
    r2 = rng.random((n, dim))
    new_v = omega * v + cfg.c1 * r1 * (state.pbest_positions - x) + cfg.c2 * r2 * (gbest - x)
    new_v = np.clip(new_v, -v_max, v_max)
    new_x = domain.clip(x + new_v)

    fitness = benchmarks.evaluate_batch(objective, new_x)
    new_state = PopulationState(
        domain=domain,
        positions=new_x,
        fitness=fitness,
        generation=state.generation + 1,
        eval_count=state.eval_count + n,
        eval_budget=state.eval_budget,
        velocities=new_v,
        pbest_positions=state.pbest_positions.copy(),
        pbest_fitness=state.pbest_fitness.copy(),
        best_position=state.best_position,
        best_fitness=state.best_fitness,
    )
    new_state.observe(new_x, fitness)
    improved = fitness < new_state.pbest_fitness
    new_state.pbest_positions[improved] = new_x[improved]
    new_state.pbest_fitness[improved] = fitness[improved]
    return new_state


def scope_boxes_ldiw_pso(state: PopulationState, cfg: AlgoConfig,
                         q: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact per-particle reachable hull of the coming swarm update.

    The attraction terms scale linearly with their uniform draws, so the
    velocity hull is the interval sum of each term's span, clamped at
    ``v_max``; adding the position and clamping to the domain gives the box.
    """
    x = state.positions
    v = state.velocities
    domain = state.domain
    omega = ldiw_inertia(state.generation, cfg)
    v_max = velocity_limit(cfg, domain)
    gbest = state.pbest_positions[int(np.argmin(state.pbest_fitness))]

    a = cfg.c1 * (state.pbest_positions - x)
    b = cfg.c2 * (gbest - x)
    v_lo = omega * v + np.minimum(0.0, a) + np.minimum(0.0, b)
    v_hi = omega * v + np.maximum(0.0, a) + np.maximum(0.0, b)
    v_lo = np.clip(v_lo, -v_max, v_max)
    v_hi = np.clip(v_hi, -v_max, v_max)
    lowers = np.maximum(x + v_lo, domain.lower)
    uppers = np.minimum(x + v_hi, domain.upper)
    return lowers, uppers
