"""Social-learning PSO and its gene-targeting variants.

Particles are ranked by fitness each generation; every particle except the
best learns, per dimension and with a rank-dependent probability, from a
uniformly chosen better-ranked demonstrator plus a weak pull toward the
swarm mean.  The gene-targeting variants then perturb the best particle on
a few bottleneck dimensions: either a velocity recombination of two random
particles' personal bests, or a Gaussian velocity resample whose std is
half the two particles' velocity gap (``gtpso``) or a constant
(``gtpso-sigma``).
"""

from __future__ import annotations

import math

import numpy as np

from .. import benchmarks
from ..core import ConfigError, PopulationState, RunStreams
from ._common import distinct_pair, gaussian_truncation_z
from .config import AlgoConfig
from .de import gt_select_bottleneck_dims


def slpso_params(dim: int, rank_i: int, cfg: AlgoConfig) -> tuple[float, float, int]:
    """Mean-pull weight, learning probability for 1-based rank ``rank_i``,
    and the default swarm size for this dimension."""
    n = cfg.pop_size if cfg.pop_size is not None else cfg.m_base + math.ceil(0.1 * dim)
    if not 1 <= rank_i <= n:
        raise ConfigError(f"rank must lie in [1, {n}], got {rank_i}")
    eps = cfg.beta * dim / cfg.m_base
    exponent = cfg.mu * math.log(math.ceil(dim / cfg.m_base))
    p_i = (1.0 - (rank_i - 1) / n) ** exponent
    return eps, p_i, n


def _learning_probabilities(n: int, dim: int, cfg: AlgoConfig) -> np.ndarray:
    exponent = cfg.mu * math.log(math.ceil(dim / cfg.m_base))
    ranks = np.arange(n)
    return (1.0 - ranks / n) ** exponent


def social_velocity(v, x_i, x_k, x_mean, eps, r1, r2, r3):
    """Learning velocity: inertia, demonstrator attraction, mean pull."""
    return r1 * v + r2 * (x_k - x_i) + eps * r3 * (x_mean - x_i)


def social_velocity_decomposed(v, x_i, x_k, x_gbest, x_mean, eps, r1, r2, r3):
    """The same velocity with the demonstrator term split through the swarm
    best, separating the directed pull from the demonstrator scatter."""
    return (r1 * v + r2 * (x_gbest - x_i) + r2 * (x_k - x_gbest)
            + eps * r3 * (x_mean - x_i))


def step_slpso(state: PopulationState, objective: benchmarks.ObjectiveSpec,
               cfg: AlgoConfig, streams: RunStreams) -> PopulationState:
    """One social-learning generation.

    Draw order per generation (all matrices are swarm x dim, rows in sorted
    best-to-worst order): learning gates, demonstrator picks, then the three
    uniform factors.  The best particle never moves; moved particles are
    re-evaluated and only they cost fitness evaluations.
    """
    if state.velocities is None or state.pbest_positions is None:
        raise ConfigError("slpso needs velocity and personal-best state")
    rng = streams.population
    n, dim = state.positions.shape
    domain = state.domain

    order = np.argsort(state.fitness, kind="stable")
    xs = state.positions[order]
    vs = state.velocities[order]
    fs = state.fitness[order]

    eps = cfg.beta * dim / cfg.m_base
    p_learn = _learning_probabilities(n, dim, cfg)
    x_mean = state.positions.mean(axis=0)

    gate = rng.random((n, dim)) < p_learn[:, None]
    gate[0, :] = False
    pick = rng.random((n, dim))
    r1 = rng.random((n, dim))
    r2 = rng.random((n, dim))
    r3 = rng.random((n, dim))

    # demonstrator for sorted row j is a uniform pick among rows 0..j-1
    k = (pick * np.arange(n)[:, None]).astype(np.int64)
    demonstrators = xs[k, np.arange(dim)[None, :]]

    v_new = social_velocity(vs, xs, demonstrators, x_mean, eps, r1, r2, r3)
    vs_next = np.where(gate, v_new, vs)
    xs_next = domain.clip(np.where(gate, xs + v_new, xs))

    moved_sorted = gate.any(axis=1)
    fs_next = fs.copy()
    if moved_sorted.any():
        fs_next[moved_sorted] = benchmarks.evaluate_batch(objective, xs_next[moved_sorted])

    new_positions = np.empty_like(xs_next)
    new_velocities = np.empty_like(vs_next)
    new_fitness = np.empty_like(fs_next)
    new_positions[order] = xs_next
    new_velocities[order] = vs_next
    new_fitness[order] = fs_next
    moved = np.zeros(n, dtype=bool)
    moved[order] = moved_sorted

    new_state = PopulationState(
        domain=domain,
        positions=new_positions,
        fitness=new_fitness,
        generation=state.generation + 1,
        eval_count=state.eval_count + int(moved.sum()),
        eval_budget=state.eval_budget,
        velocities=new_velocities,
        pbest_positions=state.pbest_positions.copy(),
        pbest_fitness=state.pbest_fitness.copy(),
        best_position=state.best_position,
        best_fitness=state.best_fitness,
    )
    if moved.any():
        new_state.observe(new_positions[moved], new_fitness[moved])
    improved = new_fitness < new_state.pbest_fitness
    new_state.pbest_positions[improved] = new_positions[improved]
    new_state.pbest_fitness[improved] = new_fitness[improved]
    new_state.diagnostics = {"moved": moved}
    return new_state


def _apply_gt_pso(state: PopulationState, objective: benchmarks.ObjectiveSpec,
                  cfg: AlgoConfig, rng: np.random.Generator, sigma_mode: str) -> None:
    """Gene targeting on the best particle's bottleneck dimensions."""
    if sigma_mode not in ("paper", "constant"):
        raise ConfigError(f"unknown sigma_mode {sigma_mode!r}")
    if sigma_mode == "constant" and cfg.sigma <= 0:
        raise ConfigError("constant-sigma gene targeting needs sigma > 0")

    dims = gt_select_bottleneck_dims(state.dim, cfg, rng)
    diag = state.diagnostics
    diag["gt_dims"] = dims
    diag["gt_evals"] = 0
    diag["gt_accepted"] = 0
    diag["gt_z"] = []
    if dims.size == 0:
        return

    if cfg.gt_trial_mode == "joint":
        trial_dim_groups = [dims]
    else:
        trial_dim_groups = [dims[j:j + 1] for j in range(dims.size)]

    n = state.pop_size
    for group in trial_dim_groups:
        if state.eval_budget is not None and state.eval_count + 1 > state.eval_budget:
            diag["gt_skipped"] = True
            break
        b = int(np.argmin(state.fitness))
        k1, k2 = distinct_pair(rng, n)
        recombine = rng.random(group.size) < cfg.p_m
        r12 = rng.random((group.size, 2))
        z = rng.standard_normal(group.size)
        diag["gt_z"].append(z)

        v = state.velocities
        x_mean = state.positions.mean(axis=0)
        v_recombine = (cfg.gt_omega * v[b, group]
                       + cfg.c1 * r12[:, 0] * (state.pbest_positions[k1, group]
                                               - state.pbest_positions[k2, group])
                       + cfg.c2 * r12[:, 1] * (x_mean[group] - state.positions[b, group]))
        mean = 0.5 * (v[k1, group] + v[k2, group])
        std = cfg.sigma if sigma_mode == "constant" else 0.5 * np.abs(v[k1, group] - v[k2, group])
        v_resample = mean + std * z
        v_sel = np.where(recombine, v_recombine, v_resample)

        trial = state.positions[b].copy()
        trial[group] += v_sel
        trial = state.domain.clip(trial)
        value = benchmarks.evaluate(objective, trial)
        state.eval_count += 1
        diag["gt_evals"] += 1
        state.observe(trial, np.array([value]))
        if value < state.fitness[b]:
            state.positions[b] = trial
            state.fitness[b] = value
            state.velocities[b, group] = v_sel
            diag["gt_accepted"] += 1
            diag["gt_row"] = b
            if value < state.pbest_fitness[b]:
                state.pbest_positions[b] = trial
                state.pbest_fitness[b] = value


def step_gtpso(state: PopulationState, objective: benchmarks.ObjectiveSpec,
               cfg: AlgoConfig, streams: RunStreams,
               sigma_mode: str = "paper") -> PopulationState:
    """Social-learning generation followed by gene targeting on the best."""
    new_state = step_slpso(state, objective, cfg, streams)
    _apply_gt_pso(new_state, objective, cfg, streams.gt, sigma_mode)
    return new_state


def _slpso_intervals(state: PopulationState, cfg: AlgoConfig):
    """Reachable position and velocity hulls of the coming social-learning
    substep, per particle in original row order.

    Position hulls always contain the current position (the gate may not
    fire); velocity hulls contain the kept velocity for the same reason.
    """
    n, dim = state.positions.shape
    domain = state.domain
    order = np.argsort(state.fitness, kind="stable")
    xs = state.positions[order]
    vs = state.velocities[order]
    eps = cfg.beta * dim / cfg.m_base
    x_mean = state.positions.mean(axis=0)

    run_min = np.minimum.accumulate(xs, axis=0)
    run_max = np.maximum.accumulate(xs, axis=0)
    better_min = np.vstack([xs[:1], run_min[:-1]])
    better_max = np.vstack([xs[:1], run_max[:-1]])

    t1_lo, t1_hi = np.minimum(0.0, vs), np.maximum(0.0, vs)
    t2_lo = np.minimum(0.0, better_min - xs)
    t2_hi = np.maximum(0.0, better_max - xs)
    pull = eps * (x_mean - xs)
    t3_lo, t3_hi = np.minimum(0.0, pull), np.maximum(0.0, pull)

    dv_lo = t1_lo + t2_lo + t3_lo
    dv_hi = t1_hi + t2_hi + t3_hi
    dv_lo[0] = 0.0
    dv_hi[0] = 0.0

    pos_lo = np.maximum(xs + dv_lo, domain.lower)
    pos_hi = np.minimum(xs + dv_hi, domain.upper)
    vel_lo = np.minimum(vs, dv_lo)
    vel_hi = np.maximum(vs, dv_hi)
    vel_lo[0] = vs[0]
    vel_hi[0] = vs[0]

    out = [np.empty_like(a) for a in (pos_lo, pos_hi, vel_lo, vel_hi)]
    for dst, src in zip(out, (pos_lo, pos_hi, vel_lo, vel_hi)):
        dst[order] = src
    return tuple(out)


def scope_boxes_slpso(state: PopulationState, cfg: AlgoConfig,
                      q: float) -> tuple[np.ndarray, np.ndarray]:
    pos_lo, pos_hi, _, _ = _slpso_intervals(state, cfg)
    return pos_lo, pos_hi


def scope_boxes_gtpso(state: PopulationState, cfg: AlgoConfig, q: float,
                      sigma_mode: str = "paper") -> tuple[np.ndarray, np.ndarray]:
    """Social-learning hulls with the best particle widened by the
    gene-targeting reach.

    Gene targeting runs after the substep, so every post-substep quantity it
    reads (positions, velocities, personal bests, swarm mean) is bounded by
    the hull over all particles' substep intervals.
    """
    pos_lo, pos_hi, vel_lo, vel_hi = _slpso_intervals(state, cfg)
    if not (cfg.bottleneck_mean > 0 or cfg.bottleneck_std > 0):
        return pos_lo, pos_hi

    domain = state.domain
    hull_lo = pos_lo.min(axis=0)
    hull_hi = pos_hi.max(axis=0)
    pb_lo = np.minimum(state.pbest_positions, pos_lo).min(axis=0)
    pb_hi = np.maximum(state.pbest_positions, pos_hi).max(axis=0)
    pb_gap = pb_hi - pb_lo
    mean_lo = pos_lo.mean(axis=0)
    mean_hi = pos_hi.mean(axis=0)
    v_glo = vel_lo.min(axis=0)
    v_ghi = vel_hi.max(axis=0)

    reach_lo = np.zeros_like(hull_lo)
    reach_hi = np.zeros_like(hull_hi)
    if cfg.p_m > 0:  # velocity recombination of two personal bests
        e_lo = cfg.gt_omega * v_glo - cfg.c1 * pb_gap + cfg.c2 * np.minimum(0.0, mean_lo - hull_hi)
        e_hi = cfg.gt_omega * v_ghi + cfg.c1 * pb_gap + cfg.c2 * np.maximum(0.0, mean_hi - hull_lo)
        reach_lo = np.minimum(reach_lo, e_lo)
        reach_hi = np.maximum(reach_hi, e_hi)
    if cfg.p_m < 1:  # Gaussian velocity resample, truncated at the q-quantile
        zq = gaussian_truncation_z(q)
        std_max = cfg.sigma if sigma_mode == "constant" else 0.5 * (v_ghi - v_glo)
        reach_lo = np.minimum(reach_lo, v_glo - zq * std_max)
        reach_hi = np.maximum(reach_hi, v_ghi + zq * std_max)

    best = int(np.argmin(state.fitness))
    pos_lo[best] = np.maximum(hull_lo + reach_lo, domain.lower)
    pos_hi[best] = np.minimum(hull_hi + reach_hi, domain.upper)
    return pos_lo, pos_hi
