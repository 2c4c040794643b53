"""Differential evolution (current-to-best/1/bin) and its gene-targeting
variant.

The gene-targeting phase runs after the ordinary generation: a handful of
"bottleneck" dimensions of the best individual are perturbed, the trial is
evaluated at the cost of one extra fitness evaluation, and it replaces the
best individual only on strict improvement.
"""

from __future__ import annotations

import numpy as np

from .. import benchmarks
from ..core import BoxDomain, ConfigError, PopulationState, RunStreams, uniform_sample
from ._common import (
    column_minmax_excluding_self,
    distinct_pair,
    distinct_partners,
    gaussian_truncation_z,
    interval_scale_corners,
)
from .config import AlgoConfig


def init_population(objective: benchmarks.ObjectiveSpec, cfg: AlgoConfig,
                    streams: RunStreams, with_velocity: bool = False) -> PopulationState:
    """Uniform initial population; evaluation counts toward the budget."""
    domain = objective.domain
    n = cfg.pop_size
    positions = streams.init.uniform(domain.lower, domain.upper, (n, domain.dim))
    fitness = benchmarks.evaluate_batch(objective, positions)
    state = PopulationState(
        domain=domain,
        positions=positions,
        fitness=fitness,
        eval_count=n,
        velocities=np.zeros((n, domain.dim)) if with_velocity else None,
        pbest_positions=positions.copy() if with_velocity else None,
        pbest_fitness=fitness.copy() if with_velocity else None,
    )
    state.observe(positions, fitness)
    return state


def gt_select_bottleneck_dims(dim: int, cfg: AlgoConfig, rng: np.random.Generator) -> np.ndarray:
    """Indices of the dimensions chosen for gene targeting.

    Per dimension, a uniform draw is compared against a Gaussian threshold
    (mean ``bottleneck_mean``, std ``bottleneck_std``) clamped to [0, 1].
    """
    u = rng.random(dim)
    thresholds = np.clip(rng.normal(cfg.bottleneck_mean, cfg.bottleneck_std, dim), 0.0, 1.0)
    return np.flatnonzero(u < thresholds)


def _draw_f(cfg: AlgoConfig, rng: np.random.Generator, size) -> np.ndarray:
    if cfg.f_mean is not None:
        return rng.normal(cfg.f_mean, cfg.f_std, size)
    return np.full(size, cfg.f_const)


def _de_generation(state: PopulationState, objective: benchmarks.ObjectiveSpec,
                   cfg: AlgoConfig, rng: np.random.Generator) -> PopulationState:
    n, dim = state.positions.shape
    if n < 4:
        raise ConfigError("DE needs at least 4 individuals")
    x = state.positions
    domain = state.domain

    f = _draw_f(cfg, rng, n)
    r1, r2 = distinct_partners(rng, n)
    best = int(np.argmin(state.fitness))
    mutants = x + f[:, None] * ((x[best] - x) + (x[r1] - x[r2]))

    out_of_domain = ~domain.contains(mutants)
    if out_of_domain.any():
        k = int(out_of_domain.sum())
        mutants[out_of_domain] = rng.uniform(domain.lower, domain.upper, (k, dim))

    cross = rng.random((n, dim)) < cfg.cr
    d_rand = rng.integers(0, dim, n)
    cross[np.arange(n), d_rand] = True
    trials = np.where(cross, mutants, x)

    trial_fitness = benchmarks.evaluate_batch(objective, trials)
    new_state = PopulationState(
        domain=domain,
        positions=x.copy(),
        fitness=state.fitness.copy(),
        generation=state.generation + 1,
        eval_count=state.eval_count + n,
        eval_budget=state.eval_budget,
        best_position=state.best_position,
        best_fitness=state.best_fitness,
    )
    new_state.observe(trials, trial_fitness)
    improved = trial_fitness < state.fitness
    new_state.positions[improved] = trials[improved]
    new_state.fitness[improved] = trial_fitness[improved]
    new_state.diagnostics = {
        "resampled": out_of_domain,
        "f_draws": f,
        "accepted": improved,
    }
    return new_state


def _gt_trial_candidates(cfg: AlgoConfig, dims: np.ndarray, best_row: np.ndarray,
                         population: np.ndarray, domain: BoxDomain,
                         rng: np.random.Generator) -> tuple[np.ndarray, dict]:
    """One joint gene-targeting trial touching every selected dimension."""
    n = population.shape[0]
    r1, r2 = distinct_pair(rng, n)
    x_rand = uniform_sample(domain, rng)
    f_gt = float(rng.normal(cfg.f_mean, cfg.f_std)) if cfg.f_mean is not None else cfg.f_const
    explore = rng.random(dims.size) < cfg.p_m

    trial = best_row.copy()
    partner = population[r1, dims]
    trial[dims] = np.where(
        explore,
        best_row[dims] + f_gt * (partner - x_rand[dims]),
        best_row[dims] + f_gt * (partner - population[r2, dims]),
    )
    info = {"f_gt": f_gt, "explore": explore, "r1": r1, "r2": r2}
    return trial, info


def _apply_gt_de(state: PopulationState, objective: benchmarks.ObjectiveSpec,
                 cfg: AlgoConfig, rng: np.random.Generator) -> None:
    """Gene targeting on the current best individual, greedy acceptance."""
    dim = state.dim
    dims = gt_select_bottleneck_dims(dim, cfg, rng)
    diag = state.diagnostics
    diag["gt_dims"] = dims
    diag["gt_evals"] = 0
    diag["gt_accepted"] = 0
    diag["gt_resampled"] = False
    if dims.size == 0:
        return

    if cfg.gt_trial_mode == "joint":
        trial_dim_groups = [dims]
    else:
        trial_dim_groups = [dims[j:j + 1] for j in range(dims.size)]

    budget = state.eval_budget
    for group in trial_dim_groups:
        if budget is not None and state.eval_count + 1 > budget:
            diag["gt_skipped"] = True
            return
        best = int(np.argmin(state.fitness))
        trial, info = _gt_trial_candidates(cfg, group, state.positions[best],
                                           state.positions, state.domain, rng)
        if not state.domain.contains(trial):
            trial = uniform_sample(state.domain, rng)
            diag["gt_resampled"] = True
        value = benchmarks.evaluate(objective, trial)
        state.eval_count += 1
        diag["gt_evals"] += 1
        state.observe(trial, np.array([value]))
        if value < state.fitness[best]:
            state.positions[best] = trial
            state.fitness[best] = value
            diag["gt_accepted"] += 1
            diag["gt_row"] = best
        diag.setdefault("gt_f_draws", []).append(info["f_gt"])


def step_de(state: PopulationState, objective: benchmarks.ObjectiveSpec,
            cfg: AlgoConfig, streams: RunStreams) -> PopulationState:
    """One generation of current-to-best/1/bin differential evolution."""
    return _de_generation(state, objective, cfg, streams.population)


def step_gtde(state: PopulationState, objective: benchmarks.ObjectiveSpec,
              cfg: AlgoConfig, streams: RunStreams) -> PopulationState:
    """One DE generation with Gaussian scale factor, then gene targeting."""
    if cfg.f_mean is None:
        raise ConfigError("gtde needs a Gaussian scale factor; set f_mean/f_std")
    new_state = _de_generation(state, objective, cfg, streams.population)
    _apply_gt_de(new_state, objective, cfg, streams.gt)
    return new_state


def _f_interval(cfg: AlgoConfig, q: float) -> tuple[float, float]:
    if cfg.f_mean is None:
        return cfg.f_const, cfg.f_const
    z = gaussian_truncation_z(q)
    return cfg.f_mean - z * cfg.f_std, cfg.f_mean + z * cfg.f_std


def scope_boxes_de(state: PopulationState, cfg: AlgoConfig,
                   q: float) -> tuple[np.ndarray, np.ndarray]:
    """Per-individual reachable hull for the coming DE generation.

    Per dimension the hull spans the mutant values over every valid partner
    pair and the (possibly truncated-Gaussian) scale-factor interval, plus
    the incumbent position; intersected with the domain.
    """
    x = state.positions
    best = int(np.argmin(state.fitness))
    f_lo, f_hi = _f_interval(cfg, q)

    excl_min, excl_max = column_minmax_excluding_self(x)
    diff_max = excl_max - excl_min
    g = x[best] - x
    term_lo, term_hi = interval_scale_corners(f_lo, f_hi, g - diff_max, g + diff_max)
    lowers = x + np.minimum(0.0, term_lo)
    uppers = x + np.maximum(0.0, term_hi)
    domain = state.domain
    return np.maximum(lowers, domain.lower), np.minimum(uppers, domain.upper)


def _gt_possible(cfg: AlgoConfig) -> bool:
    return cfg.bottleneck_mean > 0 or cfg.bottleneck_std > 0


def scope_boxes_gtde(state: PopulationState, cfg: AlgoConfig,
                     q: float) -> tuple[np.ndarray, np.ndarray]:
    """DE hulls, with the best individual widened by the gene-targeting reach.

    Gene targeting runs after the ordinary generation, so its center and
    partners are bounded by the hull over all individuals' post-generation
    intervals; the fresh uniform solution spans the whole domain.
    """
    lowers, uppers = scope_boxes_de(state, cfg, q)
    if not _gt_possible(cfg):
        return lowers, uppers

    domain = state.domain
    f_lo, f_hi = _f_interval(cfg, q)
    hull_lo = lowers.min(axis=0)
    hull_hi = uppers.max(axis=0)

    reach_lo = np.zeros_like(hull_lo)
    reach_hi = np.zeros_like(hull_hi)
    if cfg.p_m > 0:  # partner minus fresh uniform solution
        t_lo, t_hi = interval_scale_corners(f_lo, f_hi,
                                            hull_lo - domain.upper,
                                            hull_hi - domain.lower)
        reach_lo = np.minimum(reach_lo, t_lo)
        reach_hi = np.maximum(reach_hi, t_hi)
    if cfg.p_m < 1:  # partner minus partner
        width = hull_hi - hull_lo
        t_lo, t_hi = interval_scale_corners(f_lo, f_hi, -width, width)
        reach_lo = np.minimum(reach_lo, t_lo)
        reach_hi = np.maximum(reach_hi, t_hi)

    best = int(np.argmin(state.fitness))
    lowers[best] = np.maximum(hull_lo + reach_lo, domain.lower)
    uppers[best] = np.minimum(hull_hi + reach_hi, domain.upper)
    return lowers, uppers
