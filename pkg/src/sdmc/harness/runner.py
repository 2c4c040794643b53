"""Trial execution: seeded runs, per-run records, and persistence.

Run ``i`` of an experiment draws from streams derived from ``(seed, i)``,
so records are bit-identical across repeats and independent of how trials
are scheduled.  ``SDMC_THREADS`` caps trial parallelism; unset means one
worker per available core.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import algorithms, benchmarks, scope
from ..core import ConfigError, RunStreams
from .config import ExperimentConfig
from . import export


@dataclass
class RunRecord:
    """Everything one seeded trial produced.

    The best-fitness curve has one point per evaluated generation (the
    initial population included) and is monotone non-increasing; the
    evaluation ledger lists each generation's cost and never exceeds the
    budget.
    """

    run_index: int
    seed: int
    eval_counts: np.ndarray
    best_fitness: np.ndarray
    final_best_fitness: float
    final_best_position: np.ndarray
    eval_ledger: list[tuple[str, int]] = field(default_factory=list)
    cut_note: str | None = None
    scope_trace: scope.ScopeTrace | None = None
    std_trace: scope.StdTrace | None = None
    snapshots: dict[int, np.ndarray] = field(default_factory=dict)
    position_history: list[tuple[int, int, np.ndarray]] | None = None


def run_single(config: ExperimentConfig, run_index: int) -> RunRecord:
    """Execute one seeded trial of the experiment."""
    cfg = config.resolved_algo()
    algo = algorithms.get_algorithm(config.algorithm_id)
    objective = benchmarks.get_objective(config.function_id, config.dim)
    streams = RunStreams.for_run(config.seed, run_index)
    inst = config.instrument

    state = algo.init(objective, cfg, streams)
    state.eval_budget = config.budget

    curve = [(state.eval_count, state.best_fitness)]
    ledger = [("init", state.eval_count)]
    trace = scope.ScopeTrace(objective.domain) if inst.scope_trace else None
    history = [] if inst.positions else None
    snapshots = {}
    std_points = []

    def instrument(st):
        if inst.std:
            std_points.append((st.eval_count, st.generation,
                               st.positions[:, inst.std_dim].std()))
        if history is not None:
            history.append((st.eval_count, st.generation, st.positions.copy()))
        if st.generation in inst.snapshots:
            snapshots[st.generation] = st.positions.copy()

    instrument(state)
    max_step = algo.max_step_evals(cfg)
    while state.eval_count + max_step <= config.budget:
        if trace is not None:
            trace.append(scope.reachable_scope(config.algorithm_id, state, cfg))
        before = state.eval_count
        state = algo.step(state, objective, cfg, streams)
        ledger.append((f"gen_{state.generation}", state.eval_count - before))
        curve.append((state.eval_count, state.best_fitness))
        instrument(state)

    cut_note = None
    leftover = config.budget - state.eval_count
    if leftover > 0:
        cut_note = (f"stopped after generation {state.generation}: "
                    f"{leftover} evaluations left, next generation needs up to {max_step}")
    if state.diagnostics.get("gt_skipped"):
        cut_note = (cut_note or "") + " [gene-targeting trial skipped at the budget edge]"

    eval_counts = np.array([c[0] for c in curve], dtype=np.int64)
    best_curve = np.array([c[1] for c in curve])
    std_trace = None
    if inst.std:
        std_points_arr = np.array(std_points)
        std_trace = scope.StdTrace(inst.std_dim,
                                   std_points_arr[:, 0].astype(np.int64),
                                   std_points_arr[:, 1].astype(np.int64),
                                   std_points_arr[:, 2])
    return RunRecord(
        run_index=run_index,
        seed=config.seed,
        eval_counts=eval_counts,
        best_fitness=best_curve,
        final_best_fitness=float(best_curve[-1]),
        final_best_position=state.best_position.copy(),
        eval_ledger=ledger,
        cut_note=cut_note,
        scope_trace=trace,
        std_trace=std_trace,
        snapshots=snapshots,
        position_history=history,
    )


def _worker_count(runs: int) -> int:
    env = os.environ.get("SDMC_THREADS", "").strip()
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise ConfigError(f"SDMC_THREADS must be an integer, got {env!r}") from None
        if cap < 1:
            raise ConfigError("SDMC_THREADS must be >= 1")
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, runs))


def run_trials(config: ExperimentConfig) -> list[RunRecord]:
    """All independent trials of the experiment, in run-index order.

    Results are persisted to ``config.output`` when set.
    """
    config.validate()
    workers = _worker_count(config.runs)
    if workers == 1:
        records = [run_single(config, i) for i in range(config.runs)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run_single, [config] * config.runs,
                                    range(config.runs)))
    if config.output:
        export.save_records(config, records, config.output)
    return records
