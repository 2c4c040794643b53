"""Nonparametric comparison of two record sets.

The verdict follows the usual evolutionary-computation reporting style:
``+`` when the candidate is significantly better (two-sided Wilcoxon
rank-sum at level alpha, candidate median lower), ``-`` when significantly
worse, ``~`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import ranksums

from ..core import ConfigError


@dataclass(frozen=True)
class ComparisonRow:
    function_id: str
    baseline_mean: float
    baseline_std: float
    candidate_mean: float
    candidate_std: float
    verdict: str  # "+", "~" or "-"
    p_value: float


def _final_values(records) -> np.ndarray:
    values = [getattr(r, "final_best_fitness", r) for r in records]
    return np.asarray(values, dtype=float)


def compare(baseline, candidate, alpha: float = 0.05,
            function_id: str = "") -> ComparisonRow:
    """Rank-sum comparison of final best fitness, candidate vs baseline."""
    base = _final_values(baseline)
    cand = _final_values(candidate)
    if base.size < 5 or cand.size < 5:
        raise ConfigError("compare needs at least 5 runs per side")
    if not 0.0 < alpha < 1.0:
        raise ConfigError("alpha must lie in (0, 1)")
    if np.array_equal(base, cand) and np.unique(base).size == 1:
        p_value = 1.0
    else:
        p_value = float(ranksums(cand, base).pvalue)
    verdict = "~"
    if p_value < alpha:
        if np.median(cand) < np.median(base):
            verdict = "+"
        elif np.median(cand) > np.median(base):
            verdict = "-"
    return ComparisonRow(function_id, float(base.mean()), float(base.std(ddof=1)),
                         float(cand.mean()), float(cand.std(ddof=1)),
                         verdict, p_value)


def mean_std_str(mean: float, std: float) -> str:
    return f"{mean:.2E}±{std:.2E}"


COMPARISON_HEADER = ("function,baseline_mean,baseline_std,"
                     "candidate_mean,candidate_std,verdict,p_value")


def comparison_csv_row(row: ComparisonRow) -> str:
    return (f"{row.function_id},{row.baseline_mean:.2E},{row.baseline_std:.2E},"
            f"{row.candidate_mean:.2E},{row.candidate_std:.2E},"
            f"{row.verdict},{row.p_value:.2g}")


def write_comparison_csv(rows, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(COMPARISON_HEADER + "\n")
        for row in rows:
            fh.write(comparison_csv_row(row) + "\n")
