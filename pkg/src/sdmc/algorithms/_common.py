"""Shared helpers for the population-update algorithms."""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri

from ..core import ConfigError


def gaussian_truncation_z(q: float) -> float:
    """z-score at which unbounded Gaussian factors are truncated.

    ``q`` is the one-sided quantile; the reachable interval for a draw with
    mean m and std s is taken as ``m +- z*s`` and the tail event rate is at
    most ``2*(1-q)`` per draw.
    """
    if not 0.5 < q < 1.0:
        raise ConfigError(f"truncation quantile must be in (0.5, 1), got {q}")
    return float(ndtri(q))


def distinct_pair(rng: np.random.Generator, n: int) -> tuple[int, int]:
    """Two distinct indices drawn uniformly from range(n)."""
    a = int(rng.integers(0, n))
    b = int(rng.integers(0, n - 1))
    if b >= a:
        b += 1
    return a, b


def distinct_partners(rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized draw of (r1, r2) with r1 != r2 and both != i, for every i.

    Uniform over the valid index pairs, one pair per row.
    """
    idx = np.arange(n)
    r1 = rng.integers(0, n - 1, n)
    r1 = r1 + (r1 >= idx)
    lo = np.minimum(idx, r1)
    hi = np.maximum(idx, r1)
    r2 = rng.integers(0, n - 2, n)
    r2 = r2 + (r2 >= lo)
    r2 = r2 + (r2 >= hi)
    return r1, r2


def column_minmax_excluding_self(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-column min/max over all rows except row i, for every row i.

    Returns ``(mins, maxs)`` of the same shape as ``x``.  Needs >= 2 rows.
    """
    n, d = x.shape
    cols = np.arange(d)
    top_idx = np.argmax(x, axis=0)
    top_val = x[top_idx, cols]
    masked = x.copy()
    masked[top_idx, cols] = -np.inf
    second_val = masked.max(axis=0)

    bot_idx = np.argmin(x, axis=0)
    bot_val = x[bot_idx, cols]
    masked = x.copy()
    masked[bot_idx, cols] = np.inf
    second_bot = masked.min(axis=0)

    rows = np.arange(n)[:, None]
    maxs = np.where(rows == top_idx[None, :], second_val[None, :], top_val[None, :])
    mins = np.where(rows == bot_idx[None, :], second_bot[None, :], bot_val[None, :])
    return mins, maxs


def interval_scale_corners(f_lo: float, f_hi: float, a_lo: np.ndarray,
                           a_hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact interval product ``[f_lo, f_hi] * [a_lo, a_hi]`` per element."""
    c1 = f_lo * a_lo
    c2 = f_lo * a_hi
    c3 = f_hi * a_lo
    c4 = f_hi * a_hi
    lo = np.minimum(np.minimum(c1, c2), np.minimum(c3, c4))
    hi = np.maximum(np.maximum(c1, c2), np.maximum(c3, c4))
    return lo, hi
