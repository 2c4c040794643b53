"""Backend selection for the coverage containment kernel.

A compiled extension handles the points x boxes x dimensions loop when it
built successfully; otherwise a pure-numpy implementation with a
first-dimension sort filter takes over.  Both produce identical results
(``tests/test_kernels.py`` asserts equality), and ``SDMC_PURE_KERNELS=1``
forces the fallback, which is what ``bench/bench_coverage.py`` uses to
compare the two.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from sdmc._coverage import mark_covered as _mark_covered_compiled
except ImportError:
    _mark_covered_compiled = None


def _as_point_matrix(points):
    pts = np.ascontiguousarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError("points must be a (n, dim) matrix")
    return pts


class PureCoverageAccumulator:
    """Numpy fallback: per box, restrict to the sorted first-dimension slice
    that can intersect it, then test the remaining dimensions vectorized."""

    backend = "pure"

    def __init__(self, points):
        self.points = _as_point_matrix(points)
        self.covered = np.zeros(self.points.shape[0], dtype=np.uint8)
        self._order = np.argsort(self.points[:, 0], kind="stable")
        self._x0 = self.points[self._order, 0]

    def add_boxes(self, lowers, uppers) -> int:
        lowers = np.atleast_2d(np.asarray(lowers, dtype=float))
        uppers = np.atleast_2d(np.asarray(uppers, dtype=float))
        newly = 0
        for lo, hi in zip(lowers, uppers):
            i0 = np.searchsorted(self._x0, lo[0], side="left")
            i1 = np.searchsorted(self._x0, hi[0], side="right")
            if i0 >= i1:
                continue
            cand = self._order[i0:i1]
            cand = cand[self.covered[cand] == 0]
            if cand.size == 0:
                continue
            inside = ((self.points[cand] >= lo) & (self.points[cand] <= hi)).all(axis=1)
            hit = cand[inside]
            self.covered[hit] = 1
            newly += hit.size
        return newly

    @property
    def covered_count(self) -> int:
        return int(self.covered.sum())

    def first_uncovered(self) -> int:
        """Index of the first uncovered point, or -1 when all are covered."""
        idx = int(np.argmin(self.covered))
        return -1 if self.covered[idx] else idx


class CompiledCoverageAccumulator(PureCoverageAccumulator):
    """Thin wrapper over the compiled containment loop."""

    backend = "compiled"

    def __init__(self, points):
        self.points = _as_point_matrix(points)
        self.covered = np.zeros(self.points.shape[0], dtype=np.uint8)

    def add_boxes(self, lowers, uppers) -> int:
        lowers = np.ascontiguousarray(np.atleast_2d(lowers), dtype=float)
        uppers = np.ascontiguousarray(np.atleast_2d(uppers), dtype=float)
        return _mark_covered_compiled(self.points, lowers, uppers, self.covered)


def _select_backend():
    forced_pure = os.environ.get("SDMC_PURE_KERNELS", "") not in ("", "0")
    if _mark_covered_compiled is not None and not forced_pure:
        return CompiledCoverageAccumulator
    return PureCoverageAccumulator


CoverageAccumulator = _select_backend()
BACKEND = CoverageAccumulator.backend


def points_in_boxes(points, lowers, uppers) -> np.ndarray:
    """Boolean mask: which points lie inside at least one box."""
    acc = CoverageAccumulator(points)
    if np.size(lowers):
        acc.add_boxes(lowers, uppers)
    return acc.covered.astype(bool)
