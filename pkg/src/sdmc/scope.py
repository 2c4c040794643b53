"""Search-scope instrumentation and the coverage verdict.

Per generation, every individual owns an axis-aligned box spanning the
positions one step can reach; the union of those boxes is the generation's
search scope.  ``sdmc_check`` compares windowed unions of recorded scopes
against the feasible domain by Monte-Carlo coverage: if some finite window
length makes every tested union cover the domain, the trace is consistent
with global convergence, otherwise a witness region that stays unreachable
is reported.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from . import algorithms
from ._kernels import CoverageAccumulator, points_in_boxes
from .core import BoxDomain, ConfigError, PopulationState

DEFAULT_TRUNCATION_Q = 0.9987  # central three-sigma interval for Gaussian factors
DEFAULT_SAMPLES = 100_000
DEFAULT_TOL = 1e-3


@dataclass(frozen=True)
class AxisBox:
    """Axis-aligned box; zero-width dimensions mark stagnant coordinates."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.shape != upper.shape or lower.ndim != 1:
            raise ConfigError("box bounds must be equal-length vectors")
        if np.any(lower > upper):
            raise ConfigError("box requires lower <= upper")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size


@dataclass
class BoxSet:
    """A finite union of boxes, each already intersected with the domain."""

    boxes: list[AxisBox] = field(default_factory=list)

    def __len__(self):
        return len(self.boxes)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.boxes:
            dim = 0
            return np.empty((0, dim)), np.empty((0, dim))
        lowers = np.stack([b.lower for b in self.boxes])
        uppers = np.stack([b.upper for b in self.boxes])
        return lowers, uppers

    @classmethod
    def from_arrays(cls, lowers: np.ndarray, uppers: np.ndarray,
                    domain: BoxDomain | None = None) -> "BoxSet":
        """Build from stacked bounds, clipping to the domain and dropping
        boxes that miss it entirely."""
        lowers = np.atleast_2d(np.asarray(lowers, dtype=float))
        uppers = np.atleast_2d(np.asarray(uppers, dtype=float))
        if domain is not None:
            lowers = np.maximum(lowers, domain.lower)
            uppers = np.minimum(uppers, domain.upper)
        keep = (lowers <= uppers).all(axis=1)
        return cls([AxisBox(lo, hi) for lo, hi in zip(lowers[keep], uppers[keep])])

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Mask of points inside at least one box."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if not self.boxes:
            return np.zeros(points.shape[0], dtype=bool)
        lowers, uppers = self.as_arrays()
        return points_in_boxes(points, lowers, uppers)


@dataclass
class ScopeTrace:
    """Recorded per-generation scopes of one run.

    ``start_generation`` keeps absolute generation numbers across slicing;
    entry ``k`` is the scope of generation ``start_generation + k``.
    """

    domain: BoxDomain
    box_sets: list[BoxSet] = field(default_factory=list)
    start_generation: int = 0

    def __len__(self):
        return len(self.box_sets)

    def __getitem__(self, k: int) -> BoxSet:
        return self.box_sets[k]

    def append(self, box_set: BoxSet) -> None:
        self.box_sets.append(box_set)

    def slice_from(self, generation: int) -> "ScopeTrace":
        """Tail of the trace starting at an absolute generation number."""
        k = generation - self.start_generation
        if not 0 <= k <= len(self.box_sets):
            raise ConfigError(f"generation {generation} outside the recorded range")
        return ScopeTrace(self.domain, self.box_sets[k:], generation)


def reachable_scope(algorithm_id: str, state: PopulationState,
                    cfg: algorithms.AlgoConfig,
                    q: float = DEFAULT_TRUNCATION_Q) -> BoxSet:
    """Per-individual reachable boxes for the coming generation.

    ``q`` is the one-sided quantile at which unbounded Gaussian factors are
    truncated; tail draws beyond it are logged by the steps so soundness
    checks can discount them.
    """
    if not 0.5 < q < 1.0:
        raise ConfigError(f"truncation quantile must be in (0.5, 1), got {q}")
    algo = algorithms.get_algorithm(algorithm_id)
    if algo.uses_velocity and state.velocities is None:
        raise ConfigError(f"{algorithm_id} scope needs velocity state")
    lowers, uppers = algo.scope(state, cfg, q)
    return BoxSet.from_arrays(lowers, uppers, state.domain)


def window_union(trace: ScopeTrace, t: int, n: int) -> BoxSet:
    """Union of the scopes of generations ``t .. t+n-1`` (trace-relative)."""
    if n < 1 or t < 0 or t + n > len(trace):
        raise ConfigError(
            f"window [{t}, {t + n}) outside trace of length {len(trace)}")
    merged = BoxSet()
    for k in range(t, t + n):
        merged.boxes.extend(trace[k].boxes)
    return merged


def coverage_fraction(boxset: BoxSet, domain: BoxDomain, samples: int,
                      rng: np.random.Generator) -> float:
    """Fraction of uniform domain samples inside the union.

    Exactly 0.0 for an empty union and exactly 1.0 when some box contains
    the whole domain; otherwise a binomial estimate with standard error at
    most ``0.5 / sqrt(samples)``.
    """
    if samples < 1:
        raise ConfigError("samples must be >= 1")
    if not boxset.boxes:
        return 0.0
    points = rng.uniform(domain.lower, domain.upper, (int(samples), domain.dim))
    acc = CoverageAccumulator(points)
    lowers, uppers = boxset.as_arrays()
    acc.add_boxes(lowers, uppers)
    return acc.covered_count / float(samples)


@dataclass
class SdmcVerdict:
    """Outcome of the windowed-coverage comparison against the domain.

    ``covers`` reports the largest window length any tested start needed;
    ``fails`` reports the first start where no window within ``n_max``
    reached coverage ``1 - tol``, along with one uncovered sample point.
    Coverage fractions are keyed by absolute ``(start_generation, window)``.
    """

    outcome: str
    n_max: int
    samples: int
    tol: float
    tested_starts: list[int]
    coverage: dict[tuple[int, int], float]
    covering_window: int | None = None
    witness_generation: int | None = None
    witness_point: np.ndarray | None = None
    restricted: bool = False

    @property
    def covers(self) -> bool:
        return self.outcome == "covers"


def sdmc_check(trace: ScopeTrace, domain: BoxDomain | None = None,
               n_max: int = 1, stride: int | None = None,
               samples: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL,
               rng: np.random.Generator | None = None) -> SdmcVerdict:
    """Windowed coverage verdict over a recorded scope trace.

    For each tested window start (every ``stride`` generations, the last
    feasible start always included) the smallest window length whose union
    covers the domain to within ``tol`` is found.  One fixed sample set is
    shared by all windows, so coverage is exactly monotone in the window
    length and the verdict is independent of evaluation order.
    """
    if len(trace) == 0:
        raise ConfigError("scope trace is empty")
    if domain is None:
        domain = trace.domain
    if n_max < 1:
        raise ConfigError("n_max must be >= 1")
    if not 0.0 < tol <= 0.01:
        raise ConfigError("tol must lie in (0, 0.01]")
    if samples < 1:
        raise ConfigError("samples must be >= 1")
    if rng is None:
        rng = np.random.default_rng(0)

    length = len(trace)
    restricted = length < n_max
    effective_n_max = min(n_max, length)
    last_start = length - effective_n_max
    if stride is None:
        stride = max(1, length // 20)
    if stride < 1:
        raise ConfigError("stride must be >= 1")
    starts = list(range(0, last_start + 1, stride))
    if starts[-1] != last_start:
        starts.append(last_start)

    points = rng.uniform(domain.lower, domain.upper, (int(samples), domain.dim))
    coverage: dict[tuple[int, int], float] = {}
    base = trace.start_generation
    needed = 0

    for t in starts:
        acc = CoverageAccumulator(points)
        found = None
        for k in range(min(effective_n_max, length - t)):
            boxes = trace[t + k]
            if boxes.boxes:
                lowers, uppers = boxes.as_arrays()
                acc.add_boxes(lowers, uppers)
            frac = acc.covered_count / float(samples)
            coverage[(base + t, k + 1)] = frac
            if frac >= 1.0 - tol:
                found = k + 1
                break
        if found is None:
            witness = points[acc.first_uncovered()].copy()
            return SdmcVerdict(
                outcome="fails", n_max=n_max, samples=int(samples), tol=tol,
                tested_starts=[base + s for s in starts], coverage=coverage,
                witness_generation=base + t, witness_point=witness,
                restricted=restricted,
            )
        needed = max(needed, found)

    return SdmcVerdict(
        outcome="covers", n_max=n_max, samples=int(samples), tol=tol,
        tested_starts=[base + s for s in starts], coverage=coverage,
        covering_window=needed, restricted=restricted,
    )


@dataclass
class StdTrace:
    """Per-generation population standard deviation of one coordinate."""

    dimension: int
    eval_counts: np.ndarray
    generations: np.ndarray
    values: np.ndarray

    def window_mean(self, eval_from: float, eval_to: float = np.inf) -> float:
        """Mean std over entries whose evaluation count lies in the window;
        this is how traces with unequal per-generation costs are aligned."""
        mask = (self.eval_counts >= eval_from) & (self.eval_counts <= eval_to)
        if not mask.any():
            raise ConfigError("no std entries in the requested window")
        return float(self.values[mask].mean())


def dim_std_trace(record, dimension: int) -> StdTrace:
    """Population std of coordinate ``dimension`` per generation.

    Computed from a record's per-generation position history when present,
    otherwise the record's live std trace is returned (its dimension must
    match).  Entries carry evaluation counts so traces of algorithms with
    unequal per-generation costs align by evaluations, not generations.
    """
    history = getattr(record, "position_history", None)
    if history:
        evals = np.array([h[0] for h in history])
        gens = np.array([h[1] for h in history])
        stds = np.array([h[2][:, dimension].std() for h in history])
        return StdTrace(dimension, evals, gens, stds)
    std_trace = getattr(record, "std_trace", None)
    if std_trace is not None:
        if std_trace.dimension != dimension:
            raise ConfigError(
                f"record holds a std trace for dimension {std_trace.dimension}, "
                f"not {dimension}")
        return std_trace
    raise ConfigError("record has neither position history nor a std trace")


def projected_union_length(boxset: BoxSet, dimension: int) -> float:
    """Length of the union of the boxes' intervals along one dimension."""
    if not boxset.boxes:
        return 0.0
    intervals = sorted((b.lower[dimension], b.upper[dimension]) for b in boxset.boxes)
    total = 0.0
    cur_lo, cur_hi = intervals[0]
    for lo, hi in intervals[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    total += cur_hi - cur_lo
    return float(total)


def write_trace(trace: ScopeTrace, path_or_file) -> None:
    """Serialize a trace to the textual format (one line per box)."""
    own = isinstance(path_or_file, (str, bytes))
    fh = open(path_or_file, "w") if own else path_or_file
    try:
        fh.write("# scope-trace v1\n")
        fh.write(f"# dim {trace.domain.dim}\n")
        fh.write(f"# start_generation {trace.start_generation}\n")
        fh.write(f"# generations {len(trace)}\n")
        bounds = " ".join(repr(v) for v in np.concatenate([trace.domain.lower,
                                                           trace.domain.upper]))
        fh.write(f"# domain {bounds}\n")
        for k, box_set in enumerate(trace.box_sets):
            gen = trace.start_generation + k
            for i, box in enumerate(box_set.boxes):
                coords = " ".join(repr(v) for v in np.concatenate([box.lower, box.upper]))
                fh.write(f"{gen} {i} {coords}\n")
    finally:
        if own:
            fh.close()


def read_trace(path_or_file) -> ScopeTrace:
    """Parse the textual trace format written by :func:`write_trace`."""
    own = isinstance(path_or_file, (str, bytes))
    fh = open(path_or_file) if own else path_or_file
    try:
        text = fh.read()
    finally:
        if own:
            fh.close()

    dim = start = count = None
    domain = None
    rows = []
    for line in io.StringIO(text):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[0] == "dim":
                dim = int(parts[1])
            elif parts[0] == "start_generation":
                start = int(parts[1])
            elif parts[0] == "generations":
                count = int(parts[1])
            elif parts[0] == "domain":
                vals = np.array([float(v) for v in parts[1:]])
                domain = BoxDomain(vals[:dim], vals[dim:])
            continue
        fields = line.split()
        rows.append((int(fields[0]), int(fields[1]),
                     np.array([float(v) for v in fields[2:]])))
    if dim is None or start is None or count is None or domain is None:
        raise ConfigError("malformed scope trace: missing header")

    box_sets = [BoxSet() for _ in range(count)]
    for gen, _individual, coords in rows:
        k = gen - start
        if not 0 <= k < count:
            raise ConfigError(f"box for generation {gen} outside declared range")
        box_sets[k].boxes.append(AxisBox(coords[:dim], coords[dim:]))
    return ScopeTrace(domain, box_sets, start)
