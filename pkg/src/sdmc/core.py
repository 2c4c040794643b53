"""Shared primitives: box domains, seeded random streams, population state,
boundary repair, and the elitist best-so-far tracker.

Every algorithm in :mod:`sdmc.algorithms` is built on these pieces, and the
determinism contract of the whole package rests on :class:`RngStream`:
identical ``(seed, stream_id)`` pairs replay identical draw sequences on any
platform, and distinct stream ids are statistically independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class SdmcError(Exception):
    """Base class for package errors."""


class ConfigError(SdmcError):
    """Invalid configuration: bad parameter value, unknown id, bad file."""


class FitnessError(SdmcError):
    """A non-finite fitness value was produced; the run is aborted."""


# Purpose codes for per-run random streams.  Keeping population updates,
# gene-targeting draws, and scope Monte-Carlo sampling on separate streams
# means switching instrumentation on or off never perturbs a trajectory.
STREAM_INIT = 0
STREAM_POPULATION = 1
STREAM_GT = 2
STREAM_SCOPE_MC = 3

_PURPOSES_PER_RUN = 8  # room for future purposes without re-keying old runs


@dataclass(frozen=True)
class RngStream:
    """A named, reproducible random stream.

    Backed by the counter-based Philox generator keyed on the 128-bit value
    ``(seed << 64) | stream_id``, so streams are independent and platform
    stable.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.stream_id < 2**64:
            raise ConfigError(f"stream_id must be a 64-bit unsigned integer, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        return np.random.Generator(np.random.Philox(key=(self.seed << 64) | self.stream_id))

    def substream(self, index: int) -> "RngStream":
        """Derived stream for replicate/run ``index`` (same purpose space)."""
        return RngStream(self.seed, self.stream_id + index * _PURPOSES_PER_RUN)


@dataclass
class RunStreams:
    """The generator bundle owned by one run."""

    init: np.random.Generator
    population: np.random.Generator
    gt: np.random.Generator
    scope_mc: np.random.Generator

    @classmethod
    def from_stream(cls, stream: RngStream) -> "RunStreams":
        base = stream.stream_id
        return cls(
            init=RngStream(stream.seed, base + STREAM_INIT).generator(),
            population=RngStream(stream.seed, base + STREAM_POPULATION).generator(),
            gt=RngStream(stream.seed, base + STREAM_GT).generator(),
            scope_mc=RngStream(stream.seed, base + STREAM_SCOPE_MC).generator(),
        )

    @classmethod
    def for_run(cls, seed: int, run_index: int = 0) -> "RunStreams":
        return cls.from_stream(RngStream(seed).substream(run_index))


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned feasible domain with per-dimension bounds.

    Bounds must be finite with ``lower <= upper``; zero-width dimensions are
    permitted only as degenerate test doubles and make the measure zero.
    """

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.ndim != 1 or lower.shape != upper.shape or lower.size == 0:
            raise ConfigError("domain bounds must be equal-length 1-D vectors")
        if not (np.isfinite(lower).all() and np.isfinite(upper).all()):
            raise ConfigError("domain bounds must be finite")
        if np.any(lower > upper):
            raise ConfigError("domain requires lower <= upper in every dimension")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, dim: int, low: float, high: float) -> "BoxDomain":
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def log_measure(self) -> float:
        """log of the domain volume; -inf for degenerate domains."""
        with np.errstate(divide="ignore"):
            return float(np.log(self.width).sum())

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Elementwise containment for one point or a stack of points."""
        pts = np.asarray(points, dtype=float)
        return ((pts >= self.lower) & (pts <= self.upper)).all(axis=-1)

    def clip(self, points: np.ndarray) -> np.ndarray:
        return np.clip(points, self.lower, self.upper)


def uniform_sample(domain: BoxDomain, rng: np.random.Generator) -> np.ndarray:
    """One position uniform over the domain (degenerate dims give the point)."""
    return rng.uniform(domain.lower, domain.upper)


REPAIR_POLICIES = ("resample_uniform", "clamp_position", "clamp_velocity")


def repair(position, velocity, domain: BoxDomain, policy: str,
           rng: np.random.Generator | None = None, v_max=None):
    """Boundary handling for a single individual.

    ``resample_uniform`` replaces an out-of-domain position with a fresh
    uniform sample, ``clamp_position`` projects onto the bounds, and
    ``clamp_velocity`` saturates each velocity component at ``v_max`` (the
    position is left untouched).  Returns ``(position, velocity)``.

    The batch update loops inside the algorithms implement exactly these
    semantics; this function is the single-individual contract surface.
    """
    position = np.asarray(position, dtype=float)
    if policy == "resample_uniform":
        if rng is None:
            raise ConfigError("resample_uniform repair needs a generator")
        if not domain.contains(position):
            position = uniform_sample(domain, rng)
        return position, velocity
    if policy == "clamp_position":
        return domain.clip(position), velocity
    if policy == "clamp_velocity":
        if v_max is None:
            raise ConfigError("clamp_velocity repair needs v_max")
        if velocity is None:
            raise ConfigError("clamp_velocity repair needs a velocity")
        v_max = np.asarray(v_max, dtype=float)
        return position, np.clip(np.asarray(velocity, dtype=float), -v_max, v_max)
    raise ConfigError(f"unknown repair policy {policy!r}; expected one of {REPAIR_POLICIES}")


@dataclass
class PopulationState:
    """Snapshot of a running population.

    ``best_position``/``best_fitness`` track the best point ever evaluated in
    the run (elitist: replaced only on strict improvement).  ``diagnostics``
    carries per-step event flags (boundary resamples, Gaussian tail draws,
    gene-targeting activity) used by instrumentation; it is not part of the
    optimization state proper.
    """

    domain: BoxDomain
    positions: np.ndarray
    fitness: np.ndarray
    generation: int = 0
    eval_count: int = 0
    eval_budget: int | None = None
    velocities: np.ndarray | None = None
    pbest_positions: np.ndarray | None = None
    pbest_fitness: np.ndarray | None = None
    best_position: np.ndarray | None = None
    best_fitness: float = np.inf
    diagnostics: dict = field(default_factory=dict)

    @property
    def pop_size(self) -> int:
        return self.positions.shape[0]

    @property
    def dim(self) -> int:
        return self.positions.shape[1]

    def check_finite(self, values: np.ndarray) -> None:
        values = np.asarray(values)
        if not np.isfinite(values).all():
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise FitnessError(
                f"non-finite fitness at generation {self.generation}, individual {bad}: "
                f"{values.reshape(-1)[bad]!r}"
            )

    def observe(self, positions: np.ndarray, fitness: np.ndarray) -> None:
        """Fold newly evaluated points into the best-so-far tracker.

        Strict-less update: ties keep the incumbent.
        """
        self.check_finite(fitness)
        positions = np.atleast_2d(positions)
        fitness = np.atleast_1d(fitness)
        k = int(np.argmin(fitness))
        if fitness[k] < self.best_fitness:
            self.best_fitness = float(fitness[k])
            self.best_position = positions[k].copy()


def update_best_so_far(state: PopulationState) -> PopulationState:
    """Refresh the best-so-far pair from the current population fitness.

    Only a strictly better fitness replaces the incumbent; a non-finite
    fitness aborts the run.
    """
    state.observe(state.positions, state.fitness)
    return state
