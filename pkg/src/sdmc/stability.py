"""Stable-convergence analytics.

Second-order particle eigenvalues and their expected maximum modulus, the
windowed moment statistic for trajectory stagnation, the ball-volume bound
linking stagnation to vanishing scope measure, and the two closed-form
distributions used as oracles for the swarm and difference dynamics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algorithms, benchmarks
from .algorithms.config import AlgoConfig
from .core import ConfigError, RngStream, RunStreams


@dataclass(frozen=True)
class SecondOrderParams:
    """Coefficients of the per-particle linear update model.

    ``phi`` is the combined attraction coefficient ``c1*r1 + c2*r2``; the
    state matrix maps (position, velocity) to the next generation.
    """

    omega: float
    phi: float
    c1: float | None = None
    c2: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.omega <= 1.2:
            raise ConfigError("omega must lie in [0, 1.2]")
        if self.phi < 0:
            raise ConfigError("phi must be non-negative")


def state_matrix(params: SecondOrderParams) -> np.ndarray:
    """The 2x2 position/velocity update matrix."""
    return np.array([[1.0 - params.phi, params.omega],
                     [-params.phi, params.omega]])


def particle_eigenvalues(params: SecondOrderParams) -> tuple[complex, complex]:
    """Eigenvalues of the particle update matrix via a stable quadratic solve.

    The characteristic polynomial is ``x^2 - (1 + omega - phi) x + omega``;
    in the complex regime both moduli equal ``sqrt(omega)``.
    """
    trace = 1.0 + params.omega - params.phi
    det = params.omega
    disc = trace * trace - 4.0 * det
    if disc < 0.0:
        re = trace / 2.0
        im = math.sqrt(-disc) / 2.0
        return complex(re, im), complex(re, -im)
    root = math.sqrt(disc)
    q = (trace + root) / 2.0 if trace >= 0 else (trace - root) / 2.0
    if q == 0.0:
        return complex(0.0), complex(trace)
    return complex(q), complex(det / q)


def _max_modulus_from_phi(omega: float, phi: np.ndarray) -> np.ndarray:
    trace = 1.0 + omega - phi
    disc = trace * trace - 4.0 * omega
    real = disc >= 0
    out = np.full_like(phi, math.sqrt(omega))
    out[real] = (np.abs(trace[real]) + np.sqrt(disc[real])) / 2.0
    return out


@dataclass(frozen=True)
class ModulusEstimate:
    value: float
    std_error: float | None
    mode: str
    samples: int | None = None


def expected_max_modulus(omega: float, c1: float, c2: float, mode: str = "plug-in",
                         samples: int = 1_000_000,
                         rng: np.random.Generator | None = None) -> ModulusEstimate:
    """Expected maximum eigenvalue modulus of the particle update.

    ``plug-in`` evaluates at the mean attraction ``(c1 + c2) / 2``;
    ``monte-carlo`` averages over the two uniform factors and reports the
    standard error of the estimate.
    """
    if mode == "plug-in":
        params = SecondOrderParams(omega, (c1 + c2) / 2.0, c1, c2)
        l1, l2 = particle_eigenvalues(params)
        return ModulusEstimate(max(abs(l1), abs(l2)), None, mode)
    if mode == "monte-carlo":
        if samples < 10_000:
            raise ConfigError("monte-carlo mode needs at least 10^4 samples")
        if rng is None:
            rng = RngStream(0, 0).generator()
        phi = c1 * rng.random(samples) + c2 * rng.random(samples)
        mods = _max_modulus_from_phi(omega, phi)
        return ModulusEstimate(float(mods.mean()),
                               float(mods.std(ddof=1) / math.sqrt(samples)),
                               mode, samples)
    raise ConfigError(f"unknown mode {mode!r}; expected plug-in or monte-carlo")


@dataclass(frozen=True)
class OrderMStat:
    """Windowed moment statistic of a scalar trajectory."""

    order: int
    window: int
    limit_estimate: float
    previous_window_mean: float
    drift: float
    threshold: float
    stabilized: bool


def order_m_stat(trajectory: np.ndarray, order: int, window: int,
                 threshold: float | None = None) -> OrderMStat:
    """Drift of the windowed mean of ``x(t)**order`` over the trajectory tail.

    The statistic compares the mean over the last ``window`` generations
    with the preceding window; the trajectory is declared stabilized when
    the drift magnitude falls below the threshold (by default ``1e-6``
    times the initial window's moment amplitude).
    """
    if order not in (1, 2, 3):
        raise ConfigError("order must be 1, 2 or 3")
    trajectory = np.asarray(trajectory, dtype=float)
    if trajectory.ndim != 1 or trajectory.size < 2 * window or window < 1:
        raise ConfigError("trajectory must be 1-D with length >= 2*window")
    powered = trajectory ** order
    last = float(powered[-window:].mean())
    prev = float(powered[-2 * window:-window].mean())
    drift = last - prev
    if threshold is None:
        threshold = 1e-6 * float(np.abs(powered[:window]).max())
    stabilized = abs(drift) < threshold if threshold > 0 else drift == 0.0
    return OrderMStat(order, window, last, prev, drift, threshold, stabilized)


@dataclass(frozen=True)
class BallVolume:
    value: float
    log_value: float


def ball_volume(delta: float, dim: int) -> BallVolume:
    """Volume of the ``dim``-ball of radius ``delta``, computed in log space
    so extreme dimensions neither overflow nor underflow."""
    if delta <= 0:
        raise ConfigError("delta must be positive")
    if dim < 1:
        raise ConfigError("dim must be >= 1")
    log_v = (math.log(2.0) + dim * math.log(delta) + (dim / 2.0) * math.log(math.pi)
             - math.log(dim) - math.lgamma(dim / 2.0))
    try:
        value = math.exp(log_v)
    except OverflowError:
        value = math.inf
    return BallVolume(value, log_v)


def _normalize_deltas(delta1: float, delta2: float) -> tuple[float, float]:
    if delta1 <= 0 or delta2 <= 0:
        raise ConfigError("delta1 and delta2 must be positive")
    return (delta1, delta2) if delta1 <= delta2 else (delta2, delta1)


def z_pdf_ldiw(delta1: float, delta2: float, z) -> np.ndarray | float:
    """Density of the summed attraction magnitude Z = D1 + D2 with
    D1 ~ U[0, delta1], D2 ~ U[0, delta2].

    The trapezoid rises on [0, d1], is flat on [d1, d2], and falls on
    [d2, d1 + d2]; it is normalized to integrate to 1.
    """
    d1, d2 = _normalize_deltas(delta1, delta2)
    z_arr = np.asarray(z, dtype=float)
    out = np.zeros_like(z_arr)
    rise = (z_arr >= 0) & (z_arr < d1)
    flat = (z_arr >= d1) & (z_arr <= d2)
    fall = (z_arr > d2) & (z_arr <= d1 + d2)
    out[rise] = z_arr[rise] / (d1 * d2)
    out[flat] = 1.0 / d2
    out[fall] = (d1 + d2 - z_arr[fall]) / (d1 * d2)
    return out if out.ndim else float(out)


def z_cdf_ldiw(delta1: float, delta2: float, z) -> np.ndarray | float:
    """Exact distribution function companion of :func:`z_pdf_ldiw`."""
    d1, d2 = _normalize_deltas(delta1, delta2)
    z_arr = np.asarray(z, dtype=float)
    out = np.zeros_like(z_arr)
    rise = (z_arr >= 0) & (z_arr < d1)
    flat = (z_arr >= d1) & (z_arr <= d2)
    fall = (z_arr > d2) & (z_arr < d1 + d2)
    out[rise] = z_arr[rise] ** 2 / (2.0 * d1 * d2)
    out[flat] = (z_arr[flat] - d1 / 2.0) / d2
    out[fall] = 1.0 - (d1 + d2 - z_arr[fall]) ** 2 / (2.0 * d1 * d2)
    out[z_arr >= d1 + d2] = 1.0
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class DiffUniformDist:
    """Distribution of X1 - X2 for X1, X2 uniform over a width-w support.

    ``pdf``/``cdf`` give the true triangular law on [-w, w]; the
    ``flat_*`` companions evaluate the constant-density form ``1/(2w)``
    kept only as a comparison curve.
    """

    width: float

    def pdf(self, z) -> np.ndarray | float:
        z_arr = np.asarray(z, dtype=float)
        w = self.width
        out = np.maximum(0.0, (w - np.abs(z_arr)) / (w * w))
        return out if out.ndim else float(out)

    def cdf(self, z) -> np.ndarray | float:
        z_arr = np.clip(np.asarray(z, dtype=float), -self.width, self.width)
        w = self.width
        out = np.where(z_arr <= 0,
                       (z_arr + w) ** 2 / (2.0 * w * w),
                       1.0 - (w - z_arr) ** 2 / (2.0 * w * w))
        return out if out.ndim else float(out)

    def flat_pdf(self, z) -> np.ndarray | float:
        z_arr = np.asarray(z, dtype=float)
        out = np.where(np.abs(z_arr) <= self.width, 1.0 / (2.0 * self.width), 0.0)
        return out if out.ndim else float(out)

    def flat_cdf(self, z) -> np.ndarray | float:
        z_arr = np.asarray(z, dtype=float)
        out = np.clip((z_arr + self.width) / (2.0 * self.width), 0.0, 1.0)
        return out if out.ndim else float(out)


def diff_uniform_dist(a: float, b: float) -> DiffUniformDist:
    """Difference-of-uniforms distribution for draws from ``U[a, b]``."""
    if not b > a:
        raise ConfigError("diff_uniform_dist needs b > a")
    return DiffUniformDist(b - a)


@dataclass
class DriftStat:
    """Replicate statistics of the best individual's per-generation movement
    along one coordinate."""

    dimension: int
    replicates: int
    mean: np.ndarray
    std: np.ndarray
    mean_abs: np.ndarray

    def __post_init__(self):
        if self.replicates < 2:
            raise ConfigError("drift statistics need at least 2 replicates")

    def window_mean_abs(self, frac_from: float, frac_to: float) -> float:
        """Mean absolute drift over a generation-fraction window."""
        g = self.mean_abs.size
        lo = int(frac_from * g)
        hi = max(lo + 1, int(frac_to * g))
        return float(self.mean_abs[lo:hi].mean())


def best_drift_stat(algorithm, function_id: str, dim: int, replicates: int,
                    generations: int, rng: RngStream, dimension: int = 0,
                    cfg: AlgoConfig | None = None) -> DriftStat:
    """Per-generation drift of the best-so-far position over seeded replicates.

    ``algorithm`` is an algorithm id or an :class:`~sdmc.algorithms.Algorithm`
    (the latter requires an explicit resolved ``cfg``).  Replicate ``r`` runs
    on sub-streams of ``rng``, so the statistic is reproducible.
    """
    if replicates < 2:
        raise ConfigError("best_drift_stat needs at least 2 replicates")
    if generations < 1:
        raise ConfigError("generations must be >= 1")
    if isinstance(algorithm, str):
        algo = algorithms.get_algorithm(algorithm)
        cfg = algorithms.resolve_config(algorithm, cfg or AlgoConfig(), dim)
    else:
        algo = algorithm
        if cfg is None:
            raise ConfigError("an Algorithm instance needs an explicit cfg")
    objective = benchmarks.get_objective(function_id, dim)

    deltas = np.empty((replicates, generations))
    for r in range(replicates):
        streams = RunStreams.from_stream(rng.substream(r))
        state = algo.init(objective, cfg, streams)
        prev = state.best_position[dimension]
        for t in range(generations):
            state = algo.step(state, objective, cfg, streams)
            cur = state.best_position[dimension]
            deltas[r, t] = cur - prev
            prev = cur
    return DriftStat(
        dimension=dimension,
        replicates=replicates,
        mean=deltas.mean(axis=0),
        std=deltas.std(axis=0, ddof=1),
        mean_abs=np.abs(deltas).mean(axis=0),
    )
