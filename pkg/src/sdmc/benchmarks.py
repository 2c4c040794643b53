"""Objective function suite with known optima.

Twelve classic functions spanning unimodal/multimodal and separable/
non-separable shapes, each on its conventional domain, all minimized with
optimum value 0.  Evaluation is pure and reentrant; evaluation counting is
the caller's job.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BoxDomain, ConfigError, RngStream

# Seed for the deterministic shift vector of shifted-sphere.
_SHIFT_SEED = 0x5D3C


@dataclass(frozen=True)
class ObjectiveSpec:
    """A benchmark function instance: id, dimension, domain and optimum."""

    id: str
    dim: int
    domain: BoxDomain
    optimum_position: np.ndarray
    optimum_value: float = 0.0
    shift: np.ndarray | None = None


def _sphere(spec, x):
    return np.sum(x * x, axis=-1)


def _shifted_sphere(spec, x):
    z = x - spec.shift
    return np.sum(z * z, axis=-1)


def _elliptic(spec, x):
    d = spec.dim
    expo = np.arange(d) / (d - 1) if d > 1 else np.zeros(1)
    return np.sum(10.0 ** (6.0 * expo) * x * x, axis=-1)


def _schwefel_1_2(spec, x):
    partial = np.cumsum(x, axis=-1)
    return np.sum(partial * partial, axis=-1)


def _rosenbrock(spec, x):
    a = x[..., :-1]
    b = x[..., 1:]
    return np.sum(100.0 * (b - a * a) ** 2 + (a - 1.0) ** 2, axis=-1)


def _rastrigin(spec, x):
    return 10.0 * spec.dim + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x), axis=-1)


def _ackley(spec, x):
    d = spec.dim
    root_mean_sq = np.sqrt(np.sum(x * x, axis=-1) / d)
    mean_cos = np.sum(np.cos(2.0 * np.pi * x), axis=-1) / d
    return -20.0 * np.exp(-0.2 * root_mean_sq) - np.exp(mean_cos) + 20.0 + np.e


def _griewank(spec, x):
    denom = np.sqrt(np.arange(1.0, spec.dim + 1.0))
    return np.sum(x * x, axis=-1) / 4000.0 - np.prod(np.cos(x / denom), axis=-1) + 1.0


_WEIERSTRASS_A = 0.5
_WEIERSTRASS_B = 3.0
_WEIERSTRASS_KMAX = 12  # truncated series keeps evaluation cheap


def _weierstrass_lite(spec, x):
    k = np.arange(_WEIERSTRASS_KMAX + 1)
    ak = _WEIERSTRASS_A ** k
    bk = _WEIERSTRASS_B ** k
    inner = np.sum(ak * np.cos(2.0 * np.pi * bk * (x[..., None] + 0.5)), axis=-1)
    # The constant uses the same series terms, so f(0) cancels exactly.
    const = np.sum(ak * np.cos(np.pi * bk))
    return np.sum(inner, axis=-1) - spec.dim * const


def _schaffer_f7(spec, x):
    a = x[..., :-1]
    b = x[..., 1:]
    s = np.sqrt(a * a + b * b)
    term = np.sqrt(s) * (np.sin(50.0 * s ** 0.2) + 1.0)
    return (np.sum(term, axis=-1) / (spec.dim - 1)) ** 2


def _step(spec, x):
    return np.sum(np.floor(x + 0.5) ** 2, axis=-1)


def _sum_of_different_powers(spec, x):
    powers = np.arange(2.0, spec.dim + 2.0)
    return np.sum(np.abs(x) ** powers, axis=-1)


# id -> (evaluator, conventional half-width of the symmetric domain)
_FUNCTIONS = {
    "sphere": (_sphere, 100.0),
    "elliptic": (_elliptic, 100.0),
    "schwefel-1.2": (_schwefel_1_2, 100.0),
    "rosenbrock": (_rosenbrock, 30.0),
    "rastrigin": (_rastrigin, 5.12),
    "ackley": (_ackley, 32.0),
    "griewank": (_griewank, 600.0),
    "weierstrass-lite": (_weierstrass_lite, 0.5),
    "schaffer-f7": (_schaffer_f7, 100.0),
    "step": (_step, 100.0),
    "sum-of-different-powers": (_sum_of_different_powers, 1.0),
    "shifted-sphere": (_shifted_sphere, 100.0),
}

SUITE_IDS = tuple(_FUNCTIONS)

# Functions whose only minimum is the global one (used by property tests).
UNIMODAL_IDS = ("sphere", "elliptic", "schwefel-1.2", "sum-of-different-powers",
                "shifted-sphere")

_PAIRWISE_IDS = ("rosenbrock", "schaffer-f7")


def get_objective(function_id: str, dim: int) -> ObjectiveSpec:
    """Build the named objective at the given dimension."""
    if function_id not in _FUNCTIONS:
        raise ConfigError(f"unknown function id {function_id!r}; known: {sorted(_FUNCTIONS)}")
    if dim < 1:
        raise ConfigError("dim must be a positive integer")
    if dim < 2 and function_id in _PAIRWISE_IDS:
        raise ConfigError(f"{function_id} is defined on consecutive coordinate pairs; dim >= 2 required")
    half = _FUNCTIONS[function_id][1]
    domain = BoxDomain.cube(dim, -half, half)
    shift = None
    optimum = np.zeros(dim)
    if function_id == "shifted-sphere":
        shift = RngStream(_SHIFT_SEED, dim).generator().uniform(-half / 2.0, half / 2.0, dim)
        optimum = shift
    elif function_id == "rosenbrock":
        optimum = np.ones(dim)
    return ObjectiveSpec(function_id, dim, domain, optimum, 0.0, shift)


def evaluate(spec: ObjectiveSpec, x: np.ndarray) -> float:
    """Objective value at a single position."""
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.dim,):
        raise ConfigError(f"position shape {x.shape} does not match dim {spec.dim}")
    return float(_FUNCTIONS[spec.id][0](spec, x))


def evaluate_batch(spec: ObjectiveSpec, points: np.ndarray) -> np.ndarray:
    """Objective values for a stack of positions, one row per individual."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != spec.dim:
        raise ConfigError(f"batch shape {points.shape} does not match dim {spec.dim}")
    return np.asarray(_FUNCTIONS[spec.id][0](spec, points), dtype=float)


def suite(dim: int = 30) -> list[ObjectiveSpec]:
    """All twelve benchmark functions at the given dimension."""
    return [get_objective(fid, dim) for fid in SUITE_IDS]
