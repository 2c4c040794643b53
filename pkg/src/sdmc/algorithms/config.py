"""Algorithm configuration and per-algorithm defaults."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..core import ConfigError

ALGORITHM_IDS = (
    "ldiw-pso",
    "de",
    "gtde",
    "slpso",
    "gtpso",
    "gtpso-sigma",
    "partition-sampler",
)

DE_FAMILY = ("de", "gtde")
SLPSO_FAMILY = ("slpso", "gtpso", "gtpso-sigma")
GT_ALGORITHMS = ("gtde", "gtpso", "gtpso-sigma")

GT_TRIAL_MODES = ("joint", "per-dimension")


@dataclass(frozen=True)
class AlgoConfig:
    """Knobs for all seven algorithms; unused fields are ignored per id.

    ``pop_size`` of None resolves to the algorithm's default (30 for the DE
    family and the inertia-weight PSO, ``m_base + ceil(0.1*dim)`` for the
    social-learning family, 50 for the partition sampler).  Setting
    ``f_mean``/``f_std`` switches the DE scale factor from the constant
    ``f_const`` to per-individual Gaussian draws; gene-targeting DE defaults
    to Gaussian(0.7, 0.5).
    """

    pop_size: int | None = None
    # differential evolution
    f_const: float = 0.5
    f_mean: float | None = None
    f_std: float | None = None
    cr: float = 0.9
    # gene targeting
    p_m: float = 0.5
    bottleneck_mean: float = 0.1
    bottleneck_std: float = 0.01
    gt_trial_mode: str = "joint"
    # inertia-weight PSO
    c1: float = 2.0
    c2: float = 2.0
    omega_start: float = 0.9
    omega_end: float = 0.4
    t_max: int | None = None
    v_max: float | None = None
    v_max_fraction: float = 0.2
    # social-learning PSO family
    beta: float = 0.01
    m_base: int = 100
    mu: float = 0.5
    gt_omega: float = 0.4
    sigma: float = 0.1
    # partition sampler
    split_dim: int = 0
    split_fraction: float = 0.5


def default_pop_size(algorithm_id: str, dim: int, cfg: AlgoConfig) -> int:
    if algorithm_id in SLPSO_FAMILY:
        return cfg.m_base + math.ceil(0.1 * dim)
    if algorithm_id == "partition-sampler":
        return 50
    return 30


def resolve_config(algorithm_id: str, cfg: AlgoConfig, dim: int) -> AlgoConfig:
    """Fill algorithm-dependent defaults and validate the result."""
    if algorithm_id not in ALGORITHM_IDS:
        raise ConfigError(f"unknown algorithm id {algorithm_id!r}; known: {list(ALGORITHM_IDS)}")
    updates = {}
    if cfg.pop_size is None:
        updates["pop_size"] = default_pop_size(algorithm_id, dim, cfg)
    if algorithm_id == "gtde" and cfg.f_mean is None:
        updates["f_mean"] = 0.7
        updates["f_std"] = 0.5
    if updates:
        cfg = replace(cfg, **updates)
    validate_config(algorithm_id, cfg, dim)
    return cfg


def validate_config(algorithm_id: str, cfg: AlgoConfig, dim: int) -> None:
    if cfg.pop_size is not None and cfg.pop_size < 1:
        raise ConfigError("pop_size must be positive")
    if algorithm_id in DE_FAMILY:
        if cfg.pop_size is not None and cfg.pop_size < 4:
            raise ConfigError("DE variants need pop_size >= 4 (two distinct partners, best, current)")
        if not 0.0 <= cfg.cr <= 1.0:
            raise ConfigError("cr must lie in [0, 1]")
        if (cfg.f_mean is None) != (cfg.f_std is None):
            raise ConfigError("f_mean and f_std must be set together")
        if cfg.f_std is not None and cfg.f_std < 0:
            raise ConfigError("f_std must be non-negative")
    if algorithm_id in GT_ALGORITHMS:
        if not 0.0 <= cfg.p_m <= 1.0:
            raise ConfigError("p_m must lie in [0, 1]")
        if cfg.bottleneck_std < 0:
            raise ConfigError("bottleneck_std must be non-negative")
        if cfg.gt_trial_mode not in GT_TRIAL_MODES:
            raise ConfigError(f"gt_trial_mode must be one of {GT_TRIAL_MODES}")
    if algorithm_id == "ldiw-pso":
        if cfg.t_max is not None and cfg.t_max < 1:
            raise ConfigError("t_max must be >= 1")
        if cfg.v_max is not None and cfg.v_max <= 0:
            raise ConfigError("v_max must be positive")
        if cfg.v_max is None and cfg.v_max_fraction <= 0:
            raise ConfigError("v_max_fraction must be positive")
    if algorithm_id in SLPSO_FAMILY:
        if cfg.m_base < 1:
            raise ConfigError("m_base must be >= 1")
        if cfg.beta <= 0:
            raise ConfigError("beta must be positive")
    if algorithm_id == "gtpso-sigma" and cfg.sigma <= 0:
        raise ConfigError("constant-sigma gene targeting needs sigma > 0")
    if algorithm_id == "partition-sampler":
        if not 0.0 < cfg.split_fraction < 1.0:
            raise ConfigError("split_fraction must lie strictly inside (0, 1)")
        if not 0 <= cfg.split_dim < dim:
            raise ConfigError("split_dim out of range")
