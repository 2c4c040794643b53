"""Experiment configuration and its JSON form.

Top-level keys: ``algorithm`` (id string or object with ``id`` plus
algorithm parameters), ``function``, ``dim``, ``budget``, ``runs``,
``seed``, ``instrument``, ``output``.  Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

from .. import benchmarks
from ..algorithms import AlgoConfig, resolve_config
from ..core import ConfigError

_SNAPSHOT_DEFAULT = (7, 9, 99)


@dataclass(frozen=True)
class InstrumentConfig:
    """What to record per run beyond the best-fitness curve."""

    scope_trace: bool = False
    positions: bool = False
    std: bool = False
    std_dim: int = 0
    snapshots: tuple[int, ...] = _SNAPSHOT_DEFAULT


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm_id: str
    function_id: str
    dim: int
    budget: int
    seed: int
    runs: int = 30
    algo: AlgoConfig = field(default_factory=AlgoConfig)
    instrument: InstrumentConfig = field(default_factory=InstrumentConfig)
    output: str | None = None

    def resolved_algo(self) -> AlgoConfig:
        cfg = resolve_config(self.algorithm_id, self.algo, self.dim)
        if self.algorithm_id == "ldiw-pso" and cfg.t_max is None:
            steps = max(1, (self.budget - cfg.pop_size) // cfg.pop_size)
            cfg = dataclasses.replace(cfg, t_max=steps)
        return cfg

    def validate(self) -> None:
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.dim < 1:
            raise ConfigError("dim must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        benchmarks.get_objective(self.function_id, self.dim)
        cfg = self.resolved_algo()
        if self.budget < cfg.pop_size:
            raise ConfigError(
                f"budget {self.budget} cannot evaluate one generation of "
                f"{cfg.pop_size} individuals")


def _build_dataclass(cls, data: dict, context: str):
    known = {f.name: f for f in dataclasses.fields(cls)}
    unknown = set(data) - set(known)
    if unknown:
        raise ConfigError(f"unknown {context} keys: {sorted(unknown)}")
    kwargs = {}
    for key, value in data.items():
        if key == "snapshots":
            value = tuple(int(v) for v in value)
        kwargs[key] = value
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"bad {context} value: {exc}") from None


def config_from_dict(data: dict) -> ExperimentConfig:
    if not isinstance(data, dict):
        raise ConfigError("experiment config must be a JSON object")
    required = {"algorithm", "function", "dim", "budget", "seed"}
    allowed = required | {"runs", "instrument", "output"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = required - set(data)
    if missing:
        raise ConfigError(f"missing config keys: {sorted(missing)}")

    algorithm = data["algorithm"]
    if isinstance(algorithm, str):
        algorithm_id, algo_cfg = algorithm, AlgoConfig()
    elif isinstance(algorithm, dict):
        if "id" not in algorithm:
            raise ConfigError("algorithm object needs an 'id' key")
        params = {k: v for k, v in algorithm.items() if k != "id"}
        algorithm_id = algorithm["id"]
        algo_cfg = _build_dataclass(AlgoConfig, params, "algorithm parameter")
    else:
        raise ConfigError("algorithm must be an id string or an object")

    instrument = _build_dataclass(InstrumentConfig, data.get("instrument", {}),
                                  "instrument")
    config = ExperimentConfig(
        algorithm_id=algorithm_id,
        function_id=data["function"],
        dim=int(data["dim"]),
        budget=int(data["budget"]),
        seed=int(data["seed"]),
        runs=int(data.get("runs", 30)),
        algo=algo_cfg,
        instrument=instrument,
        output=data.get("output"),
    )
    config.validate()
    return config


def config_to_dict(config: ExperimentConfig) -> dict:
    algo = {"id": config.algorithm_id}
    defaults = AlgoConfig()
    for f in dataclasses.fields(AlgoConfig):
        value = getattr(config.algo, f.name)
        if value != getattr(defaults, f.name):
            algo[f.name] = value
    instrument = dataclasses.asdict(config.instrument)
    instrument["snapshots"] = list(config.instrument.snapshots)
    return {
        "algorithm": algo,
        "function": config.function_id,
        "dim": config.dim,
        "budget": config.budget,
        "runs": config.runs,
        "seed": config.seed,
        "instrument": instrument,
        "output": config.output,
    }


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    return config_from_dict(data)


def save_config(config: ExperimentConfig, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(config_to_dict(config), fh, indent=2, sort_keys=True)
        fh.write("\n")
