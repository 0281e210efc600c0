"""Run configuration: a flat key-value file merged with CLI overrides."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

from .errors import ConfigError, InputError
from .objective import LossParams, RELEVANCE_MODES
from .solver import SolverConfig, THRESHOLD_MODES
from .distances import PHI1_MODES
from .evaluation import METRIC_MODES

WORKERS_ENV = "QUERYSUM_WORKERS"


@dataclass
class RunConfig:
    """Everything a pipeline run needs; field names double as file keys."""

    lambda1: float = 1.0
    lambda2: float = 1.0
    alpha: float = 0.7
    shot_length_s: float = 5.0
    threshold_mode: str = "paper_stddev"
    k: float = 0.0
    phi1_mode: str = "count_diff"
    metric_mode: str = "weight_sum"
    relevance_mode: str = "similarity"
    solver_max_iters: int = 100
    solver_tol: float = 1e-6
    solver_init: float = 0.5
    video_duration_s: float | None = None
    detections: str | None = None
    frames_dir: str | None = None
    masks_dir: str | None = None
    query_image: str | None = None
    query_mask: str | None = None
    query_detections: str | None = None
    ground_truth: str | None = None
    alias_table: str | None = None
    output_dir: str | None = None

    def __post_init__(self):
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise ConfigError("lambda1 and lambda2 must be nonnegative")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.shot_length_s <= 0:
            raise ConfigError(f"shot_length_s must be positive, got {self.shot_length_s}")
        if self.threshold_mode not in THRESHOLD_MODES:
            raise ConfigError(f"threshold_mode must be one of {THRESHOLD_MODES}")
        if self.phi1_mode not in PHI1_MODES:
            raise ConfigError(f"phi1_mode must be one of {PHI1_MODES}")
        if self.metric_mode not in METRIC_MODES:
            raise ConfigError(f"metric_mode must be one of {METRIC_MODES}")
        if self.relevance_mode not in RELEVANCE_MODES:
            raise ConfigError(f"relevance_mode must be one of {RELEVANCE_MODES}")
        if self.video_duration_s is not None and self.video_duration_s <= 0:
            raise ConfigError("video_duration_s must be positive when given")

    def loss_params(self) -> LossParams:
        return LossParams(lambda1=self.lambda1, lambda2=self.lambda2)

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            max_iters=self.solver_max_iters, tol=self.solver_tol, init=self.solver_init
        )

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def load_config(path: str | os.PathLike | None = None, overrides: dict | None = None) -> RunConfig:
    """Build a RunConfig from an optional JSON file plus overrides.

    Override values of None mean "not set on the command line" and leave
    the file (or default) value in place. Unknown keys are rejected.
    """
    values: dict = {}
    valid = {f.name for f in dataclasses.fields(RunConfig)}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                file_values = json.load(fh)
        except FileNotFoundError as exc:
            raise InputError(f"config file not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ConfigError("config file must hold a flat JSON object")
        unknown = set(file_values) - valid
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(file_values)
    for key, val in (overrides or {}).items():
        if key not in valid:
            raise ConfigError(f"unknown config key: {key}")
        if val is not None:
            values[key] = val
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(f"bad config value: {exc}") from exc


def worker_count() -> int:
    """Worker-pool size from the environment, defaulting to the CPU count."""
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        count = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from exc
    if count < 1:
        raise ConfigError(f"{WORKERS_ENV} must be >= 1, got {count}")
    return count
