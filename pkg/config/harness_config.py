"""Experiment harness configuration."""

from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings


DEFAULT_CHECKPOINTS = [40, 70, 100, 400, 700, 1000, 4000, 7000, 10000, 40000, 70000, 100000]


class HarnessConfig(BaseSettings):
    """Evaluation, bootstrap and output settings."""

    eval_runs: int = Field(
        10_000,
        alias="HARNESS_EVAL_RUNS",
        ge=1,
        description="Evaluation runs per checkpoint (split across replicas)"
    )

    replicas: int = Field(
        10,
        alias="HARNESS_REPLICAS",
        ge=1,
        description="Independent training replicas per experiment"
    )

    bootstrap_resamples: int = Field(
        1000,
        alias="HARNESS_BOOTSTRAP_RESAMPLES",
        ge=1,
        description="Resample means per bootstrap confidence interval"
    )

    confidence_level: float = Field(
        0.95,
        alias="HARNESS_CONFIDENCE_LEVEL",
        gt=0.0,
        lt=1.0,
        description="Bootstrap confidence level"
    )

    checkpoints: list[int] = Field(
        default_factory=lambda: list(DEFAULT_CHECKPOINTS),
        alias="HARNESS_CHECKPOINTS",
        description="Training-run counts at which greedy policies are recorded"
    )

    output_dir: Path = Field(
        Path("results"),
        alias="HARNESS_OUTPUT_DIR",
        description="Directory for CSV reports, manifests and policy files"
    )

    workers: int = Field(
        1,
        alias="HARNESS_WORKERS",
        ge=1,
        description="Worker processes for evaluation fan-out"
    )

    master_seed: int = Field(
        0,
        alias="HARNESS_MASTER_SEED",
        ge=0,
        description="Root seed for every derived RNG stream"
    )

    log_level: str = Field(
        "INFO",
        alias="LOG_LEVEL",
        description="Minimum log level for console and file sinks"
    )

    model_config = {
        "env_file": ".env",
        "env_prefix": "HARNESS_",
        "case_sensitive": False,
        "extra": "ignore",
        "populate_by_name": True,
    }
