"""Models for experiment configuration and evaluation reports."""

from enum import Enum
from typing import ClassVar, Literal, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config.harness_config import DEFAULT_CHECKPOINTS
from models.environment import Mode


class LearnerKind(str, Enum):
    Q_LEARNING = "q"
    SARSA = "sarsa"
    SARSA_LAMBDA = "sarsa_lambda"
    Q_REPLAY = "q_replay"


class ExperimentConfig(BaseModel):
    """Everything needed to reproduce one training experiment."""

    model_config = ConfigDict(frozen=True)

    environment: str = Field(..., description="Environment name, e.g. market:A-1k or gridworld")
    mixture: Optional[str] = Field(None, description="Other-agent mixture preset for market environments")
    mode: Mode = Mode.NO_FLIP
    learner: LearnerKind = LearnerKind.SARSA_LAMBDA
    tilings: Literal[1, 3] = 3

    epsilon: float = Field(0.2, ge=0.0, le=1.0)
    trace_decay: float = Field(0.9, gt=0.0, lt=1.0)
    learning_rate: Optional[float] = Field(None, gt=0.0, le=1.0)
    replay_preset: Literal["market", "classic"] = "market"

    checkpoints: list[int] = Field(default_factory=lambda: list(DEFAULT_CHECKPOINTS))
    eval_runs: int = Field(10_000, ge=1, description="Evaluation runs per checkpoint across replicas")
    replicas: int = Field(10, ge=1)
    master_seed: int = Field(0, ge=0)

    bootstrap_resamples: int = Field(1000, ge=1)
    confidence_level: float = Field(0.95, gt=0.0, lt=1.0)
    workers: int = Field(1, ge=1)

    @field_validator("checkpoints")
    @classmethod
    def _ascending(cls, checkpoints: list[int]) -> list[int]:
        if any(c < 0 for c in checkpoints):
            raise ValueError("Checkpoint run counts must be non-negative")
        if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
            raise ValueError(f"Checkpoint schedule must be strictly ascending: {checkpoints}")
        return checkpoints

    @model_validator(mode="after")
    def _market_needs_mixture(self) -> "ExperimentConfig":
        if self.environment.startswith("market:") and self.mixture is None:
            raise ValueError(f"{self.environment} requires a mixture preset")
        return self

    @property
    def training_runs(self) -> int:
        return self.checkpoints[-1] if self.checkpoints else 0


class EvalRow(BaseModel):
    """Sample mean payoff of one evaluated policy or baseline, with its CI."""

    model_config = ConfigDict(frozen=True)

    label: str
    checkpoint_runs: Optional[int] = None
    mean: float
    ci_lo: float
    ci_hi: float
    n: int = Field(..., ge=1)
    seed: int
    baseline: bool = False

    @model_validator(mode="after")
    def _ordered(self) -> "EvalRow":
        if not self.ci_lo <= self.mean <= self.ci_hi:
            raise ValueError(f"CI [{self.ci_lo}, {self.ci_hi}] does not contain mean {self.mean}")
        return self


class EvalReport(BaseModel):
    """Learning curve plus baseline rows for one experiment."""

    experiment: str
    rows: list[EvalRow] = Field(default_factory=list)

    COLUMNS: ClassVar[tuple[str, ...]] = ("label", "checkpoint_runs", "mean", "ci_lo", "ci_hi", "n", "seed", "baseline")

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([row.model_dump() for row in self.rows], columns=list(self.COLUMNS))
        frame["checkpoint_runs"] = frame["checkpoint_runs"].astype("Int64")
        return frame

    def learning_curve(self) -> list[EvalRow]:
        return [row for row in self.rows if not row.baseline]

    def baselines(self) -> list[EvalRow]:
        return [row for row in self.rows if row.baseline]
