"""Temporal-difference learner configuration."""

from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings


class LearnerConfig(BaseSettings):
    """Exploration, trace and replay settings for the TD learners."""

    epsilon: float = Field(
        0.2,
        alias="LEARNER_EPSILON",
        ge=0.0,
        le=1.0,
        description="Exploration probability of the epsilon-greedy behavior policy"
    )

    trace_decay: float = Field(
        0.9,
        alias="LEARNER_TRACE_DECAY",
        gt=0.0,
        lt=1.0,
        description="Eligibility trace decay (lambda)"
    )

    trace_floor: float = Field(
        1e-6,
        alias="LEARNER_TRACE_FLOOR",
        ge=0.0,
        description="Traces below this weight are dropped from the sparse trace map"
    )

    learning_rate: Optional[float] = Field(
        None,
        alias="LEARNER_LEARNING_RATE",
        gt=0.0,
        le=1.0,
        description="Constant step size; unset means 1/k per visit count"
    )

    replay_preset: Literal["market", "classic"] = Field(
        "market",
        alias="LEARNER_REPLAY_PRESET",
        description="Replay parameterization: market (1000/400/100) or classic (40000/4000/1000)"
    )

    model_config = {
        "env_file": ".env",
        "env_prefix": "LEARNER_",
        "case_sensitive": False,
        "extra": "ignore",
        "populate_by_name": True,
    }
