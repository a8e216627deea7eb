"""Tree-search planner configuration."""

from pydantic import Field
from pydantic_settings import BaseSettings


class PlannerConfig(BaseSettings):
    """Defaults for POMCP / UCT planning."""

    playouts_per_action: int = Field(
        100,
        alias="PLANNER_PLAYOUTS_PER_ACTION",
        ge=1,
        description="Simulations per root action at each real decision"
    )

    min_states: int = Field(
        100,
        alias="PLANNER_MIN_STATES",
        ge=1,
        description="Particle floor per belief node"
    )

    max_particles: int = Field(
        1000,
        alias="PLANNER_MAX_PARTICLES",
        ge=1,
        description="Particles stored per node during search"
    )

    exploration_constant: float = Field(
        1.0,
        alias="PLANNER_EXPLORATION_CONSTANT",
        ge=0.0,
        description="UCB1 exploration constant (multiplies the reward range)"
    )

    warmup_rollouts: int = Field(
        1000,
        alias="PLANNER_WARMUP_ROLLOUTS",
        ge=0,
        description="Random rollouts used to estimate the reward range"
    )

    attempt_factor: int = Field(
        10_000,
        alias="PLANNER_ATTEMPT_FACTOR",
        ge=1,
        description="Rejection-sampling attempt cap as a multiple of min_states"
    )

    max_depth: int = Field(
        1000,
        alias="PLANNER_MAX_DEPTH",
        ge=1,
        description="Search and rollout depth limit"
    )

    prior_runs: int = Field(
        200,
        alias="PLANNER_PRIOR_RUNS",
        ge=1,
        description="Equilibrium-mixture runs averaged for the default market value prior"
    )

    model_config = {
        "env_file": ".env",
        "env_prefix": "PLANNER_",
        "case_sensitive": False,
        "extra": "ignore",
        "populate_by_name": True,
    }
