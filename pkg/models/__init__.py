"""Pydantic models shared across the simulator, learners and harness."""

from models.market import (
    EnvironmentPreset,
    MarketParams,
    MixtureComponent,
    MmParams,
    Side,
    StrategyMixture,
    ZiParams,
)
from models.environment import ActionKind, MarketAction, Mode, NOOP, Observation, TileConfig, Tiling
from models.policy import GreedyPolicy, PolicyHeader
from models.experiment import EvalReport, EvalRow, ExperimentConfig, LearnerKind
from models.games import GameData, MixedProfile, ProfileEntry, RoleSpec

__all__ = [
    "EnvironmentPreset",
    "MarketParams",
    "MixtureComponent",
    "MmParams",
    "Side",
    "StrategyMixture",
    "ZiParams",
    "ActionKind",
    "MarketAction",
    "Mode",
    "NOOP",
    "Observation",
    "TileConfig",
    "Tiling",
    "GreedyPolicy",
    "PolicyHeader",
    "EvalReport",
    "EvalRow",
    "ExperimentConfig",
    "LearnerKind",
    "GameData",
    "MixedProfile",
    "ProfileEntry",
    "RoleSpec",
]
