"""Generative environments: the market adapter and the benchmark suite."""

from environments.base import EnvSample, GenerativeEnvironment, PolicyCell
from environments.battleship import Battleship
from environments.gridworld import GridWorld
from environments.market_env import MarketEnvironment, action_to_order, reward_increment
from environments.registry import get_environment, list_environments, register_environment
from environments.rocksample import RockSample
from environments.sailing import Sailing
from environments.tiling import discretize, surplus_features, tile_keys

__all__ = [
    "EnvSample",
    "GenerativeEnvironment",
    "PolicyCell",
    "Battleship",
    "GridWorld",
    "MarketEnvironment",
    "action_to_order",
    "reward_increment",
    "get_environment",
    "list_environments",
    "register_environment",
    "RockSample",
    "Sailing",
    "discretize",
    "surplus_features",
    "tile_keys",
]
