"""Name registry for environments addressable from the command line."""

from typing import Callable, Dict, List, Optional

from config.logging_config import get_logger
from environments.base import GenerativeEnvironment
from environments.battleship import Battleship
from environments.gridworld import GridWorld
from environments.market_env import MarketEnvironment
from environments.rocksample import RockSample
from environments.sailing import Sailing
from exceptions import MarketConfigurationError
from models.environment import Mode
from presets.loader import get_environment_preset, get_mixture, list_environment_presets, standard_tile_config

# Setup logging
logger = get_logger(__name__)

MARKET_PREFIX = "market:"

# Central environment registry
_ENV_REGISTRY: Dict[str, Callable[[], GenerativeEnvironment]] = {}


def register_environment(name: str, factory: Callable[[], GenerativeEnvironment]) -> None:
    """
    Register a benchmark environment factory under a name.

    Args:
        name: Name used on the command line
        factory: Zero-argument constructor
    """
    if name in _ENV_REGISTRY:
        logger.warning(f"Environment '{name}' already registered. Overwriting.")
    _ENV_REGISTRY[name] = factory
    logger.debug(f"Registered environment: {name}")


def list_environments() -> List[str]:
    """Benchmark names plus one market:<preset> entry per environment preset."""
    return sorted(_ENV_REGISTRY) + [MARKET_PREFIX + p for p in list_environment_presets()]


def get_environment(
    name: str,
    mixture: Optional[str] = None,
    mode: Mode = Mode.NO_FLIP,
    tilings: int = 3,
) -> GenerativeEnvironment:
    """
    Build an environment by name.

    Args:
        name: gridworld, sailing, battleship, rocksample or market:<preset>
        mixture: Other-agent mixture preset (market environments only)
        mode: Self-agent mode (market environments only)
        tilings: 1 or 3 tilings (market environments only)

    Returns:
        A fresh environment instance

    Raises:
        KeyError: unknown benchmark name
        MarketConfigurationError: unknown or missing market preset or mixture
    """
    if name.startswith(MARKET_PREFIX):
        preset = get_environment_preset(name[len(MARKET_PREFIX):])
        if mixture is None:
            raise MarketConfigurationError(f"{name} needs a mixture preset")
        return MarketEnvironment(
            preset,
            get_mixture(mixture),
            mode=mode,
            tile_config=standard_tile_config(preset, tilings),
        )

    factory = _ENV_REGISTRY.get(name)
    if factory is None:
        raise KeyError(f"Unknown environment '{name}'. Available: {', '.join(list_environments())}")
    return factory()


def _register_all_environments() -> None:
    register_environment("gridworld", GridWorld)
    register_environment("sailing", Sailing)
    register_environment("battleship", Battleship)
    register_environment("rocksample", RockSample)


# Initialize registry on import
_register_all_environments()


if __name__ == "__main__":
    print("=" * 80)
    print("AVAILABLE ENVIRONMENTS")
    print("=" * 80)
    for env_name in list_environments():
        print(f"  - {env_name}")
