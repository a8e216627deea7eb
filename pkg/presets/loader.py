"""Loaders for the shipped strategy tables, environment presets and benchmark constants."""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from config.logging_config import get_logger
from exceptions import MarketConfigurationError
from models.environment import TileConfig, Tiling
from models.market import EnvironmentPreset, MmParams, StrategyMixture, ZiParams

# Setup logging
logger = get_logger(__name__)

PRESET_DIR = Path(__file__).parent

# Published mixture weights are rounded to four places; anything further off is a data error
PUBLISHED_ROUNDING = 0.02


class TilingSpec(BaseModel):
    surplus_thresholds: list[float]
    time_splits: int = Field(..., ge=1)


class StrategyTables(BaseModel):
    """Parsed contents of strategy_tables.json."""

    zi_strategies: list[ZiParams]
    mm_strategies: list[MmParams]
    mixtures: list[StrategyMixture]
    environments: list[EnvironmentPreset]
    surplus_thresholds: list[float]
    three_tilings: list[TilingSpec]


def normalize_published_weights(mixture: dict[str, Any]) -> dict[str, Any]:
    """
    Rescale a mixture whose probabilities miss 1 only by publication rounding.

    Args:
        mixture: Raw mixture mapping with a "background" component list

    Returns:
        The mixture with probabilities summing to 1 (unchanged if they already do)
    """
    total = sum(component["probability"] for component in mixture["background"])
    if total == 1.0 or abs(total - 1.0) > PUBLISHED_ROUNDING:
        return mixture

    logger.warning(f"Mixture '{mixture['name']}' weights sum to {total:.4f}; renormalizing")
    background = [
        {**component, "probability": component["probability"] / total}
        for component in mixture["background"]
    ]
    return {**mixture, "background": background}


@lru_cache()
def load_strategy_tables(path: Path | None = None) -> StrategyTables:
    """
    Load and validate the strategy tables file.

    Args:
        path: Alternate tables file (default: the shipped strategy_tables.json)

    Returns:
        Validated StrategyTables
    """
    path = path or PRESET_DIR / "strategy_tables.json"
    raw = json.loads(Path(path).read_text())
    raw["mixtures"] = [normalize_published_weights(m) for m in raw["mixtures"]]
    tables = StrategyTables.model_validate(raw)
    logger.debug(
        f"Loaded {len(tables.zi_strategies)} ZI, {len(tables.mm_strategies)} MM strategies, "
        f"{len(tables.mixtures)} mixtures from {path}"
    )
    return tables


def zi_strategies() -> list[ZiParams]:
    return list(load_strategy_tables().zi_strategies)


def mm_strategies() -> list[MmParams]:
    return list(load_strategy_tables().mm_strategies)


def list_mixtures() -> list[str]:
    return [m.name for m in load_strategy_tables().mixtures]


def list_environment_presets() -> list[str]:
    return [e.name for e in load_strategy_tables().environments]


def get_mixture(name: str) -> StrategyMixture:
    for mixture in load_strategy_tables().mixtures:
        if mixture.name == name:
            return mixture
    raise MarketConfigurationError(f"Unknown mixture '{name}'. Available: {', '.join(list_mixtures())}")


def get_environment_preset(name: str) -> EnvironmentPreset:
    for preset in load_strategy_tables().environments:
        if preset.name == name:
            return preset
    raise MarketConfigurationError(
        f"Unknown environment preset '{name}'. Available: {', '.join(list_environment_presets())}"
    )


def standard_tile_config(preset: EnvironmentPreset, tilings: int = 1) -> TileConfig:
    """
    Build the 1-tiling (324 tiles) or 3-tiling configuration for a preset.

    The three tilings refine to exactly the single-tiling partition.
    """
    tables = load_strategy_tables()
    if tilings == 1:
        thresholds = tuple(tables.surplus_thresholds)
        return TileConfig(tilings=(
            Tiling(
                buy_thresholds=thresholds,
                sell_thresholds=thresholds,
                time_thresholds=tuple(float(t) for t in preset.time_thresholds),
            ),
        ))
    if tilings == 3:
        return TileConfig(tilings=tuple(
            Tiling(
                buy_thresholds=tuple(layout.surplus_thresholds),
                sell_thresholds=tuple(layout.surplus_thresholds),
                time_thresholds=tuple(preset.horizon * j / layout.time_splits for j in range(1, layout.time_splits)),
            )
            for layout in tables.three_tilings
        ))
    raise MarketConfigurationError(f"Supported tiling counts are 1 and 3, got {tilings}")


@lru_cache()
def benchmark_constants(name: str) -> dict[str, Any]:
    """Frozen constants for one benchmark environment from benchmarks.json."""
    data = json.loads((PRESET_DIR / "benchmarks.json").read_text())
    if name not in data:
        raise KeyError(f"No benchmark constants for '{name}'. Available: {', '.join(data)}")
    return data[name]
