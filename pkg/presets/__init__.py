"""Strategy tables, environment presets, mixtures and benchmark constants."""

from presets.loader import (
    benchmark_constants,
    get_environment_preset,
    get_mixture,
    list_environment_presets,
    list_mixtures,
    load_strategy_tables,
    mm_strategies,
    standard_tile_config,
    zi_strategies,
)

__all__ = [
    "benchmark_constants",
    "get_environment_preset",
    "get_mixture",
    "list_environment_presets",
    "list_mixtures",
    "load_strategy_tables",
    "mm_strategies",
    "standard_tile_config",
    "zi_strategies",
]
