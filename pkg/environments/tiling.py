"""Discretization of market observations into tiles."""

import math
from bisect import bisect_right
from itertools import product
from typing import Iterator

import numpy as np

from market.accounts import marginal_buy_value, marginal_sell_value
from models.environment import Observation, TileConfig, Tiling


def surplus_features(obs: Observation) -> tuple[float, float]:
    """
    (surplusBuyAtAsk, surplusSellAtBid) for an observation.

    A missing quote gives -inf, the lowest surplus region. Marginal private
    values are clamped to the vector edge at extreme inventory.
    """
    values = np.asarray(obs.private_values, dtype=float)
    if obs.ask is None:
        buy = -math.inf
    else:
        buy = obs.r_hat + marginal_buy_value(values, obs.inventory, clamp=True) - obs.ask
    if obs.bid is None:
        sell = -math.inf
    else:
        sell = obs.bid - (obs.r_hat + marginal_sell_value(values, obs.inventory, clamp=True))
    return buy, sell


def region_index(thresholds: tuple[float, ...], value: float) -> int:
    """Index of the interval [t_{i-1}, t_i) holding value; 0 below the first threshold."""
    return bisect_right(thresholds, value)


def tile_id(tiling: Tiling, buy_region: int, sell_region: int, time_region: int) -> int:
    return (
        (buy_region * (len(tiling.sell_thresholds) + 1) + sell_region)
        * (len(tiling.time_thresholds) + 1)
        + time_region
    )


def discretize_point(tiling: Tiling, buy: float, sell: float, time_remaining: float) -> int:
    return tile_id(
        tiling,
        region_index(tiling.buy_thresholds, buy),
        region_index(tiling.sell_thresholds, sell),
        region_index(tiling.time_thresholds, time_remaining),
    )


def discretize(obs: Observation, tiling: Tiling) -> int:
    """Tile id of an observation in a single tiling."""
    buy, sell = surplus_features(obs)
    return discretize_point(tiling, buy, sell, obs.time_remaining)


def tile_keys(obs: Observation, config: TileConfig) -> tuple[int, ...]:
    """One tile id per tiling."""
    buy, sell = surplus_features(obs)
    return tuple(discretize_point(t, buy, sell, obs.time_remaining) for t in config.tilings)


def _representative(thresholds: tuple[float, ...], region: int, below: float) -> float:
    return below if region == 0 else thresholds[region - 1]


def refined_cells(config: TileConfig) -> Iterator[tuple[int, tuple[int, ...]]]:
    """
    Walk the common refinement of the tilings.

    Yields:
        (refinement tile id, per-tiling tile ids) for every refinement cell
    """
    refined = config.refinement()
    regions = product(
        range(len(refined.buy_thresholds) + 1),
        range(len(refined.sell_thresholds) + 1),
        range(len(refined.time_thresholds) + 1),
    )
    for b, s, t in regions:
        buy = _representative(refined.buy_thresholds, b, -math.inf)
        sell = _representative(refined.sell_thresholds, s, -math.inf)
        time_remaining = _representative(refined.time_thresholds, t, 0.0)
        yield (
            tile_id(refined, b, s, t),
            tuple(discretize_point(tiling, buy, sell, time_remaining) for tiling in config.tilings),
        )
