"""Agent accounts and marginal private values."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


def draw_private_values(rng: np.random.Generator, count: int, std: float) -> np.ndarray:
    """
    Draw a background trader's marginal private values.

    count i.i.d. N(0, std^2) draws sorted descending, so the value of one more
    unit never increases with inventory. Entry j is the value of moving from
    inventory j - count/2 to j - count/2 + 1.
    """
    return np.sort(rng.normal(0.0, std, size=count))[::-1].copy()


def marginal_buy_value(values: np.ndarray, inventory: int, clamp: bool = False) -> Optional[float]:
    """Value of acquiring one more unit at this inventory; None past the vector edge."""
    half = len(values) // 2
    index = inventory + half
    if clamp:
        index = min(max(index, 0), len(values) - 1)
    elif not 0 <= index < len(values):
        return None
    return float(values[index])


def marginal_sell_value(values: np.ndarray, inventory: int, clamp: bool = False) -> Optional[float]:
    """Value of the unit given up when selling at this inventory; None past the vector edge."""
    half = len(values) // 2
    index = inventory - 1 + half
    if clamp:
        index = min(max(index, 0), len(values) - 1)
    elif not 0 <= index < len(values):
        return None
    return float(values[index])


def cumulative_private_value(values: np.ndarray, inventory: int) -> float:
    """Private value of holding this inventory, summed positionally from zero."""
    if len(values) == 0 or inventory == 0:
        return 0.0
    half = len(values) // 2
    if inventory > 0:
        return float(values[half:half + inventory].sum())
    return -float(values[half + inventory:half].sum())


@dataclass(slots=True)
class AgentAccount:
    """Inventory, cash and marginal private values of one agent."""

    inventory: int = 0
    cash: int = 0
    private_values: np.ndarray = field(default_factory=lambda: np.empty(0))

    def buy_value(self) -> Optional[float]:
        return marginal_buy_value(self.private_values, self.inventory)

    def sell_value(self) -> Optional[float]:
        return marginal_sell_value(self.private_values, self.inventory)

    def holding_value(self) -> float:
        return cumulative_private_value(self.private_values, self.inventory)

    def record_buy(self, price: int) -> None:
        self.inventory += 1
        self.cash -= price

    def record_sell(self, price: int) -> None:
        self.inventory -= 1
        self.cash += price

    def payoff(self, final_fundamental: float) -> float:
        """Cash plus inventory liquidated at the final fundamental plus held private value."""
        return self.cash + self.inventory * final_fundamental + self.holding_value()
