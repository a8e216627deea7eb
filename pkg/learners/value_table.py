"""Tabular action values over (possibly several) tilings."""

from collections import defaultdict
from typing import Hashable, Optional, Sequence

import numpy as np


class ValueTable:
    """
    Action values and visit counts keyed by (feature key, action).

    A state is represented by one feature key per tiling; its value is the
    mean over those keys. Updates move every tiling's entry towards the same
    target with step alpha = 1/k (k counted per entry) unless a constant
    learning rate is set. Unvisited entries are 0.
    """

    def __init__(self, learning_rate: Optional[float] = None):
        self.learning_rate = learning_rate
        self._values: dict[tuple[Hashable, Hashable], float] = defaultdict(float)
        self._counts: dict[tuple[Hashable, Hashable], int] = defaultdict(int)

    def __len__(self) -> int:
        return len(self._values)

    def entry(self, key: Hashable, action: Hashable) -> float:
        return self._values.get((key, action), 0.0)

    def visits(self, key: Hashable, action: Hashable) -> int:
        return self._counts.get((key, action), 0)

    def value(self, keys: Sequence[Hashable], action: Hashable) -> float:
        """Mean over tilings of the stored values."""
        if len(keys) == 1:
            return self._values.get((keys[0], action), 0.0)
        return sum(self._values.get((k, action), 0.0) for k in keys) / len(keys)

    def values(self, keys: Sequence[Hashable], actions: Sequence[Hashable]) -> np.ndarray:
        return np.array([self.value(keys, a) for a in actions], dtype=float)

    def max_value(self, keys: Sequence[Hashable], actions: Sequence[Hashable]) -> float:
        return max(self.value(keys, a) for a in actions)

    def step_size(self, key: Hashable, action: Hashable) -> float:
        if self.learning_rate is not None:
            return self.learning_rate
        count = self._counts.get((key, action), 0)
        return 1.0 / count if count else 1.0

    def update(
        self,
        keys: Sequence[Hashable],
        action: Hashable,
        target: float,
        weight: float = 1.0,
        visit: bool = True,
    ) -> None:
        """
        Blend every tiling's entry towards target.

        Args:
            keys: Feature keys of the state, one per tiling
            action: Action taken
            target: TD target
            weight: Extra factor on the step size (an eligibility trace)
            visit: Count this as a visit of the entries before computing alpha
        """
        for key in keys:
            entry = (key, action)
            if visit:
                self._counts[entry] += 1
            step = self.step_size(key, action) * weight
            current = self._values[entry]
            self._values[entry] = current + step * (target - current)
