"""Experience replay for Q-learning."""

from dataclasses import dataclass
from typing import Hashable

import numpy as np

from learners.td import q_update
from learners.value_table import ValueTable


@dataclass(frozen=True, slots=True)
class Transition:
    keys: tuple[Hashable, ...]
    action: Hashable
    reward: float
    next_keys: tuple[Hashable, ...]
    next_actions: tuple[Hashable, ...]
    terminal: bool


@dataclass(frozen=True, slots=True)
class ReplayPreset:
    capacity: int
    batch_size: int
    runs_between: int


REPLAY_PRESETS: dict[str, ReplayPreset] = {
    "market": ReplayPreset(capacity=1000, batch_size=400, runs_between=100),
    "classic": ReplayPreset(capacity=40_000, batch_size=4000, runs_between=1000),
}


class ReplayBuffer:
    """Drop-out queue of transitions: once full, each insert evicts the oldest."""

    def __init__(self, capacity: int, batch_size: int, runs_between: int):
        if capacity < 1 or batch_size < 1 or runs_between < 1:
            raise ValueError("Replay capacity, batch size and interval must be positive")
        self.capacity = capacity
        self.batch_size = batch_size
        self.runs_between = runs_between
        self._items: list[Transition] = []
        self._oldest = 0

    @classmethod
    def from_preset(cls, name: str) -> "ReplayBuffer":
        preset = REPLAY_PRESETS[name]
        return cls(preset.capacity, preset.batch_size, preset.runs_between)

    def __len__(self) -> int:
        return len(self._items)

    def add(self, transition: Transition) -> None:
        if len(self._items) < self.capacity:
            self._items.append(transition)
            return
        self._items[self._oldest] = transition
        self._oldest = (self._oldest + 1) % self.capacity

    def transitions(self) -> list[Transition]:
        """Stored transitions, oldest first."""
        return self._items[self._oldest:] + self._items[:self._oldest]

    def sample(self, rng: np.random.Generator) -> list[Transition]:
        """A batch drawn uniformly with replacement."""
        if not self._items:
            return []
        return [self._items[i] for i in rng.integers(len(self._items), size=self.batch_size)]


def replay_step(
    buffer: ReplayBuffer,
    table: ValueTable,
    rng: np.random.Generator,
    discount: float = 1.0,
) -> ValueTable:
    """Replay one batch through q_update, bootstrapping from the table as it is now."""
    for t in buffer.sample(rng):
        q_update(table, t.keys, t.action, t.reward, t.next_keys, t.next_actions, t.terminal, discount)
    return table
