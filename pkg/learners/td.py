"""Q-learning, Sarsa and Sarsa(lambda) updates and the epsilon-greedy behavior policy."""

from typing import Hashable, Optional, Sequence

import numpy as np

from learners.value_table import ValueTable


def epsilon_greedy(values: Sequence[float], epsilon: float, rng: np.random.Generator) -> int:
    """
    Index of the chosen action.

    Uniform over all actions with probability epsilon, otherwise an argmax,
    ties broken uniformly at random.
    """
    values = np.asarray(values, dtype=float)
    if epsilon > 0.0 and rng.random() < epsilon:
        return int(rng.integers(len(values)))
    best = np.flatnonzero(values == values.max())
    return int(best[0] if len(best) == 1 else rng.choice(best))


def q_target(
    table: ValueTable,
    reward: float,
    next_keys: Sequence[Hashable],
    next_actions: Sequence[Hashable],
    terminal: bool,
    discount: float = 1.0,
) -> float:
    if terminal or not next_actions:
        return reward
    return reward + discount * table.max_value(next_keys, next_actions)


def sarsa_target(
    table: ValueTable,
    reward: float,
    next_keys: Sequence[Hashable],
    next_action: Optional[Hashable],
    terminal: bool,
    discount: float = 1.0,
) -> float:
    if terminal or next_action is None:
        return reward
    return reward + discount * table.value(next_keys, next_action)


def q_update(
    table: ValueTable,
    keys: Sequence[Hashable],
    action: Hashable,
    reward: float,
    next_keys: Sequence[Hashable],
    next_actions: Sequence[Hashable],
    terminal: bool,
    discount: float = 1.0,
) -> ValueTable:
    """Q(s,a) <- (1 - alpha) Q(s,a) + alpha (R + gamma max_a' Q(s',a')); terminal uses R."""
    table.update(keys, action, q_target(table, reward, next_keys, next_actions, terminal, discount))
    return table


def sarsa_update(
    table: ValueTable,
    keys: Sequence[Hashable],
    action: Hashable,
    reward: float,
    next_keys: Sequence[Hashable],
    next_action: Optional[Hashable],
    terminal: bool,
    discount: float = 1.0,
) -> ValueTable:
    """Q(s,a) <- (1 - alpha) Q(s,a) + alpha (R + gamma Q(s',a'))."""
    table.update(keys, action, sarsa_target(table, reward, next_keys, next_action, terminal, discount))
    return table


class TraceSet:
    """Sparse eligibility weights per (state keys, action) pair."""

    def __init__(self, floor: float = 1e-6):
        self.floor = floor
        self._weights: dict[tuple[tuple[Hashable, ...], Hashable], float] = {}

    def __len__(self) -> int:
        return len(self._weights)

    def __iter__(self):
        return iter(self._weights.items())

    def weight(self, keys: Sequence[Hashable], action: Hashable) -> float:
        return self._weights.get((tuple(keys), action), 0.0)

    def reset(self) -> None:
        self._weights.clear()

    def visit(self, keys: Sequence[Hashable], action: Hashable) -> None:
        self._weights[(tuple(keys), action)] = 1.0

    def decay(self, factor: float) -> None:
        self._weights = {pair: w * factor for pair, w in self._weights.items() if w * factor >= self.floor}


def sarsa_lambda_step(
    table: ValueTable,
    traces: TraceSet,
    keys: Sequence[Hashable],
    action: Hashable,
    reward: float,
    next_keys: Sequence[Hashable],
    next_action: Optional[Hashable],
    terminal: bool,
    trace_decay: float,
    discount: float = 1.0,
) -> tuple[ValueTable, TraceSet]:
    """
    One Sarsa(lambda) transition.

    The visited pair's trace is set to 1, then every traced pair moves towards
    the transition's target R + gamma Q(s',a') with step alpha times its
    trace, and finally all traces decay by gamma * lambda.
    """
    target = sarsa_target(table, reward, next_keys, next_action, terminal, discount)
    visited = (tuple(keys), action)
    traces.visit(keys, action)
    for (pair_keys, pair_action), weight in traces:
        table.update(pair_keys, pair_action, target, weight=weight, visit=(pair_keys, pair_action) == visited)
    traces.decay(discount * trace_decay)
    return table, traces
