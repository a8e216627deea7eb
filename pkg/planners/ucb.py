"""UCB1 action selection."""

import math
from typing import Hashable, Mapping, Sequence


def ucb1_score(mean: float, total: int, pulls: int, c: float = 1.0, scale: float = 1.0) -> float:
    """
    mean + c * scale * sqrt(2 ln total / pulls); +inf for an arm never pulled.

    scale normalizes the exploration bonus to the reward range of the task.
    """
    if pulls == 0:
        return math.inf
    return mean + c * scale * math.sqrt(2.0 * math.log(total) / pulls)


def select_ucb1(
    actions: Sequence[Hashable],
    means: Mapping[Hashable, float],
    counts: Mapping[Hashable, int],
    total: int,
    c: float = 1.0,
    scale: float = 1.0,
) -> Hashable:
    """Highest-scoring action; ties go to the earliest action in order."""
    best, best_score = actions[0], -math.inf
    for action in actions:
        score = ucb1_score(means.get(action, 0.0), total, counts.get(action, 0), c, scale)
        if score > best_score:
            best, best_score = action, score
    return best
