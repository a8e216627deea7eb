"""Greedy policy extraction and application."""

from typing import Any, Hashable, Optional

import numpy as np

from environments.base import EnvSample, GenerativeEnvironment
from learners.value_table import ValueTable
from models.environment import Mode
from models.policy import GreedyPolicy, PolicyHeader


def extract_greedy_policy(
    table: ValueTable,
    env: GenerativeEnvironment,
    learner: str = "",
    training_runs: int = 0,
    mixture: Optional[str] = None,
    mode: Optional[Mode] = None,
) -> GreedyPolicy:
    """
    Total map from every policy cell of env to its highest-valued action.

    Ties go to the action listed first in the environment's action order.
    """
    decisions = {}
    for cell in env.policy_cells():
        values = table.values(cell.feature_keys, cell.actions)
        decisions[cell.label] = env.action_label(cell.actions[int(np.argmax(values))])

    header = PolicyHeader(
        environment=env.name,
        mixture=mixture,
        mode=mode,
        tile_config=env.tile_config,
        actions=[env.action_label(a) for a in env.actions()],
        learner=learner,
        training_runs=training_runs,
    )
    return GreedyPolicy(header=header, decisions=decisions)


class PolicyAgent:
    """Plays a recorded greedy policy in an environment."""

    def __init__(self, policy: GreedyPolicy, env: GenerativeEnvironment):
        env.check_tile_config(policy.header.tile_config)
        self.policy = policy
        self.env = env
        self._parsed: dict[str, Hashable] = {}

    def reset(self, rng: Any = None) -> None:
        pass

    def act(self, sample: EnvSample, rng: Any = None) -> Hashable:
        label = self.policy.action_label(self.env.policy_cell(sample))
        action = self._parsed.get(label)
        if action is None:
            action = self._parsed[label] = self.env.parse_action(label)
        return action

    def observe(self, action: Hashable, sample: EnvSample) -> None:
        pass
