"""Tabular temporal-difference learners."""

from learners.policy import PolicyAgent, extract_greedy_policy
from learners.replay import REPLAY_PRESETS, ReplayBuffer, Transition, replay_step
from learners.td import TraceSet, epsilon_greedy, q_update, sarsa_lambda_step, sarsa_update
from learners.trainer import TdLearner
from learners.value_table import ValueTable

__all__ = [
    "PolicyAgent",
    "extract_greedy_policy",
    "REPLAY_PRESETS",
    "ReplayBuffer",
    "Transition",
    "replay_step",
    "TraceSet",
    "epsilon_greedy",
    "q_update",
    "sarsa_lambda_step",
    "sarsa_update",
    "TdLearner",
    "ValueTable",
]
