"""Episode loop for the tabular TD learners with periodic greedy-policy snapshots."""

from typing import Callable, Hashable, Optional, Sequence

import numpy as np
from tqdm import tqdm

from config.learner_config import LearnerConfig
from config.logging_config import get_logger
from environments.base import EnvSample, GenerativeEnvironment
from learners.policy import extract_greedy_policy
from learners.replay import ReplayBuffer, Transition, replay_step
from learners.td import TraceSet, epsilon_greedy, q_update, sarsa_lambda_step, sarsa_update
from learners.value_table import ValueTable
from models.experiment import LearnerKind
from models.policy import GreedyPolicy

# Setup logging
logger = get_logger(__name__)


class TdLearner:
    """
    One tabular learner trained online against a generative environment.

    Q-learning, Sarsa and Sarsa(lambda) follow an epsilon-greedy behavior
    policy; the replay variant is Q-learning that also stores every
    transition and replays a batch every few episodes.
    """

    def __init__(
        self,
        env: GenerativeEnvironment,
        kind: LearnerKind,
        rng: np.random.Generator,
        config: Optional[LearnerConfig] = None,
        epsilon: Optional[float] = None,
        trace_decay: Optional[float] = None,
        learning_rate: Optional[float] = None,
        replay_preset: Optional[str] = None,
    ):
        config = config or LearnerConfig()
        self.env = env
        self.kind = LearnerKind(kind)
        self.rng = rng
        self.epsilon = config.epsilon if epsilon is None else epsilon
        self.trace_decay = config.trace_decay if trace_decay is None else trace_decay
        self.discount = env.discount
        self.table = ValueTable(config.learning_rate if learning_rate is None else learning_rate)
        self.traces = TraceSet(config.trace_floor)
        self.replay: Optional[ReplayBuffer] = None
        if self.kind is LearnerKind.Q_REPLAY:
            self.replay = ReplayBuffer.from_preset(replay_preset or config.replay_preset)
        self.episodes = 0

    def choose(self, keys: Sequence[Hashable], actions: Sequence[Hashable]) -> Hashable:
        return actions[epsilon_greedy(self.table.values(keys, actions), self.epsilon, self.rng)]

    def _features(self, sample: EnvSample) -> tuple[tuple[Hashable, ...], tuple[Hashable, ...]]:
        if sample.terminal:
            return (), ()
        return self.env.feature_keys(sample), tuple(self.env.legal_actions(sample.state))

    def train_episode(self) -> float:
        """
        Run one episode from a fresh initial state, learning as it goes.

        Returns:
            The episode's discounted return under the behavior policy
        """
        env, rng, gamma = self.env, self.rng, self.discount
        sample = env.sample_initial(rng)
        self.traces.reset()
        total, scale = 0.0, 1.0

        keys, actions = self._features(sample)
        action = self.choose(keys, actions) if not sample.terminal else None

        while not sample.terminal:
            nxt = env.generate_sample(sample.state, action, rng)
            total += scale * nxt.reward
            scale *= gamma
            next_keys, next_actions = self._features(nxt)

            if self.kind in (LearnerKind.Q_LEARNING, LearnerKind.Q_REPLAY):
                q_update(self.table, keys, action, nxt.reward, next_keys, next_actions, nxt.terminal, gamma)
                if self.replay is not None:
                    self.replay.add(Transition(keys, action, nxt.reward, next_keys, next_actions, nxt.terminal))
                next_action = self.choose(next_keys, next_actions) if not nxt.terminal else None
            else:
                next_action = self.choose(next_keys, next_actions) if not nxt.terminal else None
                if self.kind is LearnerKind.SARSA:
                    sarsa_update(self.table, keys, action, nxt.reward, next_keys, next_action, nxt.terminal, gamma)
                else:
                    sarsa_lambda_step(
                        self.table, self.traces, keys, action, nxt.reward,
                        next_keys, next_action, nxt.terminal, self.trace_decay, gamma,
                    )

            sample, keys, actions, action = nxt, next_keys, next_actions, next_action

        self.episodes += 1
        if self.replay is not None and self.episodes % self.replay.runs_between == 0:
            replay_step(self.replay, self.table, rng, gamma)
        return total

    def greedy_policy(self, mixture: Optional[str] = None) -> GreedyPolicy:
        return extract_greedy_policy(
            self.table,
            self.env,
            learner=self.kind.value,
            training_runs=self.episodes,
            mixture=mixture,
            mode=getattr(self.env, "mode", None),
        )

    def train(
        self,
        checkpoints: Sequence[int],
        mixture: Optional[str] = None,
        on_checkpoint: Optional[Callable[[int, GreedyPolicy], None]] = None,
        progress: bool = False,
    ) -> dict[int, GreedyPolicy]:
        """
        Train up to the last checkpoint, recording the greedy policy at each one.

        Args:
            checkpoints: Ascending episode counts (0 records the untrained policy)
            mixture: Mixture name written into policy headers
            on_checkpoint: Called with (episodes, policy) as each snapshot is taken
            progress: Show a progress bar

        Returns:
            Episode count -> greedy policy
        """
        policies: dict[int, GreedyPolicy] = {}
        pending = sorted(checkpoints)
        total = pending[-1] if pending else 0

        def record() -> None:
            while pending and pending[0] <= self.episodes:
                policy = self.greedy_policy(mixture)
                policies[pending.pop(0)] = policy
                logger.info(f"{self.env.name} {self.kind.value}: policy recorded after {self.episodes} runs")
                if on_checkpoint is not None:
                    on_checkpoint(self.episodes, policy)

        record()
        for _ in tqdm(range(self.episodes, total), disable=not progress, desc=f"{self.kind.value} training"):
            self.train_episode()
            record()
        return policies
