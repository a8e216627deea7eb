"""
Monte Carlo tree search over action-observation histories (POMCP), with
UCT as the fully observable special case.

Each tree node stands for a history. It keeps per-action visit counts and
mean returns, plus particles: hidden states consistent with the history.
"""

from dataclasses import dataclass, field
from typing import Any, Hashable, Optional

import numpy as np

from config.logging_config import get_logger
from config.planner_config import PlannerConfig
from environments.base import EnvSample, GenerativeEnvironment
from exceptions import BeliefStarvationError
from planners.ucb import select_ucb1

# Setup logging
logger = get_logger(__name__)


@dataclass
class SearchNode:
    """Statistics and belief particles for one history."""

    actions: tuple[Hashable, ...]
    visits: int = 0
    counts: dict[Hashable, int] = field(default_factory=dict)
    means: dict[Hashable, float] = field(default_factory=dict)
    children: dict[tuple[Hashable, Hashable], "SearchNode"] = field(default_factory=dict)
    particles: list[Any] = field(default_factory=list)

    def seed_prior(self, mean: float) -> None:
        """Start every action at (mean, count 1)."""
        for action in self.actions:
            self.counts[action] = 1
            self.means[action] = mean
        self.visits = len(self.actions)

    def record(self, action: Hashable, ret: float) -> None:
        self.visits += 1
        count = self.counts.get(action, 0) + 1
        self.counts[action] = count
        mean = self.means.get(action, 0.0)
        self.means[action] = mean + (ret - mean) / count

    def add_particle(self, state: Any, cap: int) -> None:
        if len(self.particles) < cap:
            self.particles.append(state)

    def best_action(self) -> Hashable:
        """Tried action with the highest mean return; ties to the earliest action."""
        tried = [a for a in self.actions if self.counts.get(a, 0) > 0]
        if not tried:
            return self.actions[0]
        return max(tried, key=lambda a: (self.means[a], -self.actions.index(a)))


@dataclass(frozen=True, slots=True)
class HistoryStep:
    action: Hashable
    observation: Hashable


class Planner:
    """
    Online planner for one episode at a time.

    Call reset() at the start of an episode, act() at each decision and
    observe() after each real transition; the tree is re-rooted at the
    realized history so search statistics carry over between decisions.
    """

    def __init__(
        self,
        env: GenerativeEnvironment,
        rng: np.random.Generator,
        config: Optional[PlannerConfig] = None,
        playouts_per_action: Optional[int] = None,
        value_prior: Optional[float] = None,
        reward_range: Optional[float] = None,
    ):
        self.env = env
        self.rng = rng
        self.config = config or PlannerConfig()
        self.playouts_per_action = playouts_per_action or self.config.playouts_per_action
        self.value_prior = value_prior
        self.fully_observable = env.fully_observable
        self._reward_range = reward_range
        self.rejection_attempts = 0
        self.reset()

    # ------------------------------------------------------------------
    # Episode bookkeeping

    def reset(self, rng: Optional[np.random.Generator] = None) -> None:
        """Forget the tree; a new rng makes the next episode reproducible on its own."""
        if rng is not None:
            self.rng = rng
        self.root: Optional[SearchNode] = None
        self.initial_key: Optional[Hashable] = None
        self.history: list[HistoryStep] = []

    @property
    def reward_range(self) -> float:
        if self._reward_range is None:
            self._reward_range = self.estimate_reward_range()
        return self._reward_range

    def estimate_reward_range(self) -> float:
        """Interquartile range of random-rollout returns from initial states."""
        runs = self.config.warmup_rollouts
        if runs == 0:
            return 1.0
        returns = []
        for _ in range(runs):
            sample = self.env.sample_initial(self.rng)
            returns.append(0.0 if sample.terminal else self.rollout(sample.state, 0))
        q1, q3 = np.percentile(returns, [25, 75])
        spread = float(q3 - q1) or float(np.ptp(returns)) or 1.0
        logger.debug(f"{self.env.name}: reward range {spread:.3f} from {runs} warmup rollouts")
        return spread

    def _new_node(self, state: Any) -> SearchNode:
        node = SearchNode(actions=tuple(self.env.legal_actions(state)))
        if self.value_prior is not None:
            node.seed_prior(self.value_prior)
        return node

    # ------------------------------------------------------------------
    # Search

    def rollout(self, state: Any, depth: int) -> float:
        """Discounted return of uniformly random play from state."""
        env, rng, gamma = self.env, self.rng, self.env.discount
        total, scale = 0.0, 1.0
        while depth < self.config.max_depth:
            actions = env.legal_actions(state)
            sample = env.generate_sample(state, actions[rng.integers(len(actions))], rng)
            total += scale * sample.reward
            scale *= gamma
            depth += 1
            if sample.terminal:
                break
            state = sample.state
        return total

    def simulate(self, root: SearchNode, state: Any) -> float:
        """
        One playout from a root particle.

        Descends by UCB1, expands the first new history it reaches and
        finishes with a random rollout, then backs the return up the path.
        """
        env, rng, gamma = self.env, self.rng, self.env.discount
        c, scale, cap = self.config.exploration_constant, self.reward_range, self.config.max_particles
        path: list[tuple[SearchNode, Hashable, float]] = []
        node, depth, leaf = root, 0, 0.0

        while depth < self.config.max_depth:
            action = select_ucb1(node.actions, node.means, node.counts, node.visits, c, scale)
            sample = env.generate_sample(state, action, rng)
            path.append((node, action, sample.reward))
            depth += 1
            if sample.terminal:
                break
            key = (action, env.observation_key(sample))
            child = node.children.get(key)
            if child is None:
                child = node.children[key] = self._new_node(sample.state)
                child.add_particle(sample.state, cap)
                leaf = self.rollout(sample.state, depth)
                break
            child.add_particle(sample.state, cap)
            node, state = child, sample.state

        ret = leaf
        for visited, action, reward in reversed(path):
            ret = reward + gamma * ret
            visited.record(action, ret)
        return ret

    def replay_history(self) -> Optional[Any]:
        """Hidden state from one initial draw forced through the history, or None on mismatch."""
        env, rng = self.env, self.rng
        sample = env.sample_initial(rng)
        if sample.terminal or env.observation_key(sample) != self.initial_key:
            return None
        for step in self.history:
            if step.action not in env.legal_actions(sample.state):
                return None
            sample = env.generate_sample(sample.state, step.action, rng)
            if sample.terminal or env.observation_key(sample) != step.observation:
                return None
        return sample.state

    def belief_states(self, node: SearchNode) -> list[Any]:
        """
        Top the node's particles up to min_states by rejection sampling.

        Raises:
            BeliefStarvationError: the attempt cap was hit; carries the particles found
        """
        min_states = self.config.min_states
        cap = self.config.attempt_factor * min_states
        attempts = 0
        while len(node.particles) < min_states:
            if attempts >= cap:
                logger.warning(
                    f"{self.env.name}: belief starvation after {attempts} attempts at history length "
                    f"{len(self.history)} ({len(node.particles)} particles): "
                    f"{[(s.action, s.observation) for s in self.history]}"
                )
                raise BeliefStarvationError(
                    f"Only {len(node.particles)} of {min_states} particles after {attempts} attempts",
                    particles=list(node.particles),
                    attempts=attempts,
                )
            attempts += 1
            state = self.replay_history()
            if state is not None:
                node.particles.append(state)
        self.rejection_attempts += attempts
        return node.particles

    def plan(self, sample: EnvSample) -> Hashable:
        """
        Search from the current history and return the root action with the highest mean.

        Args:
            sample: The real current sample; only its observation is used unless
                the environment is fully observable
        """
        legal = tuple(self.env.legal_actions(sample.state))
        if self.root is None:
            self.root = SearchNode(actions=legal)
            if self.value_prior is not None:
                self.root.seed_prior(self.value_prior)
            self.initial_key = self.env.observation_key(sample)
        root = self.root

        if self.fully_observable:
            particles = [sample.state]
        else:
            try:
                particles = self.belief_states(root)
            except BeliefStarvationError as e:
                particles = e.particles
        if not particles:
            logger.warning(f"{self.env.name}: no belief particles, acting at random")
            return legal[self.rng.integers(len(legal))]

        budget = self.playouts_per_action * len(legal)
        for _ in range(budget):
            self.simulate(root, particles[self.rng.integers(len(particles))])

        action = root.best_action()
        means = ", ".join(f"{self.env.action_label(a)}: {root.means[a]:.2f}" for a in root.actions if a in root.means)
        logger.debug(
            f"{self.env.name}: history {len(self.history)}, {len(particles)} particles, "
            f"means [{means}] -> {self.env.action_label(action)}"
        )
        return action

    def advance(self, action: Hashable, sample: EnvSample) -> None:
        """
        Re-root at the realized (action, observation) child.

        The child keeps its statistics; its particles are topped up by
        stepping each of the old root's particles once under the real action;
        plan() rejection-samples whatever is still missing.
        """
        if sample.terminal:
            self.root = None
            return
        observation = self.env.observation_key(sample)
        old = self.root
        child = old.children.get((action, observation)) if old else None
        if child is None:
            child = self._new_node(sample.state)
        self.history.append(HistoryStep(action, observation))

        if not self.fully_observable and old is not None and old.particles:
            for parent in old.particles:
                if len(child.particles) >= self.config.min_states:
                    break
                nxt = self.env.generate_sample(parent, action, self.rng)
                if not nxt.terminal and self.env.observation_key(nxt) == observation:
                    child.particles.append(nxt.state)
        self.root = child

    # ------------------------------------------------------------------
    # Agent interface

    def act(self, sample: EnvSample, rng: Optional[np.random.Generator] = None) -> Hashable:
        return self.plan(sample)

    def observe(self, action: Hashable, sample: EnvSample) -> None:
        self.advance(action, sample)


def pomcp_plan(
    env: GenerativeEnvironment,
    sample: EnvSample,
    rng: np.random.Generator,
    config: Optional[PlannerConfig] = None,
    **kwargs: Any,
) -> Hashable:
    """Plan a single decision from an initial sample with a fresh tree."""
    return Planner(env, rng, config, **kwargs).plan(sample)
