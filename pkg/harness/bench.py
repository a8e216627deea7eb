"""Benchmark validation suite: known targets for the learners and planners."""

from dataclasses import dataclass
from typing import Callable, Dict, List, Literal, Optional

import numpy as np

from config.logging_config import get_logger
from config.planner_config import PlannerConfig
from environments.base import EnvSample, GenerativeEnvironment
from environments.battleship import Battleship
from environments.gridworld import GridWorld
from environments.rocksample import RockSample
from environments.sailing import Sailing
from harness.agents import build_planner
from harness.evaluation import derive_seed, evaluate_policy
from learners.policy import PolicyAgent
from learners.trainer import TdLearner
from models.experiment import LearnerKind
from models.policy import GreedyPolicy
from presets.loader import benchmark_constants

# Setup logging
logger = get_logger(__name__)

Scale = Literal["quick", "full"]


@dataclass(frozen=True)
class BenchResult:
    name: str
    value: float
    target: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class BenchCheck:
    name: str
    description: str
    run: Callable[[Scale, int, int], BenchResult]
    full_only: bool = False


# Central check registry
_CHECKS: Dict[str, BenchCheck] = {}


def register_check(check: BenchCheck) -> None:
    if check.name in _CHECKS:
        logger.warning(f"Bench check '{check.name}' already registered. Overwriting.")
    _CHECKS[check.name] = check


def list_checks() -> List[str]:
    return list(_CHECKS)


# ----------------------------------------------------------------------
# Gridworld


def gridworld_policy_return(env: GridWorld, policy: GreedyPolicy, max_steps: int = 1000) -> float:
    """Exact mean return of a deterministic policy over the uniform start distribution."""
    agent = PolicyAgent(policy, env)
    returns = []
    for start in env.starts:
        sample, total, steps = EnvSample(start, start, 0.0, False), 0.0, 0
        while not sample.terminal and steps < max_steps:
            sample = env.generate_sample(sample.state, agent.act(sample), None)
            total += sample.reward
            steps += 1
        returns.append(total)
    return float(np.mean(returns))


def _gridworld_check(name: str, kind: LearnerKind, runs: int, threshold: float) -> Callable[[Scale, int, int], BenchResult]:
    def run(scale: Scale, seed: int, workers: int) -> BenchResult:
        env = GridWorld()
        learner = TdLearner(env, kind, np.random.default_rng(derive_seed(seed, 0)))
        policy = learner.train([runs], progress=scale == "full")[runs]
        value = gridworld_policy_return(env, policy)
        return BenchResult(name, value, f">= {threshold:.2f} after {runs} runs", value >= threshold)

    return run


# ----------------------------------------------------------------------
# Planners


def planner_mean(
    env: GenerativeEnvironment,
    playouts: int,
    episodes: int,
    seed: int,
    workers: int,
    config: Optional[PlannerConfig] = None,
) -> float:
    planner = build_planner(env, derive_seed(seed, 1), config, playouts_per_action=playouts)
    return float(evaluate_policy(planner, env, episodes, derive_seed(seed, 2), workers).mean())


def _planner_check(
    name: str,
    factory: Callable[[], GenerativeEnvironment],
    playouts: dict[str, int],
    episodes: dict[str, int],
    threshold: float,
) -> Callable[[Scale, int, int], BenchResult]:
    def run(scale: Scale, seed: int, workers: int) -> BenchResult:
        value = planner_mean(factory(), playouts[scale], episodes[scale], seed, workers)
        return BenchResult(
            name, value, f">= {threshold:g} ({playouts[scale]} playouts/action)", value >= threshold,
            f"{episodes[scale]} episodes",
        )

    return run


def _sailing_separation(scale: Scale, seed: int, workers: int) -> BenchResult:
    """The planner should sail far better than the tabular learner trained on the same task."""
    constants = benchmark_constants("sailing")
    episodes = {"quick": 5, "full": 50}[scale]
    training_runs = {"quick": 1000, "full": 100_000}[scale]

    env = Sailing()
    planned = planner_mean(env, 100, episodes, seed, workers)

    learner = TdLearner(env, LearnerKind.SARSA_LAMBDA, np.random.default_rng(derive_seed(seed, 3)))
    policy = learner.train([training_runs], progress=scale == "full")[training_runs]
    learned = float(evaluate_policy(policy, env, max(2, episodes * 10), derive_seed(seed, 4), workers).mean())

    planner_bound, td_bound = -120.0, -300.0
    passed = planned > planner_bound and learned < td_bound
    return BenchResult(
        "sailing",
        planned,
        f"planner > {planner_bound:g}, TD < {td_bound:g}",
        passed,
        f"planner {planned:.1f} (reference {constants['planner_plateau']:g}), "
        f"TD {learned:.1f} after {training_runs} runs (reference {constants['td_plateau']:g})",
    )


def _register_all_checks() -> None:
    register_check(BenchCheck(
        "gridworld-sarsa-lambda",
        "Sarsa(lambda) reaches the maze optimum",
        _gridworld_check("gridworld-sarsa-lambda", LearnerKind.SARSA_LAMBDA, 10_000, -8.98),
    ))
    register_check(BenchCheck(
        "gridworld-q",
        "Q-learning approaches the maze optimum",
        _gridworld_check("gridworld-q", LearnerKind.Q_LEARNING, 700_000, -9.5),
        full_only=True,
    ))
    register_check(BenchCheck(
        "gridworld-q-replay",
        "Q-learning with replay reaches the maze optimum",
        _gridworld_check("gridworld-q-replay", LearnerKind.Q_REPLAY, 1_000_000, -8.98),
        full_only=True,
    ))
    register_check(BenchCheck(
        "battleship",
        "POMCP clears the fleet in few shots",
        _planner_check("battleship", Battleship, {"quick": 100, "full": 2000}, {"quick": 20, "full": 500}, 45.0),
    ))
    register_check(BenchCheck(
        "rocksample",
        "POMCP on RockSample[7,8]",
        _planner_check("rocksample", RockSample, {"quick": 200, "full": 1000}, {"quick": 20, "full": 500}, 12.0),
    ))
    register_check(BenchCheck("sailing", "Planner beats TD on Sailing", _sailing_separation))


# Initialize registry on import
_register_all_checks()


def run_bench(
    names: Optional[List[str]] = None,
    scale: Scale = "quick",
    seed: int = 0,
    workers: int = 1,
) -> list[BenchResult]:
    """
    Run the named checks (all by default). Checks that need very long
    training only run at full scale; quick scale uses fewer playouts and
    episodes, so its verdicts are indicative only.

    Raises:
        KeyError: unknown check name
    """
    results = []
    for name in names or list_checks():
        if name not in _CHECKS:
            raise KeyError(f"Unknown bench check '{name}'. Available: {', '.join(list_checks())}")
        check = _CHECKS[name]
        if check.full_only and scale != "full" and names is None:
            logger.info(f"Skipping {name} at quick scale")
            continue
        logger.info(f"Running {name}: {check.description}")
        result = check.run(scale, derive_seed(seed, list_checks().index(name)), workers)
        log = logger.info if result.passed else logger.error
        log(f"{name}: {result.value:.2f} ({result.target}) {'PASS' if result.passed else 'FAIL'} {result.detail}")
        results.append(result)
    return results
