"""Experiment orchestration: evaluation, baselines, training schedules and benchmark checks."""

from harness.agents import AgentPlayer, RandomAgent, StrategyPlayer, build_planner, random_policy, run_episode
from harness.baselines import baseline_suite, evaluation_row
from harness.bench import BenchResult, list_checks, run_bench
from harness.bootstrap import MeanEstimate, bootstrap_ci, estimate_mean, running_estimates, running_mean
from harness.evaluation import derive_seed, evaluate, evaluate_policy
from harness.training import TrainingResult, rerun_from_manifest, run_training, split_runs

__all__ = [
    "AgentPlayer",
    "BenchResult",
    "MeanEstimate",
    "RandomAgent",
    "StrategyPlayer",
    "TrainingResult",
    "baseline_suite",
    "bootstrap_ci",
    "build_planner",
    "derive_seed",
    "estimate_mean",
    "evaluate",
    "evaluate_policy",
    "evaluation_row",
    "list_checks",
    "random_policy",
    "rerun_from_manifest",
    "run_bench",
    "run_episode",
    "run_training",
    "running_estimates",
    "running_mean",
    "split_runs",
]
