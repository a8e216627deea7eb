"""
Training experiments: independent learner replicas, checkpoint evaluation
and CSV/manifest output.

Checkpoint policies of a replica come from one training trajectory, so
checkpoints within a replica are not independent samples.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from config.logging_config import get_logger
from environments.base import GenerativeEnvironment
from environments.registry import get_environment
from harness.baselines import baseline_suite, evaluation_row
from harness.evaluation import derive_seed, evaluate_policy
from learners.trainer import TdLearner
from models.experiment import EvalReport, ExperimentConfig
from models.policy import GreedyPolicy

# Setup logging
logger = get_logger(__name__)

TRAIN_STREAM, EVAL_STREAM, BASELINE_STREAM = 0, 1, 2


@dataclass
class TrainingResult:
    report: EvalReport
    policies: list[dict[int, GreedyPolicy]] = field(default_factory=list)
    csv_path: Optional[Path] = None
    manifest_path: Optional[Path] = None


def experiment_name(config: ExperimentConfig) -> str:
    parts = [config.environment.replace(":", "-"), config.mixture, config.mode.value, config.learner.value]
    return "_".join(p for p in parts if p) + f"_s{config.master_seed}"


def build_environment(config: ExperimentConfig) -> GenerativeEnvironment:
    env = get_environment(config.environment, config.mixture, config.mode, config.tilings)
    env.require_policy_map()
    return env


def train_replica(config: ExperimentConfig, replica: int, progress: bool = False) -> dict[int, GreedyPolicy]:
    """Train one replica from its derived seed and return its checkpoint policies."""
    env = build_environment(config)
    learner = TdLearner(
        env,
        config.learner,
        np.random.default_rng(derive_seed(config.master_seed, TRAIN_STREAM, replica)),
        epsilon=config.epsilon,
        trace_decay=config.trace_decay,
        learning_rate=config.learning_rate,
        replay_preset=config.replay_preset,
    )
    return learner.train(config.checkpoints, mixture=config.mixture, progress=progress)


def split_runs(total: int, parts: int) -> list[int]:
    """Spread total runs over parts as evenly as possible, earlier parts first."""
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def run_training(
    config: ExperimentConfig,
    output_dir: Optional[Path] = None,
    include_baselines: bool = True,
    random_policies: int = 0,
    save_policies: bool = False,
    max_steps: Optional[int] = None,
    progress: bool = False,
) -> TrainingResult:
    """
    Train the configured learner in every replica, then evaluate each checkpoint.

    A checkpoint's evaluation runs are split across the replicas' policies
    for that checkpoint and pooled into one row. Everything is derived from
    the master seed, so a rerun reproduces the report exactly.

    Args:
        output_dir: Where to write <name>.csv and <name>.json (nothing is written if None)
        include_baselines: Append the baseline suite rows
        random_policies: Randomly generated policies added to the baselines
        save_policies: Also write every checkpoint policy as JSON
        max_steps: Episode truncation for evaluation runs
        progress: Show training progress bars
    """
    name = experiment_name(config)
    env = build_environment(config)
    logger.info(f"Training {name}: {config.replicas} replica(s) up to {config.training_runs} runs")

    if config.workers > 1 and config.replicas > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            policies = list(executor.map(train_replica, [config] * config.replicas, range(config.replicas)))
    else:
        policies = [train_replica(config, r, progress) for r in range(config.replicas)]

    report = EvalReport(experiment=name)
    shares = split_runs(config.eval_runs, config.replicas)
    for index, checkpoint in enumerate(config.checkpoints):
        payoffs = [
            evaluate_policy(
                policies[replica][checkpoint],
                env,
                runs,
                derive_seed(config.master_seed, EVAL_STREAM, index, replica),
                config.workers,
                max_steps,
            )
            for replica, runs in enumerate(shares)
            if runs > 0
        ]
        row_seed = derive_seed(config.master_seed, EVAL_STREAM, index)
        report.rows.append(evaluation_row(
            f"{config.learner.value}@{checkpoint}",
            np.concatenate(payoffs),
            row_seed,
            config.bootstrap_resamples,
            config.confidence_level,
            checkpoint_runs=checkpoint,
        ))

    if include_baselines:
        report.rows.extend(baseline_suite(
            env,
            config.eval_runs,
            derive_seed(config.master_seed, BASELINE_STREAM),
            config.bootstrap_resamples,
            config.confidence_level,
            config.workers,
            random_policies,
            max_steps,
        ))

    result = TrainingResult(report=report, policies=policies)
    if output_dir is not None:
        options = {"include_baselines": include_baselines, "random_policies": random_policies, "max_steps": max_steps}
        write_outputs(result, config, Path(output_dir), save_policies, options)
    return result


def write_outputs(
    result: TrainingResult,
    config: ExperimentConfig,
    output_dir: Path,
    save_policies: bool,
    options: Optional[dict] = None,
) -> None:
    """Write the report CSV, the manifest and optionally the checkpoint policies."""
    output_dir.mkdir(parents=True, exist_ok=True)
    name = result.report.experiment

    result.csv_path = output_dir / f"{name}.csv"
    result.report.to_frame().to_csv(result.csv_path, index=False)

    manifest = {
        "experiment": name,
        "config": config.model_dump(mode="json"),
        "options": options or {},
        "shared_training_trajectories": True,
        "rows": len(result.report.rows),
        "csv": result.csv_path.name,
    }
    if save_policies:
        policy_dir = output_dir / f"{name}_policies"
        manifest["policies"] = [
            str(policy.save(policy_dir / f"replica{replica}_{runs}.json").relative_to(output_dir))
            for replica, checkpoints in enumerate(result.policies)
            for runs, policy in checkpoints.items()
        ]
    result.manifest_path = output_dir / f"{name}.json"
    result.manifest_path.write_text(json.dumps(manifest, indent=2))
    logger.info(f"Wrote {result.csv_path} and {result.manifest_path}")


def rerun_from_manifest(manifest_path: Path, output_dir: Optional[Path] = None) -> TrainingResult:
    """Repeat an experiment from its recorded config."""
    manifest = json.loads(Path(manifest_path).read_text())
    config = ExperimentConfig.model_validate(manifest["config"])
    return run_training(config, output_dir, save_policies="policies" in manifest, **manifest.get("options", {}))
