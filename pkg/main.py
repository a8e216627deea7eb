"""Command-line entry point: train, evaluate, baseline, bench and egta."""

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from dotenv import load_dotenv
from pydantic import ValidationError

from config import get_settings, validate_settings
from config.logging_config import get_logger, setup_logging
from egta import EmpiricalGame, dpr_profile_count, find_equilibria, profile_count, regret
from environments.registry import get_environment, list_environments
from exceptions import BeliefStarvationError
from harness.agents import build_planner
from harness.baselines import baseline_suite, evaluation_row
from harness.bench import list_checks, run_bench
from harness.evaluation import evaluate_policy
from harness.training import rerun_from_manifest, run_training
from models.environment import Mode
from models.experiment import EvalReport, ExperimentConfig, LearnerKind
from models.games import MixedProfile
from models.policy import GreedyPolicy

# Setup logging
logger = get_logger(__name__)


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _add_environment_args(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--env", required=required, help=f"Environment: {', '.join(list_environments())}")
    parser.add_argument("--mixture", help="Other-agent mixture preset (market environments)")
    parser.add_argument("--mode", type=Mode, choices=list(Mode), default=Mode.NO_FLIP)
    parser.add_argument("--tilings", type=int, choices=[1, 3], default=3)


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    harness = settings.harness
    parser = argparse.ArgumentParser(description="Market simulation, learners, planners and equilibrium checks")
    parser.add_argument("--log-level", default=harness.log_level)
    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train", help="Train a TD learner and evaluate its checkpoints")
    _add_environment_args(train, required=False)
    train.add_argument("--learner", type=LearnerKind, choices=list(LearnerKind), default=LearnerKind.SARSA_LAMBDA)
    train.add_argument("--checkpoints", type=_int_list, default=harness.checkpoints)
    train.add_argument("--eval-runs", type=int, default=harness.eval_runs)
    train.add_argument("--replicas", type=int, default=harness.replicas)
    train.add_argument("--seed", type=int, default=harness.master_seed)
    train.add_argument("--workers", type=int, default=harness.workers)
    train.add_argument("--epsilon", type=float, default=settings.learner.epsilon)
    train.add_argument("--trace-decay", type=float, default=settings.learner.trace_decay)
    train.add_argument("--learning-rate", type=float, default=settings.learner.learning_rate)
    train.add_argument("--replay-preset", choices=["market", "classic"], default=settings.learner.replay_preset)
    train.add_argument("--output-dir", type=Path, default=harness.output_dir)
    train.add_argument("--random-policies", type=int, default=0)
    train.add_argument("--max-steps", type=int)
    train.add_argument("--save-policies", action="store_true")
    train.add_argument("--no-baselines", action="store_true")
    train.add_argument("--rerun", type=Path, metavar="MANIFEST", help="Repeat a recorded experiment")

    evaluate = commands.add_parser("evaluate", help="Evaluate a saved policy or the planner")
    _add_environment_args(evaluate)
    source = evaluate.add_mutually_exclusive_group(required=True)
    source.add_argument("--policy", type=Path, help="Greedy policy JSON file")
    source.add_argument("--planner", action="store_true", help="Plan online with POMCP/UCT")
    evaluate.add_argument("--playouts", type=int, default=settings.planner.playouts_per_action)
    evaluate.add_argument("--value-prior", type=float, help="Initial action value for new search nodes")
    evaluate.add_argument("--runs", type=int, default=harness.eval_runs)
    evaluate.add_argument("--seed", type=int, default=harness.master_seed)
    evaluate.add_argument("--workers", type=int, default=harness.workers)
    evaluate.add_argument("--max-steps", type=int)

    baseline = commands.add_parser("baseline", help="Mixture, random and ZI baseline payoffs")
    _add_environment_args(baseline)
    baseline.add_argument("--runs", type=int, default=harness.eval_runs)
    baseline.add_argument("--seed", type=int, default=harness.master_seed)
    baseline.add_argument("--workers", type=int, default=harness.workers)
    baseline.add_argument("--random-policies", type=int, default=0)
    baseline.add_argument("--max-steps", type=int)
    baseline.add_argument("--output", type=Path, help="Write the rows as CSV")

    bench = commands.add_parser("bench", help="Benchmark validation suite (exit 1 on any failure)")
    bench.add_argument("--check", action="append", choices=list_checks(), help="Run only these checks")
    bench.add_argument("--full", action="store_true", help="Acceptance scale instead of quick scale")
    bench.add_argument("--seed", type=int, default=harness.master_seed)
    bench.add_argument("--workers", type=int, default=harness.workers)

    egta = commands.add_parser("egta", help="Profile counts, replicator dynamics and regret")
    egta_commands = egta.add_subparsers(dest="egta_command", required=True)
    count = egta_commands.add_parser("count", help="Profile counts for N players and S strategies")
    count.add_argument("--players", type=int, required=True)
    count.add_argument("--strategies", type=int, required=True)
    count.add_argument("--reduced", type=int, help="Reduced player count for the deviation-preserving reduction")
    solve = egta_commands.add_parser("solve", help="Equilibria of a game file by replicator restarts")
    solve.add_argument("game", type=Path)
    solve.add_argument("--restarts", type=int, default=20)
    solve.add_argument("--seed", type=int, default=harness.master_seed)
    check = egta_commands.add_parser("regret", help="Regret of a mixed profile in a game file")
    check.add_argument("game", type=Path)
    check.add_argument("--profile", type=Path, required=True, help="JSON mapping role -> probabilities")

    return parser


# ----------------------------------------------------------------------
# Commands


def cmd_train(args: argparse.Namespace) -> int:
    if args.rerun:
        result = rerun_from_manifest(args.rerun, args.output_dir)
    else:
        if not args.env:
            raise ValueError("train needs --env unless --rerun is given")
        harness = get_settings().harness
        config = ExperimentConfig(
            environment=args.env,
            mixture=args.mixture,
            mode=args.mode,
            learner=args.learner,
            tilings=args.tilings,
            epsilon=args.epsilon,
            trace_decay=args.trace_decay,
            learning_rate=args.learning_rate,
            replay_preset=args.replay_preset,
            checkpoints=args.checkpoints,
            eval_runs=args.eval_runs,
            replicas=args.replicas,
            master_seed=args.seed,
            bootstrap_resamples=harness.bootstrap_resamples,
            confidence_level=harness.confidence_level,
            workers=args.workers,
        )
        result = run_training(
            config,
            args.output_dir,
            include_baselines=not args.no_baselines,
            random_policies=args.random_policies,
            save_policies=args.save_policies,
            max_steps=args.max_steps,
            progress=True,
        )
    print(result.report.to_frame().to_string(index=False))
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    harness = get_settings().harness
    env = get_environment(args.env, args.mixture, args.mode, args.tilings)
    if args.policy:
        agent = GreedyPolicy.load(args.policy)
        label = f"{agent.header.learner}@{agent.header.training_runs}"
    else:
        agent = build_planner(env, args.seed, playouts_per_action=args.playouts, value_prior=args.value_prior)
        label = f"planner@{args.playouts}"
    payoffs = evaluate_policy(agent, env, args.runs, args.seed, args.workers, args.max_steps)
    row = evaluation_row(label, payoffs, args.seed, harness.bootstrap_resamples, harness.confidence_level)
    print(EvalReport(experiment=env.name, rows=[row]).to_frame().to_string(index=False))
    print(f"std {np.std(payoffs, ddof=1):.2f}")
    return 0


def cmd_baseline(args: argparse.Namespace) -> int:
    harness = get_settings().harness
    env = get_environment(args.env, args.mixture, args.mode, args.tilings)
    rows = baseline_suite(
        env,
        args.runs,
        args.seed,
        harness.bootstrap_resamples,
        harness.confidence_level,
        args.workers,
        args.random_policies,
        args.max_steps,
    )
    frame = EvalReport(experiment=env.name, rows=rows).to_frame()
    if args.output:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(args.output, index=False)
    print(frame.to_string(index=False))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    results = run_bench(args.check, "full" if args.full else "quick", args.seed, args.workers)
    frame = pd.DataFrame([r.__dict__ for r in results])
    print(frame.to_string(index=False))
    return 0 if all(r.passed for r in results) else 1


def cmd_egta(args: argparse.Namespace) -> int:
    if args.egta_command == "count":
        print(f"profiles: {profile_count(args.players, args.strategies)}")
        if args.reduced:
            print(f"reduced profiles: {dpr_profile_count(args.reduced, args.strategies)}")
        return 0

    game = EmpiricalGame.from_json(args.game)
    if args.egta_command == "solve":
        for result in find_equilibria(game, args.restarts, np.random.default_rng(args.seed)):
            weights = {name: [round(float(w), 4) for w in result.profile[name]] for name in game.role_names}
            print(f"regret {result.regret:.2e} after {result.iterations} steps: {weights}")
        return 0

    profile = json.loads(args.profile.read_text())
    print(f"regret: {regret(game, MixedProfile(weights=profile)):.6g}")
    return 0


COMMANDS = {
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "baseline": cmd_baseline,
    "bench": cmd_bench,
    "egta": cmd_egta,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    setup_logging(log_level=args.log_level, log_to_file=True)

    for issue in validate_settings():
        logger.warning(issue)

    try:
        return COMMANDS[args.command](args)
    except (ValidationError, ValueError, KeyError, BeliefStarvationError, FileNotFoundError) as e:
        source = getattr(args, "rerun", None) or getattr(args, "policy", None) or getattr(args, "game", None)
        logger.error(f"{args.command} failed{f' ({source})' if source else ''}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
