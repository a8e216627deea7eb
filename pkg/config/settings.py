"""Main settings module combining all configurations."""

from functools import lru_cache
from pydantic import BaseModel
from config.market_config import MarketConfig
from config.learner_config import LearnerConfig
from config.planner_config import PlannerConfig
from config.harness_config import HarnessConfig


class Settings(BaseModel):
    """Main settings class combining all configurations."""

    market: MarketConfig
    learner: LearnerConfig
    planner: PlannerConfig
    harness: HarnessConfig

    model_config = {
        "frozen": True,  # Make settings immutable
    }


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Returns:
        Settings instance with all configurations loaded
    """
    return Settings(
        market=MarketConfig(),
        learner=LearnerConfig(),
        planner=PlannerConfig(),
        harness=HarnessConfig(),
    )


def reload_settings() -> Settings:
    """
    Clear the settings cache and reload from environment/.env.

    Returns:
        Fresh Settings instance
    """
    get_settings.cache_clear()
    return get_settings()


def validate_settings() -> list[str]:
    """
    Validate cross-field settings and return list of issues.

    Field ranges are enforced by pydantic; this catches combinations that are
    individually valid but make no sense together.

    Returns:
        List of validation issues (empty if all valid)
    """
    issues = []

    try:
        settings = get_settings()

        checkpoints = settings.harness.checkpoints
        if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
            issues.append(f"HARNESS_CHECKPOINTS must be strictly ascending, got {checkpoints}")
        if checkpoints and checkpoints[0] < 0:
            issues.append("HARNESS_CHECKPOINTS must be non-negative")

        if settings.harness.eval_runs < settings.harness.replicas:
            issues.append(
                f"HARNESS_EVAL_RUNS ({settings.harness.eval_runs}) is smaller than "
                f"HARNESS_REPLICAS ({settings.harness.replicas}); some replicas get no evaluation runs"
            )

        if settings.planner.max_particles < settings.planner.min_states:
            issues.append("PLANNER_MAX_PARTICLES is below PLANNER_MIN_STATES")

    except Exception as e:
        issues.append(f"Configuration error: {str(e)}")

    return issues


if __name__ == "__main__":
    print("=" * 80)
    print("Configuration Validation")
    print("=" * 80)

    try:
        settings = get_settings()

        print("\n✓ Configuration loaded successfully\n")

        print("Market Configuration:")
        print(f"  r_bar: {settings.market.r_bar}")
        print(f"  kappa: {settings.market.kappa}")
        print(f"  Shock variance: {settings.market.shock_variance}")
        print(f"  Background traders: {settings.market.n_background}")
        print(f"  Private value std: {settings.market.private_value_std}")

        print("\nLearner Configuration:")
        print(f"  Epsilon: {settings.learner.epsilon}")
        print(f"  Trace decay: {settings.learner.trace_decay}")
        print(f"  Learning rate: {settings.learner.learning_rate or '1/k'}")
        print(f"  Replay preset: {settings.learner.replay_preset}")

        print("\nPlanner Configuration:")
        print(f"  Playouts per action: {settings.planner.playouts_per_action}")
        print(f"  Min states: {settings.planner.min_states}")
        print(f"  Exploration constant: {settings.planner.exploration_constant}")

        print("\nHarness Configuration:")
        print(f"  Eval runs: {settings.harness.eval_runs}")
        print(f"  Replicas: {settings.harness.replicas}")
        print(f"  Checkpoints: {settings.harness.checkpoints}")
        print(f"  Output dir: {settings.harness.output_dir}")

        # Validation
        issues = validate_settings()
        if issues:
            print("\n⚠️  Configuration Issues:")
            for issue in issues:
                print(f"  - {issue}")
        else:
            print("\n✓ All configurations are consistent")

    except Exception as e:
        print(f"\n✗ Error loading configuration: {e}")

    print("\n" + "=" * 80)
