"""Settings loading, cross-field validation and the shipped presets."""

import pytest

from config import get_settings, reload_settings, validate_settings
from config.logging_config import get_logger, setup_logging
from presets.loader import (
    get_mixture,
    list_environment_presets,
    list_mixtures,
    load_strategy_tables,
    mm_strategies,
    normalize_published_weights,
    zi_strategies,
)


@pytest.fixture
def clean_settings(tmp_path, monkeypatch):
    """Settings read from the environment only, reloaded again afterwards."""
    monkeypatch.chdir(tmp_path)
    for name in ("LEARNER_EPSILON", "HARNESS_CHECKPOINTS", "HARNESS_EVAL_RUNS", "PLANNER_MAX_PARTICLES"):
        monkeypatch.delenv(name, raising=False)
    reload_settings()
    yield monkeypatch
    monkeypatch.undo()
    reload_settings()


def test_defaults(clean_settings):
    settings = get_settings()
    assert settings.learner.epsilon == 0.2
    assert settings.learner.trace_decay == 0.9
    assert settings.planner.min_states == 100
    assert settings.harness.eval_runs == 10_000
    assert validate_settings() == []


def test_environment_overrides(clean_settings):
    clean_settings.setenv("LEARNER_EPSILON", "0.05")
    assert get_settings().learner.epsilon == 0.2  # cached until reloaded
    assert reload_settings().learner.epsilon == 0.05


def test_descending_checkpoints_reported(clean_settings):
    clean_settings.setenv("HARNESS_CHECKPOINTS", "[100, 10]")
    reload_settings()
    issues = validate_settings()
    assert any("HARNESS_CHECKPOINTS" in issue for issue in issues)


def test_particle_cap_below_floor_reported(clean_settings):
    clean_settings.setenv("PLANNER_MAX_PARTICLES", "10")
    reload_settings()
    assert any("PLANNER_MAX_PARTICLES" in issue for issue in validate_settings())


def test_too_few_eval_runs_reported(clean_settings):
    clean_settings.setenv("HARNESS_EVAL_RUNS", "3")
    reload_settings()
    assert any("HARNESS_REPLICAS" in issue for issue in validate_settings())


def test_logging_setup_is_repeatable(tmp_path):
    setup_logging("DEBUG", log_to_file=True, log_dir=tmp_path)
    get_logger("config-test").info("hello")
    setup_logging("INFO")
    assert any(tmp_path.iterdir())


# ----------------------------------------------------------------------
# Presets


def test_strategy_tables():
    assert len(zi_strategies()) == 13
    assert len(mm_strategies()) == 7
    assert len(list_mixtures()) == 6
    assert list_environment_presets() == ["A-1k", "B-1k", "A-4k"]
    assert len(load_strategy_tables().three_tilings) == 3


@pytest.mark.parametrize("name", ["A-1k-eq", "A-1k-arb", "B-1k-eq", "B-1k-arb", "A-4k-eq", "A-4k-arb"])
def test_mixtures_sum_to_one(name):
    mixture = get_mixture(name)
    assert sum(mixture.probabilities) == pytest.approx(1.0, abs=1e-9)
    assert all(p > 0 for p in mixture.probabilities)


def test_rounded_weights_renormalized():
    raw = {"name": "rounded", "background": [{"probability": 0.6868}, {"probability": 0.3131}]}
    fixed = normalize_published_weights(raw)
    assert sum(c["probability"] for c in fixed["background"]) == pytest.approx(1.0)
    assert fixed["background"][0]["probability"] > 0.6868


def test_badly_off_weights_left_alone():
    raw = {"name": "broken", "background": [{"probability": 0.5}, {"probability": 0.3}]}
    assert normalize_published_weights(raw) is raw
