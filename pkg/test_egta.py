"""Profile counting, empirical games, replicator dynamics and the egta command."""

from itertools import combinations_with_replacement

import numpy as np
import pytest

from egta import (
    EmpiricalGame,
    dpr_profile_count,
    find_equilibria,
    mixture_from_profile,
    profile_count,
    regret,
    replicator_dynamics,
    replicator_step,
)
from exceptions import CountOverflowError, DegenerateProfileError, GameDataError, MarketConfigurationError
from main import main
from models.games import GameData, MixedProfile, ProfileEntry, RoleSpec
from models.market import MmParams

RPS = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
HAWK_DOVE = GameData(
    roles=[RoleSpec(name="all", count=2, strategies=["H", "D"])],
    profiles=[
        ProfileEntry(counts={"all": {"H": 2}}, payoffs={"all": {"H": -1.0}}),
        ProfileEntry(counts={"all": {"H": 1, "D": 1}}, payoffs={"all": {"H": 2.0, "D": 0.0}}),
        ProfileEntry(counts={"all": {"D": 2}}, payoffs={"all": {"D": 1.0}}),
    ],
)


def profile(*weights) -> dict[str, np.ndarray]:
    return {"all": np.array(weights, dtype=float)}


# ----------------------------------------------------------------------
# Counting


def test_profile_count_examples():
    assert profile_count(2, 3) == 6
    assert profile_count(4, 3) == 15
    assert profile_count(10, 2) == 11
    assert dpr_profile_count(4, 13) == 5915


@pytest.mark.parametrize("players", range(1, 7))
@pytest.mark.parametrize("strategies", range(1, 6))
def test_counts_match_enumeration(players, strategies):
    assert profile_count(players, strategies) == len(
        list(combinations_with_replacement(range(strategies), players))
    )
    others = len(list(combinations_with_replacement(range(strategies), players - 1)))
    assert dpr_profile_count(players, strategies) == strategies * others


def test_count_overflow_and_bad_input():
    with pytest.raises(CountOverflowError):
        profile_count(1000, 100)
    with pytest.raises(CountOverflowError):
        dpr_profile_count(1000, 100)
    with pytest.raises(ValueError):
        profile_count(0, 3)
    with pytest.raises(ValueError):
        dpr_profile_count(3, 0)


# ----------------------------------------------------------------------
# Games


def test_three_player_deviation_payoffs():
    roles = [RoleSpec(name="all", count=3, strategies=["A", "B"])]
    profiles = [
        ProfileEntry(counts={"all": {"A": 3}}, payoffs={"all": {"A": 2.0}}),
        ProfileEntry(counts={"all": {"A": 2, "B": 1}}, payoffs={"all": {"A": 1.0, "B": 0.0}}),
        ProfileEntry(counts={"all": {"A": 1, "B": 2}}, payoffs={"all": {"A": 0.0, "B": 0.0}}),
        ProfileEntry(counts={"all": {"B": 3}}, payoffs={"all": {"B": 0.0}}),
    ]
    game = EmpiricalGame(GameData(roles=roles, profiles=profiles))
    for p in (0.0, 0.3, 0.8, 1.0):
        payoffs = game.deviation_payoffs(profile(p, 1 - p))
        assert payoffs["all"] == pytest.approx([2 * p, 0.0])


def test_missing_profile_rejected():
    data = HAWK_DOVE.model_copy(update={"profiles": HAWK_DOVE.profiles[1:]})
    with pytest.raises(GameDataError):
        EmpiricalGame(data)


def test_game_file_round_trip(tmp_path):
    path = tmp_path / "hawk_dove.json"
    path.write_text(HAWK_DOVE.model_dump_json())
    game = EmpiricalGame.from_json(path)
    assert game.role_names == ["all"]
    assert (game.min_payoff, game.max_payoff) == (-1.0, 2.0)


def test_expected_payoffs_accept_models():
    game = EmpiricalGame.from_symmetric_matrix(RPS)
    mixed = MixedProfile(weights={"all": (1.0, 0.0, 0.0)})
    assert game.expected_payoffs(mixed) == {"all": 0.0}
    assert game.deviation_payoffs(mixed)["all"] == pytest.approx([0.0, 1.0, -1.0])


# ----------------------------------------------------------------------
# Replicator dynamics


def test_rock_paper_scissors_uniform_fixed_point():
    game = EmpiricalGame.from_symmetric_matrix(RPS)
    result = replicator_dynamics(game)
    assert result.converged and result.iterations == 1
    assert result.profile["all"] == pytest.approx([1 / 3] * 3)
    assert result.regret == pytest.approx(0.0, abs=1e-12)


def test_matching_pennies_regret():
    game = EmpiricalGame.from_bimatrix([[1, -1], [-1, 1]], [[-1, 1], [1, -1]])
    uniform = game.uniform_profile()
    assert regret(game, uniform) == pytest.approx(0.0)
    pure = {"row": np.array([1.0, 0.0]), "column": np.array([1.0, 0.0])}
    assert regret(game, pure) == pytest.approx(2.0)


def test_prisoners_dilemma_converges_to_defection():
    game = EmpiricalGame.from_symmetric_matrix([[3, 0], [5, 1]], strategies=["C", "D"])
    result = replicator_dynamics(game, profile(0.9, 0.1))
    assert result.converged
    assert result.profile["all"][1] == pytest.approx(1.0, abs=1e-6)
    assert result.regret < 1e-3


def test_hawk_dove_mixed_equilibrium():
    game = EmpiricalGame(HAWK_DOVE)
    result = replicator_dynamics(game, profile(0.2, 0.8))
    assert result.converged
    assert result.profile["all"] == pytest.approx([0.5, 0.5], abs=1e-6)


def test_step_shifts_fitness_by_the_game_minimum():
    game = EmpiricalGame(HAWK_DOVE)
    assert game.min_payoff == -1.0
    # fitness H = 1.4, D = 0.8; both shifted by +1
    step = replicator_step(game, profile(0.2, 0.8))
    assert step["all"] == pytest.approx([0.48 / 1.92, 1.44 / 1.92])


def test_less_fit_strategy_is_not_wiped_out_in_one_step():
    game = EmpiricalGame(HAWK_DOVE)
    current = profile(0.2, 0.8)
    for _ in range(5):
        current = replicator_step(game, current)
        assert current["all"].min() > 0.05


def test_steps_stay_on_simplex(rng):
    game = EmpiricalGame.from_symmetric_matrix(rng.normal(size=(4, 4)))
    current = game.random_profile(rng)
    for _ in range(50):
        current = replicator_step(game, current)
        assert current["all"].sum() == pytest.approx(1.0)
        assert np.all(current["all"] >= 0.0)


def test_zero_weights_are_degenerate():
    game = EmpiricalGame(HAWK_DOVE)
    with pytest.raises(DegenerateProfileError):
        replicator_step(game, profile(0.0, 0.0))


def test_positive_affine_payoff_change_keeps_trajectory():
    matrix = np.array([[-1.0, 2.0], [0.0, 1.0]])
    base = replicator_dynamics(EmpiricalGame.from_symmetric_matrix(matrix), profile(0.2, 0.8), max_iterations=40)
    scaled = replicator_dynamics(EmpiricalGame.from_symmetric_matrix(3 * matrix + 7), profile(0.2, 0.8), max_iterations=40)
    assert base.profile["all"] == pytest.approx(scaled.profile["all"], abs=1e-6)


def test_find_equilibria_deduplicates(rng):
    game = EmpiricalGame(HAWK_DOVE)
    found = find_equilibria(game, restarts=5, rng=rng)
    assert len(found) == 1
    assert found[0].profile["all"] == pytest.approx([0.5, 0.5], abs=1e-4)


def test_coordination_game_has_two_pure_equilibria(rng):
    game = EmpiricalGame.from_symmetric_matrix([[2, 0], [0, 1]])
    found = find_equilibria(game, restarts=20, rng=rng)
    supports = {tuple(np.round(r.profile["all"], 3)) for r in found}
    assert {(1.0, 0.0), (0.0, 1.0)} <= supports


def _check_random_games(count: int) -> None:
    rng = np.random.default_rng(11)
    for _ in range(count):
        game = EmpiricalGame.from_symmetric_matrix(rng.normal(size=(2, 2)))
        found = find_equilibria(game, restarts=3, rng=rng)
        assert found
        assert all(r.regret <= 1e-3 for r in found)


def test_random_games_yield_equilibria():
    _check_random_games(10)


@pytest.mark.slow
def test_random_games_yield_equilibria_at_scale():
    _check_random_games(100)


# ----------------------------------------------------------------------
# Market mixtures from game profiles


def market_game(background: list[str]) -> EmpiricalGame:
    roles = [
        RoleSpec(name="background", count=1, strategies=background),
        RoleSpec(name="market_maker", count=1, strategies=["MM(100,50,512)"]),
    ]
    profiles = [
        ProfileEntry(
            counts={"background": {label: 1}, "market_maker": {"MM(100,50,512)": 1}},
            payoffs={"background": {label: float(i)}, "market_maker": {"MM(100,50,512)": 0.0}},
        )
        for i, label in enumerate(background)
    ]
    return EmpiricalGame(GameData(roles=roles, profiles=profiles))


def test_mixture_from_profile():
    game = market_game(["ZI(0,250,0.8)", "ZI(0,500,1)", "ZI(0,65,0.8)"])
    weights = {"background": np.array([0.7, 0.2995, 0.0005]), "market_maker": np.array([1.0])}
    mixture = mixture_from_profile(game, weights, "found")
    assert [c.strategy.label for c in mixture.background] == ["ZI(0,250,0.8)", "ZI(0,500,1)"]
    assert sum(mixture.probabilities) == pytest.approx(1.0)
    assert mixture.market_maker.min_spread == 512


def test_mixture_from_profile_rejects_unknown_labels():
    game = market_game(["ZI(1,2,0.5)"])
    with pytest.raises(MarketConfigurationError):
        mixture_from_profile(game, {"background": np.array([1.0]), "market_maker": np.array([1.0])}, "bad")


def test_mixture_needs_a_market_maker():
    roles = [RoleSpec(name="background", count=1, strategies=["ZI(0,250,0.8)"])]
    profiles = [
        ProfileEntry(counts={"background": {"ZI(0,250,0.8)": 1}}, payoffs={"background": {"ZI(0,250,0.8)": 1.0}})
    ]
    game = EmpiricalGame(GameData(roles=roles, profiles=profiles))
    with pytest.raises(MarketConfigurationError):
        mixture_from_profile(game, game.uniform_profile(), "none")
    given = MmParams(num_rungs=5, rung_size=50, min_spread=256)
    mixture = mixture_from_profile(game, game.uniform_profile(), "given", market_maker=given)
    assert mixture.market_maker.num_rungs == 5


# ----------------------------------------------------------------------
# Command line


def test_egta_count_command(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(["egta", "count", "--players", "3", "--strategies", "2", "--reduced", "2"]) == 0
    out = capsys.readouterr().out
    assert "profiles: 4" in out
    assert "reduced profiles: 4" in out


def test_egta_regret_command(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    game = tmp_path / "game.json"
    game.write_text(HAWK_DOVE.model_dump_json())
    weights = tmp_path / "profile.json"
    weights.write_text('{"all": [0.5, 0.5]}')
    assert main(["egta", "regret", str(game), "--profile", str(weights)]) == 0
    assert "regret: 0" in capsys.readouterr().out


def test_egta_count_overflow_fails_cleanly(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["egta", "count", "--players", "1000", "--strategies", "100"]) == 1
