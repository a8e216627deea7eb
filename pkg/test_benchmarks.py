"""Gridworld, Sailing, Battleship and RockSample generative models."""

import math

import numpy as np
import pytest
from scipy import stats

from environments.battleship import Battleship, BattleshipState, ship_masks
from environments.gridworld import GridWorld
from environments.rocksample import RockSample, RockState
from environments.sailing import NO_TACK, Sailing, SailingState, tack_of, wind_angle
from exceptions import InvalidActionError


# ----------------------------------------------------------------------
# Gridworld


def test_gridworld_layout():
    env = GridWorld()
    assert len(env.starts) == 46
    assert env.goal not in env.starts
    assert not env.walls & set(env.starts)


def test_gridworld_optimum():
    env = GridWorld()
    assert env.optimal_mean_return() == pytest.approx(-404 / 46)
    assert env.shortest_distances()[(8, 1)] == 1


def test_gridworld_blocked_moves_stay_put():
    env = GridWorld()
    assert env.move((0, 0), "up") == (0, 0)
    assert env.move((1, 1), "right") == (1, 1)  # wall at (2, 1)
    assert env.move((1, 1), "up") == (1, 0)


def test_gridworld_step_and_goal(rng):
    env = GridWorld()
    sample = env.generate_sample((8, 1), "up", rng)
    assert sample.terminal and sample.reward == -1.0
    assert sample.state == env.goal


# ----------------------------------------------------------------------
# Sailing


def test_sailing_move_costs():
    env = Sailing()
    assert env.move_cost(2, 0, NO_TACK) == pytest.approx(3.0)
    assert env.move_cost(1, 0, NO_TACK) == pytest.approx(4.0 * math.sqrt(2.0))
    assert env.move_cost(4, 0, NO_TACK) == pytest.approx(1.0)
    # east then west across a north wind switches tack
    assert tack_of(2, 0) != tack_of(6, 0)
    assert env.move_cost(6, 0, tack_of(2, 0)) == pytest.approx(6.0)


def test_wind_angles():
    assert wind_angle(0, 0) == 0
    assert wind_angle(7, 1) == 2
    assert wind_angle(4, 0) == 4
    assert tack_of(4, 0) == NO_TACK


def test_sailing_into_wind_is_illegal(rng):
    env = Sailing()
    state = SailingState(5, 5, wind=3, tack=NO_TACK, steps=0)
    assert 3 not in env.legal_actions(state)
    with pytest.raises(InvalidActionError):
        env.generate_sample(state, 3, rng)


def test_sailing_edges_restrict_headings():
    env = Sailing()
    state = SailingState(0, 0, wind=4, tack=NO_TACK, steps=0)
    assert set(env.legal_actions(state)) == {0, 1, 2}


def test_sailing_reaches_goal(rng):
    env = Sailing()
    sample = env.generate_sample(SailingState(18, 18, wind=0, tack=NO_TACK, steps=3), 1, rng)
    assert sample.terminal
    assert sample.reward == pytest.approx(-4.0 * math.sqrt(2.0))


def test_wind_shift_distribution(rng):
    env = Sailing()
    draws = np.array([env.shift_wind(0, rng) for _ in range(10_000)])
    observed = [np.sum(draws == 0), np.sum(draws == 1), np.sum(draws == 7)]
    assert sum(observed) == len(draws)
    expected = [0.4 * len(draws), 0.3 * len(draws), 0.3 * len(draws)]
    assert stats.chisquare(observed, expected).pvalue > 1e-3


# ----------------------------------------------------------------------
# Battleship


def test_ship_placements():
    assert len(ship_masks(10, 5)) == 120
    assert len(ship_masks(10, 2)) == 180


def test_fleet_covers_fourteen_cells(rng):
    env = Battleship()
    for _ in range(20):
        assert bin(env.place_fleet(rng)).count("1") == 14


def test_sinking_with_perfect_aim(rng):
    env = Battleship()
    sample = env.sample_initial(rng)
    ships = sample.state.ships
    total = 0.0
    for cell in range(env.cells):
        if ships >> cell & 1:
            sample = env.generate_sample(sample.state, cell, rng)
            assert sample.observation is True
            total += sample.reward
    assert sample.terminal
    assert total == pytest.approx(86.0)


def test_repeat_strike_rejected(rng):
    env = Battleship()
    state = BattleshipState(ships=0b111, struck=0b1)
    assert 0 not in env.legal_actions(state)
    with pytest.raises(InvalidActionError):
        env.generate_sample(state, 0, rng)
    with pytest.raises(InvalidActionError):
        env.generate_sample(state, env.cells, rng)


def test_miss_observation(rng):
    env = Battleship()
    sample = env.generate_sample(BattleshipState(ships=0b110, struck=0), 0, rng)
    assert sample.observation is False and not sample.terminal
    assert sample.reward == -1.0


# ----------------------------------------------------------------------
# RockSample


def test_sensor_accuracy():
    env = RockSample()
    assert env.sensor_accuracy(0.0) == 1.0
    assert env.sensor_accuracy(20.0) == pytest.approx(0.75)
    assert 0.5 < env.sensor_accuracy(200.0) < 0.51


def test_rocksample_legality():
    env = RockSample()
    start = RockState(0, 3, good=0, steps=0)
    legal = env.legal_actions(start)
    assert "west" not in legal and "sample" not in legal
    assert {"north", "south", "east", "check-0"} <= set(legal)
    assert "sample" in env.legal_actions(RockState(2, 0, good=0, steps=0))


def test_rocksample_exit(rng):
    env = RockSample()
    sample = env.generate_sample(RockState(6, 2, good=0, steps=5), "east", rng)
    assert sample.terminal and sample.reward == 10.0


def test_sampling_spends_a_good_rock(rng):
    env = RockSample()
    state = RockState(2, 0, good=0b1, steps=0)
    first = env.generate_sample(state, "sample", rng)
    assert first.reward == 10.0 and first.state.good == 0
    second = env.generate_sample(first.state, "sample", rng)
    assert second.reward == -10.0


def test_check_at_the_rock_is_exact(rng):
    env = RockSample()
    good = env.generate_sample(RockState(2, 0, good=0b1, steps=0), "check-0", rng)
    bad = env.generate_sample(RockState(2, 0, good=0b0, steps=0), "check-0", rng)
    assert (good.observation, bad.observation) == ("good", "bad")
    assert good.state.good == 0b1


def test_rocksample_step_limit(rng):
    env = RockSample()
    sample = env.generate_sample(RockState(0, 3, good=0, steps=env.max_steps - 1), "north", rng)
    assert sample.terminal and sample.reward == 0.0


def test_illegal_move_rejected(rng):
    env = RockSample()
    with pytest.raises(InvalidActionError):
        env.generate_sample(RockState(0, 3, good=0, steps=0), "west", rng)
