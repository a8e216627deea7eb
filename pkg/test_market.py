"""Order book, fundamental process, traders and the discrete-event market run."""

import numpy as np
import pytest
from scipy import stats

from exceptions import InvalidOrderError, MarketConfigurationError
from market import (
    AgentAccount,
    MarketSimulation,
    Order,
    OrderBook,
    cancel_agent_orders,
    mm_ladder,
    run_simulation,
    submit_order,
    zi_decide,
)
from market.accounts import (
    cumulative_private_value,
    draw_private_values,
    marginal_buy_value,
    marginal_sell_value,
)
from market.arrivals import conditional_next_arrival, interarrival, schedule_next_arrival
from market.fundamental import expected_final_fundamental, step_fundamental
from market.pricing import round_half_up
from models.market import MarketParams, MmParams, Side, ZiParams


# ----------------------------------------------------------------------
# Order book


def brute_force_match(stream):
    """Reference matcher: scan every resting order for the best counterparty."""
    resting, trades, seq = [], [], 0
    for kind, payload in stream:
        if kind == "cancel":
            resting = [r for r in resting if r["owner"] != payload]
            continue
        side, price, owner, time = payload
        if side is Side.BUY:
            candidates = [r for r in resting if r["side"] is Side.SELL and r["price"] <= price]
            key = lambda r: (r["price"], r["time"], r["seq"])  # noqa: E731
        else:
            candidates = [r for r in resting if r["side"] is Side.BUY and r["price"] >= price]
            key = lambda r: (-r["price"], r["time"], r["seq"])  # noqa: E731
        if candidates:
            best = min(candidates, key=key)
            resting.remove(best)
            buyer, seller = (owner, best["owner"]) if side is Side.BUY else (best["owner"], owner)
            trades.append((best["price"], buyer, seller))
        else:
            resting.append({"side": side, "price": price, "owner": owner, "time": time, "seq": seq})
        seq += 1
    return trades


def random_stream(rng: np.random.Generator, length: int):
    stream, time = [], 0
    for _ in range(length):
        time += int(rng.integers(0, 2))
        if rng.random() < 0.1:
            stream.append(("cancel", int(rng.integers(5))))
        else:
            side = Side.BUY if rng.random() < 0.5 else Side.SELL
            stream.append(("order", (side, int(rng.integers(95, 106)), int(rng.integers(5)), time)))
    return stream


def book_match(stream):
    book, trades = OrderBook(), []
    for kind, payload in stream:
        if kind == "cancel":
            cancel_agent_orders(book, payload)
            continue
        side, price, owner, time = payload
        for t in submit_order(book, Order(side, price, owner, time)):
            trades.append((t.price, t.buyer, t.seller))
        assert not book.is_crossed()
    return trades


def _check_streams(count: int) -> None:
    rng = np.random.default_rng(7)
    for _ in range(count):
        stream = random_stream(rng, int(rng.integers(1, 51)))
        assert book_match(stream) == brute_force_match(stream)


def test_book_matches_brute_force():
    _check_streams(300)


@pytest.mark.slow
def test_book_matches_brute_force_at_scale():
    _check_streams(10_000)


def test_trade_at_resting_price_with_time_priority():
    book = OrderBook()
    book.submit(Order(Side.SELL, 101, owner=1, time=0))
    book.submit(Order(Side.SELL, 101, owner=2, time=1))
    book.submit(Order(Side.SELL, 103, owner=3, time=0))

    trade = book.submit(Order(Side.BUY, 105, owner=9, time=2))
    assert (trade.price, trade.buyer, trade.seller) == (101, 9, 1)
    assert book.ask == 101
    assert book.best_ask().owner == 2


def test_resting_orders_define_quotes():
    book = OrderBook()
    assert book.bid is None and book.ask is None
    book.submit(Order(Side.BUY, 99, owner=1, time=0))
    book.submit(Order(Side.SELL, 102, owner=2, time=0))
    assert (book.bid, book.ask) == (99, 102)
    assert len(book) == 2


@pytest.mark.parametrize(
    "order",
    [
        Order(Side.BUY, 0, owner=1, time=0),
        Order(Side.SELL, -5, owner=1, time=0),
        Order(Side.BUY, 100, owner=1, time=0, quantity=2),
    ],
)
def test_invalid_orders_rejected(order):
    with pytest.raises(InvalidOrderError):
        OrderBook().submit(order)


def test_non_integer_price_rejected():
    with pytest.raises(InvalidOrderError):
        OrderBook().submit(Order(Side.BUY, 100.5, owner=1, time=0))


def test_cancel_agent_orders_only_touches_that_agent():
    book = OrderBook()
    book.submit(Order(Side.BUY, 99, owner=1, time=0))
    book.submit(Order(Side.BUY, 98, owner=2, time=0))
    book.submit(Order(Side.SELL, 105, owner=1, time=0))
    cancel_agent_orders(book, 1)
    assert [o.owner for o in book.orders()] == [2]
    assert book.bid == 98 and book.ask is None
    assert book.cancel_owner(1) == 0


# ----------------------------------------------------------------------
# Fundamental


def test_step_fundamental_formula_and_floor():
    params = MarketParams(horizon=10, bg_arrival_rate=0.01, kappa=0.05, r_bar=100_000.0)
    assert step_fundamental(90_000.0, params, 1000.0) == pytest.approx(0.05 * 100_000 + 0.95 * 91_000)
    assert step_fundamental(10.0, params, -1e9) == 0.0


def test_expected_final_fundamental_endpoints():
    params = MarketParams(horizon=100, bg_arrival_rate=0.01)
    assert expected_final_fundamental(95_000.0, 100, params) == 95_000.0
    far = MarketParams(horizon=100_000, bg_arrival_rate=0.01)
    assert expected_final_fundamental(50_000.0, 0, far) == pytest.approx(far.r_bar)


def _check_fundamental_expectation(pairs: int, trials: int) -> None:
    rng = np.random.default_rng(2024)
    params = MarketParams(horizon=60, bg_arrival_rate=0.01)
    std = np.sqrt(params.shock_variance)
    scores = []
    for _ in range(pairs):
        r_t, t = float(rng.uniform(80_000, 120_000)), int(rng.integers(0, params.horizon))
        values = np.full(trials, r_t)
        for _ in range(params.horizon - t):
            shocks = rng.normal(0.0, std, size=trials)
            values = np.maximum(0.0, params.kappa * params.r_bar + (1 - params.kappa) * (values + shocks))
        standard_error = values.std(ddof=1) / np.sqrt(trials)
        scores.append((values.mean() - expected_final_fundamental(r_t, t, params)) / standard_error)
    scores = np.abs(np.array(scores))
    # 3 standard errors per pair, allowing one miss across the family of pairs
    assert np.sum(scores > 3.0) <= 1
    assert scores.max() <= 4.0
    assert stats.chi2.sf(np.sum(scores ** 2), df=pairs) > 1e-3


def test_expected_final_fundamental_matches_monte_carlo():
    _check_fundamental_expectation(pairs=3, trials=20_000)


@pytest.mark.slow
def test_expected_final_fundamental_matches_monte_carlo_at_scale():
    _check_fundamental_expectation(pairs=20, trials=100_000)


# ----------------------------------------------------------------------
# Accounts, pricing and arrivals


def test_round_half_up():
    assert [round_half_up(v) for v in (2.5, 2.4, -2.5, -2.6, 3.0)] == [3, 2, -2, -3, 3]


def test_private_values_non_increasing(rng):
    values = draw_private_values(rng, 20, 5000.0)
    assert len(values) == 20
    assert np.all(np.diff(values) <= 0)


def test_marginal_values_and_edges():
    values = np.arange(20, 0, -1, dtype=float)  # 20, 19, ..., 1
    assert marginal_buy_value(values, 0) == 10.0
    assert marginal_sell_value(values, 0) == 11.0
    assert marginal_buy_value(values, 10) is None
    assert marginal_sell_value(values, -10) is None
    assert marginal_buy_value(values, 10, clamp=True) == 1.0
    assert cumulative_private_value(values, 2) == 10.0 + 9.0
    assert cumulative_private_value(values, -2) == -(12.0 + 11.0)


def test_account_payoff():
    account = AgentAccount(private_values=np.arange(20, 0, -1, dtype=float))
    account.record_buy(100)
    account.record_buy(101)
    account.record_sell(104)
    assert (account.inventory, account.cash) == (1, -97)
    assert account.payoff(100.0) == -97 + 100.0 + 10.0


def test_interarrival_mean(rng):
    gaps = np.array([interarrival(0.01, rng) for _ in range(20_000)])
    assert gaps.min() >= 1
    assert gaps.mean() == pytest.approx(100.0, rel=0.05)


def test_schedule_past_horizon(rng):
    assert schedule_next_arrival(995, 1e-6, 1000, rng) is None
    tick = schedule_next_arrival(10, 0.5, 1000, rng)
    assert 11 <= tick <= 1000


def test_conditional_arrival_never_in_the_past(rng):
    for _ in range(500):
        tick = conditional_next_arrival(100, 180, 0.01, 10_000, rng, include_now=False)
        assert tick is None or tick > 180
        tick = conditional_next_arrival(100, 180, 0.01, 10_000, rng, include_now=True)
        assert tick is None or tick >= 180


# ----------------------------------------------------------------------
# Traders


def flat_account(inventory: int = 0) -> AgentAccount:
    return AgentAccount(inventory=inventory, private_values=np.zeros(20))


def test_zi_limit_orders():
    zi = ZiParams(r_min=0, r_max=500, eta=1.0)
    buy = zi_decide(flat_account(), zi, Side.BUY, 100_000.0, None, None, 200.0)
    sell = zi_decide(flat_account(), zi, Side.SELL, 100_000.0, None, None, 200.0)
    assert (buy.side, buy.price, buy.market) == (Side.BUY, 99_800, False)
    assert (sell.side, sell.price, sell.market) == (Side.SELL, 100_200, False)


def test_zi_takes_quote_past_threshold():
    zi = ZiParams(r_min=0, r_max=500, eta=0.5)
    # value 100000, ask 99880: surplus 120 >= 0.5 * 200
    decision = zi_decide(flat_account(), zi, Side.BUY, 100_000.0, None, 99_880, 200.0)
    assert decision.market and decision.price == 99_880
    # surplus 50 < 100: rest a limit order instead
    decision = zi_decide(flat_account(), zi, Side.BUY, 100_000.0, None, 99_950, 200.0)
    assert not decision.market and decision.price == 99_800


def test_zi_respects_inventory_limit():
    zi = ZiParams(r_min=0, r_max=500, eta=1.0)
    assert zi_decide(flat_account(10), zi, Side.BUY, 100_000.0, None, None, 100.0) is None
    assert zi_decide(flat_account(-10), zi, Side.SELL, 100_000.0, None, None, 100.0) is None


def test_mm_ladder_shape():
    ladder = mm_ladder(100_000.4, MmParams(num_rungs=2, rung_size=50, min_spread=512))
    assert [(d.side, d.price) for d in ladder] == [
        (Side.SELL, 100_256),
        (Side.BUY, 99_744),
        (Side.SELL, 100_306),
        (Side.BUY, 99_694),
    ]


def test_mm_ladder_odd_spread_rounds_up():
    ladder = mm_ladder(1000.0, MmParams(num_rungs=1, rung_size=10, min_spread=5))
    assert [d.price for d in ladder] == [1003, 997]


# ----------------------------------------------------------------------
# Market runs


def test_run_simulation_is_deterministic(small_params, zi, mm):
    strategies = [zi] * small_params.n_background
    first = run_simulation(small_params, strategies, mm, seed=11)
    second = run_simulation(small_params, strategies, mm, seed=11)
    assert np.array_equal(first, second)
    assert len(first) == small_params.n_background + 1


def test_run_conserves_cash_and_shares(small_params, zi, mm):
    simulation = MarketSimulation(small_params, [zi] * small_params.n_background, mm, seed=3)
    simulation.run()
    assert simulation.finished
    assert sum(a.inventory for a in simulation.accounts) == 0
    assert sum(a.cash for a in simulation.accounts) == 0
    assert not simulation.book.is_crossed()
    assert all(abs(a.inventory) <= small_params.max_inventory for a in simulation.accounts[:-1])


def priority_key(order: Order) -> tuple[int, int, int]:
    price = -order.price if order.side is Side.BUY else order.price
    return price, order.time, order.seq


def test_invariants_hold_after_every_event(small_params, zi, mm):
    simulation = MarketSimulation(small_params, [zi] * small_params.n_background, mm, seed=17)
    events = 0
    while (agent := simulation.step()) is not None:
        events += 1
        assert sum(a.inventory for a in simulation.accounts) == 0
        assert sum(a.cash for a in simulation.accounts) == 0
        assert not simulation.book.is_crossed()
        # Every resting order was placed at its owner's latest arrival
        for order in simulation.book.orders():
            assert order.time == simulation.last_arrival[order.owner]
        assert all(len(simulation.book.orders(i)) <= 1 for i in range(small_params.n_background))
        assert simulation.last_arrival[agent] == simulation.time
    assert simulation.finished and events == simulation.arrival_count > 0


def test_transactions_follow_price_time_priority(small_params, zi, mm):
    simulation = MarketSimulation(
        small_params, [zi] * small_params.n_background, mm, seed=23, record_transactions=True
    )
    checked = 0
    while True:
        resting = {o.seq: o for o in simulation.book.orders()}
        logged = len(simulation.transactions)
        agent = simulation.step()
        if agent is None:
            break
        # The arriving agent cancels its own orders before it submits
        resting = {seq: o for seq, o in resting.items() if o.owner != agent}
        for trade in simulation.transactions[logged:]:
            filled = resting.pop(trade.resting_seq)
            assert filled.price == trade.price
            same_side = [o for o in resting.values() if o.side is filled.side]
            assert all(priority_key(filled) < priority_key(o) for o in same_side)
            checked += 1
    assert checked == simulation.trade_count > 0


def test_run_records_trades_at_resting_prices(small_params, zi, mm):
    simulation = MarketSimulation(
        small_params, [zi] * small_params.n_background, mm, seed=5, record_transactions=True
    )
    simulation.run()
    assert len(simulation.transactions) == simulation.trade_count
    assert all(t.price > 0 and t.buyer != t.seller for t in simulation.transactions)


@pytest.mark.parametrize("count_offset", [-1, 1])
def test_wrong_background_count(small_params, zi, mm, count_offset):
    with pytest.raises(MarketConfigurationError):
        MarketSimulation(small_params, [zi] * (small_params.n_background + count_offset), mm, seed=0)


def test_missing_strategies(small_params, zi, mm):
    background = [zi] * small_params.n_background
    with pytest.raises(MarketConfigurationError):
        MarketSimulation(small_params, background, None, seed=0)
    background[2] = None
    with pytest.raises(MarketConfigurationError):
        MarketSimulation(small_params, background, mm, seed=0, self_index=0)


def test_payoffs_need_a_finished_run(small_params, zi, mm):
    simulation = MarketSimulation(small_params, [zi] * small_params.n_background, mm, seed=0)
    with pytest.raises(RuntimeError):
        simulation.payoffs()


def test_self_agent_pauses_and_resumes(small_params, zi, mm):
    background = [None] + [zi] * (small_params.n_background - 1)
    simulation = MarketSimulation(small_params, background, mm, seed=9, self_index=0)
    pauses = 0
    paused = simulation.run()
    while paused:
        pauses += 1
        assert simulation.awaiting_self
        assert simulation.book.orders(0) == []
        with pytest.raises(RuntimeError):
            simulation.run()
        paused = simulation.resume(None)
    assert simulation.finished and pauses > 0
    assert simulation.self_account.inventory == 0


def test_clone_is_independent(small_params, zi, mm):
    background = [None] + [zi] * (small_params.n_background - 1)
    simulation = MarketSimulation(small_params, background, mm, seed=21, self_index=0)
    assert simulation.run()
    before = (simulation.time, simulation.arrival_count, len(simulation.book))

    first, second = simulation.clone(99), simulation.clone(99)
    for twin in (first, second):
        while twin.resume(None):
            pass
    assert np.array_equal(first.payoffs(), second.payoffs())
    assert (simulation.time, simulation.arrival_count, len(simulation.book)) == before
    assert simulation.awaiting_self and not simulation.finished


def test_clones_with_different_seeds_diverge(small_params, zi, mm):
    background = [None] + [zi] * (small_params.n_background - 1)
    simulation = MarketSimulation(small_params, background, mm, seed=21, self_index=0)
    assert simulation.run()

    futures = set()
    for seed in range(8):
        twin = simulation.clone(seed)
        while twin.resume(None):
            pass
        futures.add(tuple(twin.payoffs()))
    assert len(futures) == 8


def test_redrawn_arrivals_are_memoryless(zi, mm):
    # Long horizon so no redrawn arrival is cut off
    params = MarketParams(horizon=5000, bg_arrival_rate=0.05, n_background=6, mm_arrival_rate=0.02)
    background = [None] + [zi] * (params.n_background - 1)
    simulation = MarketSimulation(params, background, mm, seed=4, self_index=0)
    assert simulation.run()
    agent = simulation.mm_index
    last, waited = simulation.last_arrival[agent], simulation.time - simulation.last_arrival[agent]

    redrawn = []
    for seed in range(3000):
        twin = simulation.clone(seed)
        redrawn.append(next(tick for tick, a in twin.events if a == agent) - last)

    # Fresh gaps, kept only when the agent would not have arrived yet
    rng = np.random.default_rng(0)
    fresh = np.array([interarrival(params.mm_arrival_rate, rng) for _ in range(60_000)])
    fresh = fresh[fresh >= waited]
    assert min(redrawn) >= waited
    assert stats.ks_2samp(redrawn, fresh).pvalue > 1e-3


def test_a1k_self_agent_often_never_arrives(rng):
    # First arrival past T: rounded gap > 1000, i.e. the raw draw is at least 1000.5
    rate, horizon, trials = 0.0005, 1000, 100_000
    expected = np.exp(-rate * (horizon + 0.5))
    misses = sum(schedule_next_arrival(0, rate, horizon, rng) is None for _ in range(trials))
    standard_error = np.sqrt(expected * (1 - expected) / trials)
    assert abs(misses / trials - expected) <= 3 * standard_error
    assert misses / trials == pytest.approx(0.61, abs=0.01)


def test_a1k_runs_without_a_self_arrival(a1k_env):
    rng = np.random.default_rng(31)
    runs = 400
    expected = np.exp(-0.0005 * 1000.5)
    misses = sum(a1k_env.sample_initial(rng).terminal for _ in range(runs))
    assert abs(misses / runs - expected) <= 3 * np.sqrt(expected * (1 - expected) / runs)
