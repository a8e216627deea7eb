"""
Discrete-event continuous double auction run.

Agents 0..n_background-1 are background traders, agent n_background is the
market maker. One background slot may be left to an outside controller (the
self agent): the run then pauses at each of its arrivals until resume() is
called with its order.
"""

import heapq
import pickle
from typing import Optional, Sequence

import numpy as np

from config.logging_config import get_logger
from exceptions import MarketConfigurationError
from market.accounts import AgentAccount, draw_private_values
from market.arrivals import conditional_next_arrival, schedule_next_arrival
from market.fundamental import expected_final_fundamental
from market.order_book import Order, OrderBook, Transaction
from market.traders import OrderDecision, mm_ladder, zi_decide
from models.market import MarketParams, MmParams, Side, ZiParams

# Setup logging
logger = get_logger(__name__)


class MarketSimulation:
    """Mutable state of one market run plus its event loop."""

    def __init__(
        self,
        params: MarketParams,
        background: Sequence[Optional[ZiParams]],
        market_maker: MmParams,
        seed: int | np.random.SeedSequence,
        self_index: Optional[int] = None,
        assign_roles: bool = False,
        record_transactions: bool = False,
    ):
        """
        Set up accounts, private values and first arrivals.

        Args:
            params: Market parameters
            background: One strategy per background trader; None only at self_index
            market_maker: Ladder parameters
            seed: Seed for the run's generator
            self_index: Background slot controlled from outside, if any
            assign_roles: Draw a BUY/SELL role for the self agent at each arrival
            record_transactions: Keep the full transaction list (tests and traces)

        Raises:
            MarketConfigurationError: wrong number of strategies or a missing one
        """
        if market_maker is None:
            raise MarketConfigurationError("A market maker strategy is required")
        if len(background) != params.n_background:
            raise MarketConfigurationError(
                f"Expected {params.n_background} background strategies, got {len(background)}"
            )
        if self_index is not None and not 0 <= self_index < params.n_background:
            raise MarketConfigurationError(f"Self index {self_index} is not a background slot")
        missing = [i for i, s in enumerate(background) if s is None and i != self_index]
        if missing:
            raise MarketConfigurationError(f"Background traders {missing} have no strategy")

        self.params = params
        self.background = list(background)
        self.market_maker = market_maker
        self.self_index = self_index
        self.assign_roles = assign_roles
        self.record_transactions = record_transactions

        self.rng = np.random.default_rng(seed)
        self.book = OrderBook()
        self.mm_index = params.n_background
        self.accounts = [
            AgentAccount(private_values=draw_private_values(
                self.rng, params.private_value_count, params.private_value_std
            ))
            for _ in range(params.n_background)
        ]
        self.accounts.append(AgentAccount())

        self.time = 0
        self.fundamental = params.r_bar
        self._fundamental_tick = 0
        self._shock_std = float(np.sqrt(params.shock_variance))

        self.last_arrival = [0] * (params.n_background + 1)
        self.events: list[tuple[int, int]] = []
        for agent in range(params.n_background + 1):
            self._schedule(agent)

        self.transactions: list[Transaction] = []
        self.trade_count = 0
        self.arrival_count = 0
        self.self_role: Optional[Side] = None
        self.awaiting_self = False
        self.finished = False

    # ------------------------------------------------------------------
    # Views

    @property
    def r_hat(self) -> float:
        """Expected final fundamental at the current tick."""
        return expected_final_fundamental(self.fundamental, self.time, self.params)

    @property
    def self_account(self) -> AgentAccount:
        if self.self_index is None:
            raise MarketConfigurationError("This run has no self agent")
        return self.accounts[self.self_index]

    # ------------------------------------------------------------------
    # Event loop

    def _rate(self, agent: int) -> float:
        return self.params.mm_arrival_rate if agent == self.mm_index else self.params.bg_arrival_rate

    def _schedule(self, agent: int) -> None:
        tick = schedule_next_arrival(self.last_arrival[agent], self._rate(agent), self.params.horizon, self.rng)
        if tick is not None:
            heapq.heappush(self.events, (tick, agent))

    def _advance_fundamental(self, tick: int) -> None:
        steps = tick - self._fundamental_tick
        if steps <= 0:
            return
        kappa, r_bar = self.params.kappa, self.params.r_bar
        value = self.fundamental
        for shock in self.rng.normal(0.0, self._shock_std, size=steps):
            value = max(0.0, kappa * r_bar + (1.0 - kappa) * (value + shock))
        self.fundamental = value
        self._fundamental_tick = tick

    def run(self) -> bool:
        """
        Process arrivals in (tick, agent index) order.

        Returns:
            True when paused at a self-agent arrival, False once the horizon is reached
        """
        while self.step() is not None:
            if self.awaiting_self:
                return True
        return False

    def step(self) -> Optional[int]:
        """
        Process the next arrival.

        Returns:
            The arriving agent, or None once the horizon is reached
        """
        if self.finished:
            return None
        if self.awaiting_self:
            raise RuntimeError("Self agent is waiting; call resume() first")
        if not self.events:
            self._finish()
            return None

        tick, agent = heapq.heappop(self.events)
        self.time = tick
        self._advance_fundamental(tick)
        self.last_arrival[agent] = tick
        self.arrival_count += 1

        if agent == self.self_index:
            # The self agent observes the book without its own stale order
            self.book.cancel_owner(agent)
            self.awaiting_self = True
            if self.assign_roles:
                self.self_role = Side.BUY if self.rng.random() < 0.5 else Side.SELL
            return agent

        self._act(agent)
        self._schedule(agent)
        return agent

    def resume(self, decision: Optional[OrderDecision]) -> bool:
        """
        Apply the self agent's choice and continue to its next arrival or the horizon.

        The self agent's previous resting order was cancelled when it arrived.
        """
        if not self.awaiting_self:
            raise RuntimeError("Self agent is not waiting for a decision")
        self.awaiting_self = False
        if decision is not None:
            self._submit(self.self_index, decision)
        self._schedule(self.self_index)
        return self.run()

    def _act(self, agent: int) -> None:
        self.book.cancel_owner(agent)
        r_hat = self.r_hat

        if agent == self.mm_index:
            for decision in mm_ladder(r_hat, self.market_maker):
                self._submit(agent, decision)
            return

        zi = self.background[agent]
        side = Side.BUY if self.rng.random() < 0.5 else Side.SELL
        draw = self.rng.uniform(zi.r_min, zi.r_max)
        decision = zi_decide(self.accounts[agent], zi, side, r_hat, self.book.bid, self.book.ask, draw)
        if decision is not None:
            self._submit(agent, decision)

    def _submit(self, agent: int, decision: OrderDecision) -> None:
        trade = self.book.submit(Order(decision.side, decision.price, agent, self.time))
        if trade is None:
            return
        self.accounts[trade.buyer].record_buy(trade.price)
        self.accounts[trade.seller].record_sell(trade.price)
        self.trade_count += 1
        if self.record_transactions:
            self.transactions.append(trade)

    def _finish(self) -> None:
        self.time = self.params.horizon
        self._advance_fundamental(self.params.horizon)
        self.finished = True
        logger.debug(
            f"Run finished: {self.arrival_count} arrivals, {self.trade_count} trades, "
            f"r_T={self.fundamental:.1f}"
        )

    # ------------------------------------------------------------------
    # Results

    def payoffs(self) -> np.ndarray:
        """Per-agent payoff; background traders include held private value, the MM does not."""
        if not self.finished:
            raise RuntimeError("Payoffs are only defined once the run reaches the horizon")
        return np.array([account.payoff(self.fundamental) for account in self.accounts])

    # ------------------------------------------------------------------
    # Checkpointing

    def snapshot(self) -> bytes:
        return pickle.dumps(self, protocol=pickle.HIGHEST_PROTOCOL)

    def clone(self, seed: int | np.random.SeedSequence) -> "MarketSimulation":
        """
        Independent copy with a fresh generator and freshly drawn pending arrivals.

        The copy shares nothing with the original. Pending arrivals of every
        agent other than a waiting self agent are redrawn from their law given
        the time elapsed since each agent's last arrival.
        """
        twin: MarketSimulation = pickle.loads(self.snapshot())
        twin.rng = np.random.default_rng(seed)
        twin._redraw_pending_arrivals()
        return twin

    def _redraw_pending_arrivals(self) -> None:
        self.events = []
        if self.finished:
            return
        for agent in range(self.params.n_background + 1):
            if self.awaiting_self and agent == self.self_index:
                continue
            # Agents after the self agent at this tick have not acted yet
            include_now = not self.awaiting_self or agent > self.self_index
            tick = conditional_next_arrival(
                self.last_arrival[agent], self.time, self._rate(agent), self.params.horizon, self.rng, include_now
            )
            if tick is not None:
                heapq.heappush(self.events, (tick, agent))


def run_simulation(
    params: MarketParams,
    background_strategies: Sequence[ZiParams],
    mm: MmParams,
    seed: int | np.random.SeedSequence,
) -> np.ndarray:
    """
    Run one market to the horizon with every agent on a fixed strategy.

    Args:
        params: Market parameters
        background_strategies: One ZI strategy per background trader
        mm: Market maker ladder
        seed: Run seed; identical seeds give identical payoffs

    Returns:
        Payoffs indexed by agent (market maker last)

    Raises:
        MarketConfigurationError: missing or miscounted strategies
    """
    simulation = MarketSimulation(params, background_strategies, mm, seed)
    simulation.run()
    return simulation.payoffs()
