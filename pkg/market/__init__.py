"""Continuous double auction simulator."""

from market.accounts import AgentAccount
from market.order_book import Order, OrderBook, Transaction, cancel_agent_orders, submit_order
from market.simulator import MarketSimulation, run_simulation
from market.traders import OrderDecision, mm_ladder, zi_decide

__all__ = [
    "AgentAccount",
    "Order",
    "OrderBook",
    "Transaction",
    "cancel_agent_orders",
    "submit_order",
    "MarketSimulation",
    "run_simulation",
    "OrderDecision",
    "mm_ladder",
    "zi_decide",
]
