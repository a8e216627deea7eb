"""Unit-order limit order book with price-time priority."""

import heapq
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from exceptions import InvalidOrderError
from models.market import Side


@dataclass(slots=True)
class Order:
    """A resting or incoming unit limit order."""

    side: Side
    price: int
    owner: int
    time: int
    quantity: int = 1
    seq: int = -1  # assigned by the book on submission


@dataclass(frozen=True, slots=True)
class Transaction:
    """One unit traded at the resting order's price."""

    price: int
    buyer: int
    seller: int
    time: int
    resting_seq: int
    incoming_seq: int


class OrderBook:
    """
    Two priority queues of resting unit orders.

    BUY orders rank by highest price then earliest time; SELL orders by lowest
    price then earliest time. Submission sequence breaks remaining ties.
    Cancelled orders are dropped lazily when they reach the top of a heap.
    """

    def __init__(self) -> None:
        self._buys: list[tuple[int, int, int]] = []   # (-price, time, seq)
        self._sells: list[tuple[int, int, int]] = []  # (price, time, seq)
        self._live: dict[int, Order] = {}
        self._by_owner: dict[int, set[int]] = defaultdict(set)
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self._live)

    def _top(self, heap: list[tuple[int, int, int]]) -> Optional[Order]:
        while heap:
            seq = heap[0][2]
            order = self._live.get(seq)
            if order is not None:
                return order
            heapq.heappop(heap)
        return None

    def best_bid(self) -> Optional[Order]:
        return self._top(self._buys)

    def best_ask(self) -> Optional[Order]:
        return self._top(self._sells)

    @property
    def bid(self) -> Optional[int]:
        order = self.best_bid()
        return None if order is None else order.price

    @property
    def ask(self) -> Optional[int]:
        order = self.best_ask()
        return None if order is None else order.price

    def orders(self, owner: Optional[int] = None) -> list[Order]:
        """Resting orders, optionally only those of one owner, in submission order."""
        if owner is None:
            return sorted(self._live.values(), key=lambda o: o.seq)
        return sorted((self._live[s] for s in self._by_owner.get(owner, ())), key=lambda o: o.seq)

    def submit(self, order: Order) -> Optional[Transaction]:
        """
        Match an incoming unit order against the best opposite order, or rest it.

        Args:
            order: Incoming order; its seq is assigned here

        Returns:
            The transaction if the order crossed, otherwise None

        Raises:
            InvalidOrderError: non-positive or non-integer price, or non-unit quantity
        """
        if order.quantity != 1:
            raise InvalidOrderError(f"Only unit orders are supported, got quantity {order.quantity}")
        if not isinstance(order.price, int) or order.price <= 0:
            raise InvalidOrderError(f"Order price must be a positive integer, got {order.price!r}")

        order.seq = self._next_seq
        self._next_seq += 1

        if order.side is Side.BUY:
            resting = self.best_ask()
            if resting is not None and order.price >= resting.price:
                self._remove(resting.seq)
                return Transaction(resting.price, order.owner, resting.owner, order.time, resting.seq, order.seq)
            heapq.heappush(self._buys, (-order.price, order.time, order.seq))
        else:
            resting = self.best_bid()
            if resting is not None and order.price <= resting.price:
                self._remove(resting.seq)
                return Transaction(resting.price, resting.owner, order.owner, order.time, resting.seq, order.seq)
            heapq.heappush(self._sells, (order.price, order.time, order.seq))

        self._live[order.seq] = order
        self._by_owner[order.owner].add(order.seq)
        return None

    def _remove(self, seq: int) -> None:
        order = self._live.pop(seq)
        owned = self._by_owner[order.owner]
        owned.discard(seq)
        if not owned:
            del self._by_owner[order.owner]

    def cancel_owner(self, owner: int) -> int:
        """Cancel every resting order of one owner; returns how many were removed."""
        seqs = self._by_owner.pop(owner, None)
        if not seqs:
            return 0
        for seq in seqs:
            del self._live[seq]
        self._compact()
        return len(seqs)

    def _compact(self) -> None:
        # Rebuild once stale heap entries dominate
        if len(self._buys) + len(self._sells) > 2 * len(self._live) + 64:
            self._buys = [entry for entry in self._buys if entry[2] in self._live]
            self._sells = [entry for entry in self._sells if entry[2] in self._live]
            heapq.heapify(self._buys)
            heapq.heapify(self._sells)

    def is_crossed(self) -> bool:
        bid, ask = self.bid, self.ask
        return bid is not None and ask is not None and bid >= ask


def submit_order(book: OrderBook, order: Order) -> list[Transaction]:
    """Submit one order; returns the (zero or one) resulting transactions."""
    trade = book.submit(order)
    return [] if trade is None else [trade]


def cancel_agent_orders(book: OrderBook, agent: int) -> OrderBook:
    """Remove every resting order owned by agent; other orders are untouched."""
    book.cancel_owner(agent)
    return book
