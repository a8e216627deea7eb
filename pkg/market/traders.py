"""Background trader (ZI with reentry) and ladder market maker decision rules."""

import math
from dataclasses import dataclass
from typing import Optional

from market.accounts import AgentAccount
from market.pricing import round_half_up
from models.market import MmParams, Side, ZiParams


@dataclass(frozen=True, slots=True)
class OrderDecision:
    """Price and side an agent wants to submit; market orders are priced at the quote."""

    side: Side
    price: int
    market: bool = False


def zi_decide(
    account: AgentAccount,
    zi: ZiParams,
    side: Side,
    r_hat: float,
    bid: Optional[int],
    ask: Optional[int],
    surplus_draw: float,
) -> Optional[OrderDecision]:
    """
    ZI-with-reentry order for one arrival.

    Values one unit at r_hat plus the marginal private value for the side, then
    demands surplus_draw below (BUY) or above (SELL) that value. If trading at
    the opposite quote right now already yields at least eta * surplus_draw,
    it takes the quote instead.

    Args:
        account: The trader's account (inventory and private values)
        zi: Strategy parameters
        side: Side assigned by the arrival coin flip
        r_hat: Expected final fundamental
        bid: Best resting BUY price, if any
        ask: Best resting SELL price, if any
        surplus_draw: Uniform draw from [r_min, r_max]

    Returns:
        The order to submit, or None at the inventory limit or for a non-positive price
    """
    threshold = zi.eta * surplus_draw
    if side is Side.BUY:
        private = account.buy_value()
        if private is None:
            return None
        value = r_hat + private
        if ask is not None and value - ask >= threshold:
            return OrderDecision(Side.BUY, ask, market=True)
        price = round_half_up(value - surplus_draw)
    else:
        private = account.sell_value()
        if private is None:
            return None
        value = r_hat + private
        if bid is not None and bid - value >= threshold:
            return OrderDecision(Side.SELL, bid, market=True)
        price = round_half_up(value + surplus_draw)

    if price <= 0:
        return None
    return OrderDecision(side, price)


def mm_ladder(r_hat: float, mm: MmParams) -> list[OrderDecision]:
    """
    Symmetric ladder around the rounded expected final fundamental.

    Innermost rungs sit ceil(min_spread / 2) away from the center, further rungs
    rung_size apart. Rungs come innermost first, SELL before BUY; BUY prices
    are floored at 1.
    """
    center = round_half_up(r_hat)
    half_spread = math.ceil(mm.min_spread / 2)
    ladder = []
    for j in range(mm.num_rungs):
        offset = half_spread + j * mm.rung_size
        ladder.append(OrderDecision(Side.SELL, center + offset))
        ladder.append(OrderDecision(Side.BUY, max(1, center - offset)))
    return ladder
