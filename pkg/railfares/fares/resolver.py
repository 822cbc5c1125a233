# railfares/fares/resolver.py
"""
Fare lookup for one station pair.

A journey from station a to station b is priced by every flow o->d with o a
fare point containing a and d one containing b, plus every REVERSIBLE flow
d->o read backwards. The cheapest such fare for the ticket type wins.
"""

from __future__ import annotations

from dataclasses import dataclass

from railfares.errors import NoFlowError
from railfares.feed.bundle import FeedBundle
from railfares.feed.models import Direction


@dataclass(frozen=True, slots=True)
class CandidateFare:
    flow_id: int
    fare_pence: int
    via_origin_code: str
    via_dest_code: str
    reversed: bool


def _sort_key(c: CandidateFare) -> tuple[int, int, bool]:
    return (c.fare_pence, c.flow_id, c.reversed)


def candidate_fares(
    bundle: FeedBundle, origin_nlc: str, dest_nlc: str, ticket_code: str
) -> list[CandidateFare]:
    """Every fare of `ticket_code` that prices origin -> dest, cheapest first."""
    origins = bundle.points_containing(origin_nlc)
    dests = bundle.points_containing(dest_nlc)
    bundle.require_ticket(ticket_code)
    if origin_nlc == dest_nlc:
        return []

    out: list[CandidateFare] = []
    for o in origins:
        for d in dests:
            for flow_id in bundle.flows_between(o, d):
                fare = bundle.fare(flow_id, ticket_code)
                if fare is not None:
                    out.append(CandidateFare(flow_id, fare, o, d, False))
            for flow_id in bundle.flows_between(d, o):
                if bundle.flows[flow_id].direction is not Direction.REVERSIBLE:
                    continue
                fare = bundle.fare(flow_id, ticket_code)
                if fare is not None:
                    out.append(CandidateFare(flow_id, fare, o, d, True))
    out.sort(key=_sort_key)
    return out


def min_fare(bundle: FeedBundle, origin_nlc: str, dest_nlc: str, ticket_code: str) -> int:
    candidates = candidate_fares(bundle, origin_nlc, dest_nlc, ticket_code)
    if not candidates:
        raise NoFlowError(origin_nlc, dest_nlc, ticket_code)
    return candidates[0].fare_pence
