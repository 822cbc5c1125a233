# railfares/fares/od.py
"""
Origin rows and the streaming origin-destination matrix.

A row is computed from the origin side only: walk the flows leaving each fare
point that contains the origin (and REVERSIBLE flows arriving at it), then
spread each fare over the stations of the far end. Rows can be produced by a
process pool; the stream is reassembled in origin order so output does not
depend on the worker count.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import Future, ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

from railfares.errors import BudgetOrderError
from railfares.feed.bundle import FeedBundle
from railfares.metrics import OD_PAIRS_TOTAL, OD_ROWS_TOTAL

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class OdRow:
    origin_nlc: str
    ticket_code: str
    # dest_nlc -> fare_pence, ascending dest_nlc; unpriced pairs are absent
    fares: dict[str, int] = field(default_factory=dict)


def od_row(bundle: FeedBundle, origin_nlc: str, ticket_code: str) -> OdRow:
    points = bundle.points_containing(origin_nlc)
    bundle.require_ticket(ticket_code)
    priced = bundle.fares_for_ticket(ticket_code)

    best: dict[str, int] = {}

    def spread(far_end: str, fare: int) -> None:
        for dest in bundle.stations_of(far_end):
            if dest != origin_nlc:
                cur = best.get(dest)
                if cur is None or fare < cur:
                    best[dest] = fare

    for point in points:
        for flow in bundle.flows_from(point):
            fare = priced.get(flow.flow_id)
            if fare is not None:
                spread(flow.dest_code, fare)
        for flow in bundle.reversible_flows_into(point):
            fare = priced.get(flow.flow_id)
            if fare is not None:
                spread(flow.origin_code, fare)

    return OdRow(origin_nlc, ticket_code, dict(sorted(best.items())))


# ---- Parallel rows ------------------------------------------------------------

_WORKER_BUNDLE: FeedBundle | None = None
_WORKER_TICKET: str = ""


def _init_worker(bundle: FeedBundle, ticket_code: str) -> None:
    global _WORKER_BUNDLE, _WORKER_TICKET
    _WORKER_BUNDLE = bundle
    _WORKER_TICKET = ticket_code


def _worker_row(origin_nlc: str) -> OdRow:
    assert _WORKER_BUNDLE is not None
    return od_row(_WORKER_BUNDLE, origin_nlc, _WORKER_TICKET)


def _pool_context() -> mp.context.BaseContext | None:
    # fork shares the bundle copy-on-write instead of pickling it per worker
    if "fork" in mp.get_all_start_methods():
        return mp.get_context("fork")
    return None


def ordered_origins(
    bundle: FeedBundle, origins: Iterable[str] | None = None, by_crs: bool = False
) -> list[str]:
    """Validated origin nlcs, ascending by nlc (or by crs)."""
    if origins is None:
        nlcs = list(bundle.stations)
    else:
        nlcs = list(dict.fromkeys(origins))
        for nlc in nlcs:
            bundle.require_station(nlc)
    if by_crs:
        return sorted(nlcs, key=lambda n: bundle.stations[n].crs)
    return sorted(nlcs)


def od_matrix(
    bundle: FeedBundle,
    ticket_code: str,
    origins: Iterable[str] | None = None,
    *,
    jobs: int = 1,
    by_crs: bool = False,
) -> Iterator[OdRow]:
    """
    Stream one OdRow per origin (all stations when `origins` is None).

    At most a small window of rows is in flight at once, so memory stays
    O(stations + window * row) whatever the matrix size.
    """
    bundle.require_ticket(ticket_code)
    order = ordered_origins(bundle, origins, by_crs)
    return _stream(bundle, ticket_code, order, jobs)


def _stream(
    bundle: FeedBundle, ticket_code: str, order: Sequence[str], jobs: int
) -> Iterator[OdRow]:
    log.info("od_matrix_start ticket=%s origins=%d jobs=%d", ticket_code, len(order), jobs)
    rows = pairs = 0
    for row in _rows(bundle, ticket_code, order, jobs):
        rows += 1
        pairs += len(row.fares)
        yield row
    OD_ROWS_TOTAL.labels(ticket=ticket_code).inc(rows)
    OD_PAIRS_TOTAL.labels(ticket=ticket_code).inc(pairs)
    log.info("od_matrix_done ticket=%s rows=%d pairs=%d", ticket_code, rows, pairs)


def _rows(
    bundle: FeedBundle, ticket_code: str, order: Sequence[str], jobs: int
) -> Iterator[OdRow]:
    if jobs <= 1 or len(order) < 2:
        for nlc in order:
            yield od_row(bundle, nlc, ticket_code)
        return

    window = jobs * 4
    with ProcessPoolExecutor(
        max_workers=jobs,
        mp_context=_pool_context(),
        initializer=_init_worker,
        initargs=(bundle, ticket_code),
    ) as pool:
        pending: deque[Future[OdRow]] = deque()
        it = iter(order)
        for nlc in islice(it, window):
            pending.append(pool.submit(_worker_row, nlc))
        while pending:
            row = pending.popleft().result()
            nxt = next(it, None)
            if nxt is not None:
                pending.append(pool.submit(_worker_row, nxt))
            yield row


def reachable_set(
    bundle: FeedBundle, origin_nlc: str, ticket_code: str, budget_pence: int
) -> frozenset[str]:
    """Stations whose minimum fare from the origin is within budget (origin excluded)."""
    if budget_pence < 0:
        raise BudgetOrderError([budget_pence])
    row = od_row(bundle, origin_nlc, ticket_code)
    return reachable_from_row(row, budget_pence)


def reachable_from_row(row: OdRow, budget_pence: int) -> frozenset[str]:
    return frozenset(dest for dest, fare in row.fares.items() if fare <= budget_pence)
